#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "becgraph/entanglement.hpp"
#include "becgraph/fock.hpp"
#include "becgraph/graph.hpp"
#include "becgraph/kernels.hpp"
#include "becgraph/search.hpp"
#include "becgraph/spectral.hpp"

namespace becgraph::cli {

namespace {

using nlohmann::json;

constexpr double kOracleTolerance = 1e-8;

// All emitted floats carry 12 significant digits so documents are
// byte-reproducible for a fixed configuration.
std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// JSON numbers are quantized the same way.
double q12(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

std::size_t basis_cap_from_env() {
  const char* env = std::getenv("BECGRAPH_BASIS_CAP");
  if (!env) return kDefaultBasisCap;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || value == 0)
    throw std::invalid_argument(
        "BECGRAPH_BASIS_CAP must be a positive integer, got '" +
        std::string(env) + "'");
  return static_cast<std::size_t>(value);
}

struct GraphSpec {
  std::string text;
  std::optional<int> vertices;  // required for file: specs
};

Graph parse_graph_spec(const GraphSpec& spec) {
  const std::size_t colon = spec.text.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument(
        "graph spec '" + spec.text +
        "' is not of the form kind:L or file:PATH");
  const std::string kind = spec.text.substr(0, colon);
  const std::string rest = spec.text.substr(colon + 1);
  if (kind == "file") {
    if (!spec.vertices)
      throw std::invalid_argument(
          "graph spec 'file:...' needs --vertices to fix the vertex count");
    std::ifstream in(rest);
    if (!in)
      throw std::invalid_argument("cannot open edge list file '" + rest +
                                  "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return Graph::from_edge_list(buffer.str(), *spec.vertices);
  }
  int l = 0;
  try {
    std::size_t used = 0;
    l = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument(rest);
  } catch (const std::exception&) {
    throw std::invalid_argument("graph spec '" + spec.text +
                                "' has a malformed vertex count");
  }
  if (spec.vertices && *spec.vertices != l)
    throw std::invalid_argument(
        "--vertices disagrees with the graph spec '" + spec.text + "'");
  return generate_named(kind, l);
}

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return json{{"vertices", g.vertex_count()}, {"edges", edges}};
}

void write_document(const std::string& path, const std::string& doc,
                    std::ostream& out) {
  if (path.empty()) {
    out << doc;
    return;
  }
  std::ofstream file(path);
  if (!file)
    throw std::invalid_argument("cannot open output file '" + path + "'");
  file << doc;
}

// ---- subcommand payloads ----------------------------------------------

struct CommonOut {
  std::string format;  // "csv" or "json"
  std::string output;  // empty = stdout
};

std::string render_entropy(const Graph& g, int particles, bool eigenspace_max,
                           std::optional<int> vertex_filter,
                           const std::string& format) {
  if (vertex_filter &&
      (*vertex_filter < 0 || *vertex_filter >= g.vertex_count()))
    throw std::invalid_argument("--vertex index out of range");
  const EntanglementReport report =
      graph_entanglement_report(g, particles, eigenspace_max);
  const auto keep = [&](const EntanglementCell& cell) {
    return !vertex_filter || cell.vertex == *vertex_filter;
  };
  if (format == "csv") {
    std::string doc = "eigenstate,vertex,eigenvalue,p,entropy_bits,degenerate\n";
    for (const auto& cell : report.cells) {
      if (!keep(cell)) continue;
      doc += std::to_string(cell.eigenstate) + ',' +
             std::to_string(cell.vertex) + ',' +
             fmt12(report.eigenvalues[static_cast<std::size_t>(
                 cell.eigenstate)]) +
             ',' + fmt12(cell.p) + ',' + fmt12(cell.entropy_bits) + ',' +
             (cell.degenerate ? "1" : "0") + '\n';
    }
    return doc;
  }
  json cells = json::array();
  for (const auto& cell : report.cells) {
    if (!keep(cell)) continue;
    cells.push_back({{"eigenstate", cell.eigenstate},
                     {"vertex", cell.vertex},
                     {"p", q12(cell.p)},
                     {"entropy_bits", q12(cell.entropy_bits)},
                     {"degenerate", cell.degenerate}});
  }
  json eigenvalues = json::array();
  for (const double w : report.eigenvalues) eigenvalues.push_back(q12(w));
  const json doc{{"schema", "becgraph/entropy/v1"},
                 {"graph", graph_to_json(g)},
                 {"particles", particles},
                 {"eigenspace_max", report.eigenspace_max},
                 {"eigenvalues", eigenvalues},
                 {"degeneracy_classes", report.degeneracy_classes},
                 {"max_entropy_bits", q12(max_entropy(particles))},
                 {"cells", cells}};
  return doc.dump(2) + "\n";
}

// Tables render as CSV by default or as a columns/rows JSON document.
std::string render_table(const std::string& schema,
                         const std::vector<std::string>& columns,
                         const std::vector<std::vector<json>>& rows,
                         const std::string& format) {
  if (format == "csv") {
    std::string doc;
    for (std::size_t c = 0; c < columns.size(); ++c)
      doc += (c ? "," : "") + columns[c];
    doc += '\n';
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) doc += ',';
        if (row[c].is_number_float())
          doc += fmt12(row[c].get<double>());
        else
          doc += row[c].dump();
      }
      doc += '\n';
    }
    return doc;
  }
  json out_rows = json::array();
  for (const auto& row : rows) {
    json r = json::array();
    for (const auto& cell : row)
      r.push_back(cell.is_number_float() ? json(q12(cell.get<double>()))
                                         : cell);
    out_rows.push_back(r);
  }
  const json doc{
      {"schema", schema}, {"columns", columns}, {"rows", out_rows}};
  return doc.dump(2) + "\n";
}

std::string render_curve(const std::vector<int>& particle_numbers, int grid,
                         const std::string& format) {
  const auto points = entropy_curve(particle_numbers, grid);
  std::vector<std::vector<json>> rows;
  rows.reserve(points.size());
  for (const auto& pt : points)
    rows.push_back({pt.p, pt.particles, pt.normalized_entropy});
  return render_table("becgraph/curve/v1",
                      {"p", "particles", "normalized_entropy"}, rows,
                      format);
}

std::string render_ratio(int max_particles, int samples,
                         const std::string& format) {
  const auto points = ratio_curve(max_particles, samples);
  std::vector<std::vector<json>> rows;
  rows.reserve(points.size());
  for (const auto& pt : points) rows.push_back({pt.particles, pt.ratio});
  return render_table("becgraph/ratio/v1", {"particles", "ratio"}, rows,
                      format);
}

std::string render_search(const SearchResult& result) {
  json witnesses = json::array();
  for (const auto& w : result.witnesses) {
    const Graph g = Graph::from_upper_bits(result.vertex_count, w.graph_bits);
    witnesses.push_back({{"graph_bits", w.graph_bits},
                         {"edges", graph_to_json(g)["edges"]},
                         {"vertex", w.vertex},
                         {"eigenstate", w.eigenstate},
                         {"p", q12(w.p)},
                         {"degenerate", w.degenerate}});
  }
  const json doc{
      {"schema", "becgraph/search/v1"},
      {"mode", result.mode == SearchMode::ground_state ? "ground" : "any"},
      {"vertices", result.vertex_count},
      {"particles", result.particles},
      {"eigenspace_max", result.eigenspace_max},
      {"best_value_bits", q12(result.best_value_bits)},
      {"max_entropy_bits", q12(max_entropy(result.particles))},
      {"witnesses", witnesses},
      {"evaluated_count", result.evaluated_count},
      {"connected_count", result.connected_count},
      {"skipped_disconnected",
       result.evaluated_count - result.connected_count}};
  return doc.dump(2) + "\n";
}

// Closed-form binomial law against the brute-force marginal, every
// eigenstate and vertex.
std::string render_oracle(const Graph& g, int particles, std::size_t cap,
                          double& max_deviation) {
  const SpectralDecomposition sd = eigendecompose(g);
  const auto basis = FockBasis::build(g.vertex_count(), particles, cap);
  const int l = g.vertex_count();

  std::vector<int> class_size(static_cast<std::size_t>(l), 1);
  for (const auto& cls : sd.degeneracy_classes)
    for (const int k : cls)
      class_size[static_cast<std::size_t>(k)] = static_cast<int>(cls.size());

  max_deviation = 0.0;
  json checks = json::array();
  for (int k = 0; k < l; ++k) {
    const FockState psi = condensate_state(
        SingleParticleState::from_real(sd.eig.vector(k)), basis);
    for (int i = 0; i < l; ++i) {
      const double u = sd.eig.vector(k)[static_cast<std::size_t>(i)];
      const double p = std::min(u * u, 1.0);
      const auto closed = vertex_distribution(p, particles);
      const auto brute = vertex_marginal(psi, i);
      double dev = 0.0;
      for (std::size_t m = 0; m < closed.probabilities.size(); ++m)
        dev = std::max(dev, std::abs(closed.probabilities[m] -
                                     brute.probabilities[m]));
      max_deviation = std::max(max_deviation, dev);
      checks.push_back({{"eigenstate", k},
                        {"vertex", i},
                        {"p", q12(p)},
                        {"max_abs_deviation", dev},
                        {"degenerate",
                         class_size[static_cast<std::size_t>(k)] > 1}});
    }
  }
  const json doc{{"schema", "becgraph/oracle/v1"},
                 {"graph", graph_to_json(g)},
                 {"particles", particles},
                 {"basis_states", basis->size()},
                 {"tolerance", kOracleTolerance},
                 {"max_abs_deviation", max_deviation},
                 {"pass", max_deviation <= kOracleTolerance},
                 {"checks", checks}};
  return doc.dump(2) + "\n";
}

FockState initial_state(const std::string& initial, const Graph& g,
                        int particles, std::size_t cap) {
  if (initial == "ground") {
    const auto basis = FockBasis::build(g.vertex_count(), particles, cap);
    return condensate_state(ground_eigenvector(eigendecompose(g), g), basis);
  }
  if (initial.rfind("vertex:", 0) == 0) {
    const std::string rest = initial.substr(7);
    int vertex = 0;
    try {
      std::size_t used = 0;
      vertex = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(rest);
    } catch (const std::exception&) {
      throw std::invalid_argument("initial state '" + initial +
                                  "' has a malformed vertex index");
    }
    if (vertex < 0 || vertex >= g.vertex_count())
      throw std::invalid_argument("initial state vertex out of range");
    const auto basis = FockBasis::build(g.vertex_count(), particles, cap);
    FockState psi = FockState::zero(basis);
    std::vector<std::int32_t> occ(
        static_cast<std::size_t>(g.vertex_count()), 0);
    occ[static_cast<std::size_t>(vertex)] = particles;
    psi.re[basis->index_of(occ)] = 1.0;
    return psi;
  }
  if (initial.rfind("file:", 0) == 0) {
    const std::string path = initial.substr(5);
    std::ifstream in(path);
    if (!in)
      throw std::invalid_argument("cannot open state file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    FockState psi = fock_state_from_json(buffer.str(), cap);
    if (psi.basis->modes() != g.vertex_count())
      throw std::invalid_argument(
          "state file mode count does not match the graph");
    if (psi.basis->particles() != particles)
      throw std::invalid_argument(
          "state file particle number does not match --particles");
    return psi;
  }
  throw std::invalid_argument(
      "initial state '" + initial +
      "' is not one of ground, vertex:J, file:PATH");
}

std::string render_dynamics(const Graph& g, int particles, int vertex,
                            const std::string& initial, double t0, double t1,
                            int steps, double hubbard_u, std::size_t cap,
                            const std::string& format) {
  if (steps < 1) throw std::invalid_argument("dynamics needs steps >= 1");
  if (vertex < 0 || vertex >= g.vertex_count())
    throw std::invalid_argument("dynamics vertex out of range");
  const FockState psi0 = initial_state(initial, g, particles, cap);
  const ManyBodyHamiltonian h = build_hamiltonian(g, psi0.basis, hubbard_u);

  std::vector<double> times(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i)
    times[static_cast<std::size_t>(i)] =
        steps == 1 ? t0
                   : t0 + (t1 - t0) * static_cast<double>(i) /
                         static_cast<double>(steps - 1);
  const auto series = entropy_timeseries(psi0, h, vertex, times);
  std::vector<std::vector<json>> rows;
  rows.reserve(series.size());
  for (const auto& pt : series) rows.push_back({pt.t, pt.entropy_bits});
  return render_table("becgraph/dynamics/v1", {"t", "entropy_bits"}, rows,
                      format);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{
      "exact vertex-entanglement toolkit for bosons hopping on graphs"};
  app.require_subcommand(1);

  // entropy ------------------------------------------------------------
  auto* cmd_entropy = app.add_subcommand(
      "entropy", "per-eigenstate, per-vertex condensate entanglement report");
  GraphSpec ent_spec;
  int ent_particles = 0;
  bool ent_eigenspace_max = false;
  std::optional<int> ent_vertex;
  CommonOut ent_out{"json", ""};
  cmd_entropy->add_option("--graph", ent_spec.text, "kind:L or file:PATH")
      ->required();
  cmd_entropy->add_option("--vertices", ent_spec.vertices,
                          "vertex count (file: specs)");
  cmd_entropy->add_option("--particles", ent_particles, "boson number N")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_entropy->add_option("--vertex", ent_vertex,
                          "restrict the report to one vertex");
  cmd_entropy->add_flag("--eigenspace-max", ent_eigenspace_max,
                        "report the eigenspace-maximal square amplitude for "
                        "degenerate eigenstates");
  cmd_entropy->add_option("--format", ent_out.format, "csv or json")
      ->default_val("json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_entropy->add_option("--output", ent_out.output, "output path");

  // curve ----------------------------------------------------------------
  auto* cmd_curve = app.add_subcommand(
      "curve", "normalized vertex entropy on a p-grid, one curve per N");
  std::vector<int> curve_particles;
  int curve_grid = 201;
  CommonOut curve_out{"csv", ""};
  cmd_curve
      ->add_option("--particles", curve_particles,
                   "comma-separated boson numbers")
      ->required()
      ->delimiter(',');
  cmd_curve->add_option("--grid", curve_grid, "grid points over [0,1]")
      ->check(CLI::Range(2, 100000000));
  cmd_curve->add_option("--format", curve_out.format, "csv or json")
      ->default_val("csv")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_curve->add_option("--output", curve_out.output, "output path");

  // ratio ----------------------------------------------------------------
  auto* cmd_ratio = app.add_subcommand(
      "ratio", "peak entropy over the maximal log2(N+1), versus N");
  int ratio_max_n = 0;
  int ratio_samples = 50;
  CommonOut ratio_out{"csv", ""};
  cmd_ratio->add_option("--max-n", ratio_max_n, "largest boson number")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_ratio->add_option("--samples", ratio_samples,
                        "log-spaced sample count")
      ->check(CLI::PositiveNumber);
  cmd_ratio->add_option("--format", ratio_out.format, "csv or json")
      ->default_val("csv")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_ratio->add_option("--output", ratio_out.output, "output path");

  // search ---------------------------------------------------------------
  auto* cmd_search = app.add_subcommand(
      "search", "exhaustive entanglement maximization over connected graphs");
  int search_vertices = 0;
  int search_particles = 0;
  std::string search_mode = "ground";
  bool search_eigenspace_max = false;
  int search_jobs = 1;
  CommonOut search_out{"json", ""};
  cmd_search->add_option("--vertices", search_vertices, "graph size L")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_search->add_option("--particles", search_particles, "boson number N")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_search->add_option("--mode", search_mode, "ground or any")
      ->check(CLI::IsMember({"ground", "any"}));
  cmd_search->add_flag("--eigenspace-max", search_eigenspace_max,
                       "score degenerate eigenstates by their projector "
                       "diagonal (any mode)");
  cmd_search->add_option("--jobs", search_jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  cmd_search->add_option("--output", search_out.output, "output path");

  // oracle ---------------------------------------------------------------
  auto* cmd_oracle = app.add_subcommand(
      "oracle",
      "closed-form occupation law against the brute-force marginal");
  GraphSpec oracle_spec;
  int oracle_particles = 0;
  CommonOut oracle_out{"json", ""};
  cmd_oracle->add_option("--graph", oracle_spec.text, "kind:L or file:PATH")
      ->required();
  cmd_oracle->add_option("--vertices", oracle_spec.vertices,
                         "vertex count (file: specs)");
  cmd_oracle->add_option("--particles", oracle_particles, "boson number N")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_oracle->add_option("--output", oracle_out.output, "output path");

  // dynamics ---------------------------------------------------------------
  auto* cmd_dynamics = app.add_subcommand(
      "dynamics", "vertex entanglement entropy along unitary time evolution");
  GraphSpec dyn_spec;
  int dyn_particles = 0;
  int dyn_vertex = 0;
  std::string dyn_initial = "ground";
  double dyn_t0 = 0.0, dyn_t1 = 10.0, dyn_u = 0.0;
  int dyn_steps = 101;
  CommonOut dyn_out{"csv", ""};
  cmd_dynamics->add_option("--graph", dyn_spec.text, "kind:L or file:PATH")
      ->required();
  cmd_dynamics->add_option("--vertices", dyn_spec.vertices,
                           "vertex count (file: specs)");
  cmd_dynamics->add_option("--particles", dyn_particles, "boson number N")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_dynamics->add_option("--vertex", dyn_vertex, "observed vertex");
  cmd_dynamics->add_option("--initial", dyn_initial,
                           "ground, vertex:J, or file:PATH");
  cmd_dynamics->add_option("--t0", dyn_t0, "first time");
  cmd_dynamics->add_option("--t1", dyn_t1, "last time");
  cmd_dynamics->add_option("--steps", dyn_steps, "time samples")
      ->check(CLI::PositiveNumber);
  cmd_dynamics->add_option("--hubbard-u", dyn_u, "on-site interaction");
  cmd_dynamics->add_option("--format", dyn_out.format, "csv or json")
      ->default_val("csv")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_dynamics->add_option("--output", dyn_out.output, "output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::stringstream out_buf, err_buf;
    const int code = app.exit(e, out_buf, err_buf);
    out << out_buf.str();
    err << err_buf.str();
    return code;
  }

  try {
    kernels::active();  // fail fast on a bad BECGRAPH_KERNELS value
    const std::size_t cap = basis_cap_from_env();

    if (cmd_entropy->parsed()) {
      write_document(ent_out.output,
                     render_entropy(parse_graph_spec(ent_spec), ent_particles,
                                    ent_eigenspace_max, ent_vertex,
                                    ent_out.format),
                     out);
    } else if (cmd_curve->parsed()) {
      write_document(
          curve_out.output,
          render_curve(curve_particles, curve_grid, curve_out.format), out);
    } else if (cmd_ratio->parsed()) {
      write_document(
          ratio_out.output,
          render_ratio(ratio_max_n, ratio_samples, ratio_out.format), out);
    } else if (cmd_search->parsed()) {
      SearchOptions options;
      options.jobs = search_jobs;
      options.eigenspace_max = search_eigenspace_max;
      const SearchResult result =
          search_mode == "ground"
              ? search_ground(search_vertices, search_particles, options)
              : search_any_eigenstate(search_vertices, search_particles,
                                      options);
      write_document(search_out.output, render_search(result), out);
    } else if (cmd_oracle->parsed()) {
      double max_deviation = 0.0;
      const std::string doc =
          render_oracle(parse_graph_spec(oracle_spec), oracle_particles, cap,
                        max_deviation);
      write_document(oracle_out.output, doc, out);
      if (max_deviation > kOracleTolerance) {
        err << "oracle: max deviation " << fmt12(max_deviation)
            << " exceeds tolerance " << fmt12(kOracleTolerance) << "\n";
        return 1;
      }
    } else if (cmd_dynamics->parsed()) {
      write_document(
          dyn_out.output,
          render_dynamics(parse_graph_spec(dyn_spec), dyn_particles,
                          dyn_vertex, dyn_initial, dyn_t0, dyn_t1, dyn_steps,
                          dyn_u, cap, dyn_out.format),
          out);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "becgraph: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace becgraph::cli
