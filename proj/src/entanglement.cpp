#include "becgraph/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace becgraph {

namespace {

// Exact binomial products stay accurate to round-off up to this N; beyond,
// terms are assembled from log-gamma to dodge overflow and underflow.
constexpr int kExactBinomialLimit = 64;

void check_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("square amplitude p must lie in [0, 1], got " +
                                std::to_string(p));
}

void check_particles(int n) {
  if (n < 1)
    throw std::invalid_argument("particle number must be >= 1, got " +
                                std::to_string(n));
}

// Pascal row {C(N,m)}. The recurrence is mirror-symmetric, so row[m] and
// row[N-m] come out bit-identical.
std::vector<double> binomial_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  row[0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int m = i; m >= 1; --m) row[static_cast<std::size_t>(m)] +=
        row[static_cast<std::size_t>(m) - 1];
  return row;
}

// log C(N,m), filled for m <= N/2 and mirrored so the table is exactly
// symmetric.
std::vector<double> log_binomial_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);
  for (int m = 0; m <= n / 2; ++m) {
    const double value = lg_n1 -
                         std::lgamma(static_cast<double>(m) + 1.0) -
                         std::lgamma(static_cast<double>(n - m) + 1.0);
    row[static_cast<std::size_t>(m)] = value;
    row[static_cast<std::size_t>(n - m)] = value;
  }
  return row;
}

}  // namespace

double shannon_entropy_bits(std::span<const double> probabilities) {
  double entropy = 0.0;
  for (const double p : probabilities)
    if (p > 0.0) entropy -= p * std::log2(p);
  // round-off can leave a probability at 1 + eps; the entropy itself is
  // nonnegative
  return std::max(entropy, 0.0);
}

VertexOccupationDistribution vertex_distribution(double p, int particles) {
  check_probability(p);
  check_particles(particles);
  const int n = particles;
  VertexOccupationDistribution dist;
  dist.particles = n;
  dist.probabilities.assign(static_cast<std::size_t>(n) + 1, 0.0);

  if (p == 0.0) {
    dist.probabilities[0] = 1.0;
    return dist;
  }
  if (p == 1.0) {
    dist.probabilities[static_cast<std::size_t>(n)] = 1.0;
    return dist;
  }
  const double q = 1.0 - p;
  if (n <= kExactBinomialLimit) {
    const std::vector<double> binom = binomial_row(n);
    for (int m = 0; m <= n; ++m)
      dist.probabilities[static_cast<std::size_t>(m)] =
          binom[static_cast<std::size_t>(m)] *
          (std::pow(p, m) * std::pow(q, n - m));
  } else {
    const std::vector<double> logc = log_binomial_row(n);
    const double lp = std::log(p);
    const double lq = std::log(q);
    for (int m = 0; m <= n; ++m) {
      const double a = m == 0 ? 0.0 : static_cast<double>(m) * lp;
      const double b = m == n ? 0.0 : static_cast<double>(n - m) * lq;
      dist.probabilities[static_cast<std::size_t>(m)] =
          std::exp(logc[static_cast<std::size_t>(m)] + (a + b));
    }
  }
  return dist;
}

double vertex_entropy(double p, int particles) {
  check_probability(p);
  check_particles(particles);
  const int n = particles;
  if (p == 0.0 || p == 1.0) return 0.0;

  const double q = 1.0 - p;
  double entropy = 0.0;
  if (n <= kExactBinomialLimit) {
    const std::vector<double> binom = binomial_row(n);
    for (int m = 0; m <= n; ++m) {
      const double t = binom[static_cast<std::size_t>(m)] *
                       (std::pow(p, m) * std::pow(q, n - m));
      if (t > 0.0) entropy -= t * std::log2(t);
    }
  } else {
    // term = exp(l), entropy contribution -term * l / ln 2; computing log2
    // of the term from l keeps underflowed tails harmless.
    const std::vector<double> logc = log_binomial_row(n);
    const double lp = std::log(p);
    const double lq = std::log(q);
    for (int m = 0; m <= n; ++m) {
      const double a = m == 0 ? 0.0 : static_cast<double>(m) * lp;
      const double b = m == n ? 0.0 : static_cast<double>(n - m) * lq;
      const double l = logc[static_cast<std::size_t>(m)] + (a + b);
      const double t = std::exp(l);
      if (t > 0.0) entropy -= t * (l / std::numbers::ln2);
    }
  }
  return entropy;
}

double max_entropy(int particles) {
  check_particles(particles);
  const int n = particles;
  double sum = 0.0;
  if (n <= kExactBinomialLimit) {
    const std::vector<double> binom = binomial_row(n);
    for (int m = 0; m <= n; ++m) {
      const double c = binom[static_cast<std::size_t>(m)];
      if (c > 1.0) sum += c * std::log2(c);
    }
    return static_cast<double>(n) - std::ldexp(sum, -n);
  }
  // N - sum_m t_m log2 C = -sum_m t_m log2 t_m for t_m = C(N,m) 2^-N;
  // the right-hand side avoids cancelling two large totals.
  const std::vector<double> logc = log_binomial_row(n);
  const double n_ln2 = static_cast<double>(n) * std::numbers::ln2;
  for (int m = 0; m <= n; ++m) {
    const double l = logc[static_cast<std::size_t>(m)] - n_ln2;
    sum -= std::exp(l) * (l / std::numbers::ln2);
  }
  return sum;
}

std::vector<CurvePoint> entropy_curve(std::span<const int> particle_numbers,
                                      int grid) {
  if (grid < 2) throw std::invalid_argument("curve grid must be >= 2");
  std::vector<CurvePoint> out;
  out.reserve(particle_numbers.size() * static_cast<std::size_t>(grid));
  for (const int n : particle_numbers) {
    check_particles(n);
    const double scale = 1.0 / std::log2(static_cast<double>(n) + 1.0);
    for (int i = 0; i < grid; ++i) {
      const double p = static_cast<double>(i) / static_cast<double>(grid - 1);
      out.push_back({p, n, vertex_entropy(p, n) * scale});
    }
  }
  return out;
}

std::vector<RatioPoint> ratio_curve(int max_particles, int samples) {
  check_particles(max_particles);
  if (samples < 1) throw std::invalid_argument("ratio samples must be >= 1");

  // Logarithmically spaced integers in [1, max], deduplicated, endpoints
  // always present.
  std::vector<int> ns;
  const double lmax = std::log(static_cast<double>(max_particles));
  for (int i = 0; i < samples; ++i) {
    const double f = samples == 1
                         ? 1.0
                         : static_cast<double>(i) /
                               static_cast<double>(samples - 1);
    const int n = static_cast<int>(std::lround(std::exp(f * lmax)));
    ns.push_back(std::clamp(n, 1, max_particles));
  }
  ns.push_back(max_particles);
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());

  std::vector<RatioPoint> out;
  out.reserve(ns.size());
  for (const int n : ns)
    out.push_back(
        {n, max_entropy(n) / std::log2(static_cast<double>(n) + 1.0)});
  return out;
}

EntanglementReport graph_entanglement_report(const Graph& g, int particles,
                                             bool eigenspace_max) {
  check_particles(particles);
  const SpectralDecomposition sd = eigendecompose(g);
  const int l = g.vertex_count();

  EntanglementReport report;
  report.vertex_count = l;
  report.particles = particles;
  report.eigenspace_max = eigenspace_max;
  report.eigenvalues = sd.eig.values;
  report.degeneracy_classes = sd.degeneracy_classes;
  report.cells.reserve(static_cast<std::size_t>(l) *
                       static_cast<std::size_t>(l));

  std::vector<int> class_of(static_cast<std::size_t>(l), 0);
  for (std::size_t c = 0; c < sd.degeneracy_classes.size(); ++c)
    for (const int k : sd.degeneracy_classes[c])
      class_of[static_cast<std::size_t>(k)] = static_cast<int>(c);

  for (int k = 0; k < l; ++k) {
    const auto& cls = sd.degeneracy_classes[static_cast<std::size_t>(
        class_of[static_cast<std::size_t>(k)])];
    const bool degenerate = cls.size() > 1;
    for (int i = 0; i < l; ++i) {
      double p;
      if (degenerate && eigenspace_max) {
        // Largest square amplitude over unit vectors in the eigenspace:
        // the diagonal entry of the spectral projector.
        p = 0.0;
        for (const int kk : cls) {
          const double u = sd.eig.vector(kk)[static_cast<std::size_t>(i)];
          p += u * u;
        }
      } else {
        const double u = sd.eig.vector(k)[static_cast<std::size_t>(i)];
        p = u * u;
      }
      p = std::min(p, 1.0);  // guard round-off
      report.cells.push_back(
          {k, i, p, vertex_entropy(p, particles), degenerate});
    }
  }
  return report;
}

}  // namespace becgraph
