#include "becgraph/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "becgraph/kernels.hpp"

namespace becgraph {

namespace {

// Dense Hamiltonians above this dimension would not fit desk-scale memory;
// refuse instead of thrashing.
constexpr std::size_t kDenseHamiltonianCap = 16'384;

void check_same_basis(const FockState& psi, const ManyBodyHamiltonian& h) {
  if (psi.basis.get() != h.basis().get())
    throw std::invalid_argument("state and Hamiltonian use different bases");
}

}  // namespace

std::uint64_t FockBasis::dimension(int modes, int particles) {
  // C(N+L-1, N) by the multiplicative rule, saturating.
  const std::uint64_t n = static_cast<std::uint64_t>(particles);
  const std::uint64_t k =
      std::min<std::uint64_t>(n, static_cast<std::uint64_t>(modes) - 1);
  __uint128_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n + static_cast<std::uint64_t>(modes) - 1 - k + i) / i;
    if (result > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(result);
}

std::shared_ptr<const FockBasis> FockBasis::build(int modes, int particles,
                                                  std::size_t cap) {
  if (modes < 1)
    throw std::invalid_argument("basis needs at least one mode");
  if (particles < 0)
    throw std::invalid_argument("particle number must be >= 0");
  const std::uint64_t dim = dimension(modes, particles);
  if (dim > cap)
    throw std::invalid_argument(
        "basis of " + std::to_string(dim) + " states exceeds the cap of " +
        std::to_string(cap) + " (L=" + std::to_string(modes) +
        ", N=" + std::to_string(particles) + ")");

  auto basis = std::shared_ptr<FockBasis>(new FockBasis());
  basis->modes_ = modes;
  basis->particles_ = particles;
  basis->size_ = static_cast<std::size_t>(dim);
  basis->table_.reserve(basis->size_ * static_cast<std::size_t>(modes));

  std::vector<std::int32_t> occ(static_cast<std::size_t>(modes), 0);
  occ[0] = particles;
  while (true) {
    basis->table_.insert(basis->table_.end(), occ.begin(), occ.end());
    // Next occupation vector in lexicographic descending order: decrement
    // the rightmost nonzero entry left of the last mode, dump the remainder
    // just after it.
    int k = modes - 2;
    for (; k >= 0; --k)
      if (occ[static_cast<std::size_t>(k)] != 0) break;
    if (k < 0) break;
    --occ[static_cast<std::size_t>(k)];
    std::int32_t used = 0;
    for (int j = 0; j <= k; ++j) used += occ[static_cast<std::size_t>(j)];
    occ[static_cast<std::size_t>(k) + 1] =
        static_cast<std::int32_t>(particles) - used;
    for (int j = k + 2; j < modes; ++j) occ[static_cast<std::size_t>(j)] = 0;
  }
  if (basis->table_.size() !=
      basis->size_ * static_cast<std::size_t>(modes))
    throw std::runtime_error("fock basis enumeration is inconsistent");
  return basis;
}

std::span<const std::int32_t> FockBasis::occupation(std::size_t index) const {
  return std::span<const std::int32_t>(table_).subspan(
      index * static_cast<std::size_t>(modes_),
      static_cast<std::size_t>(modes_));
}

std::size_t FockBasis::index_of(
    std::span<const std::int32_t> occupation) const {
  if (occupation.size() != static_cast<std::size_t>(modes_))
    throw std::invalid_argument("occupation vector has wrong length");
  std::size_t lo = 0;
  std::size_t hi = size_;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const auto row = this->occupation(mid);
    // Rows are sorted lexicographically descending.
    if (std::lexicographical_compare(occupation.begin(), occupation.end(),
                                     row.begin(), row.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size_) {
    const auto row = this->occupation(lo);
    if (std::equal(row.begin(), row.end(), occupation.begin(),
                   occupation.end()))
      return lo;
  }
  throw std::invalid_argument("occupation vector is not a basis element");
}

FockState FockState::zero(std::shared_ptr<const FockBasis> basis) {
  FockState psi;
  psi.re.assign(basis->size(), 0.0);
  psi.im.assign(basis->size(), 0.0);
  psi.basis = std::move(basis);
  return psi;
}

double FockState::norm() const {
  return std::sqrt(
      kernels::active().abs2_sum(re.data(), im.data(), re.size()));
}

void FockState::normalize() {
  const double nrm = norm();
  if (nrm <= 0.0)
    throw std::invalid_argument("cannot normalize the zero state");
  const double inv = 1.0 / nrm;
  for (double& x : re) x *= inv;
  for (double& x : im) x *= inv;
}

FockState condensate_state(const SingleParticleState& x,
                           std::shared_ptr<const FockBasis> basis) {
  const int modes = basis->modes();
  if (x.size() != static_cast<std::size_t>(modes))
    throw std::invalid_argument(
        "single-particle state length does not match the basis mode count");
  const int n = basis->particles();

  bool all_real = true;
  for (const auto& z : x.amplitudes)
    if (z.imag() != 0.0) {
      all_real = false;
      break;
    }

  std::vector<double> log_abs(static_cast<std::size_t>(modes));
  std::vector<double> phase(static_cast<std::size_t>(modes), 0.0);
  for (int j = 0; j < modes; ++j) {
    const auto z = x.amplitudes[static_cast<std::size_t>(j)];
    log_abs[static_cast<std::size_t>(j)] = std::log(std::abs(z));
    if (!all_real) phase[static_cast<std::size_t>(j)] = std::arg(z);
  }
  const double lg_n1 = std::lgamma(static_cast<double>(n) + 1.0);

  FockState psi = FockState::zero(basis);
  for (std::size_t idx = 0; idx < basis->size(); ++idx) {
    const auto occ = basis->occupation(idx);
    double log_mag = lg_n1;
    double arg = 0.0;
    double sign = 1.0;
    bool zero = false;
    for (int j = 0; j < modes; ++j) {
      const std::int32_t nj = occ[static_cast<std::size_t>(j)];
      if (nj == 0) continue;
      const auto z = x.amplitudes[static_cast<std::size_t>(j)];
      if (z.real() == 0.0 && z.imag() == 0.0) {
        zero = true;
        break;
      }
      log_mag -= std::lgamma(static_cast<double>(nj) + 1.0);
      log_mag += 2.0 * static_cast<double>(nj) *
                 log_abs[static_cast<std::size_t>(j)];
      if (all_real) {
        if (z.real() < 0.0 && (nj & 1)) sign = -sign;
      } else {
        arg += static_cast<double>(nj) * phase[static_cast<std::size_t>(j)];
      }
    }
    if (zero) continue;
    const double mag = std::exp(0.5 * log_mag);
    if (all_real) {
      psi.re[idx] = sign * mag;
    } else {
      psi.re[idx] = mag * std::cos(arg);
      psi.im[idx] = mag * std::sin(arg);
    }
  }
  psi.normalize();
  return psi;
}

VertexOccupationDistribution vertex_marginal(const FockState& psi,
                                             int vertex) {
  const FockBasis& basis = *psi.basis;
  if (vertex < 0 || vertex >= basis.modes())
    throw std::invalid_argument("vertex index out of range");
  VertexOccupationDistribution dist;
  dist.vertex = vertex;
  dist.particles = basis.particles();
  dist.probabilities.assign(
      static_cast<std::size_t>(basis.particles()) + 1, 0.0);
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    const std::int32_t m =
        basis.occupation(idx)[static_cast<std::size_t>(vertex)];
    dist.probabilities[static_cast<std::size_t>(m)] +=
        psi.re[idx] * psi.re[idx] + psi.im[idx] * psi.im[idx];
  }
  return dist;
}

ManyBodyHamiltonian::ManyBodyHamiltonian(
    std::shared_ptr<const FockBasis> basis, std::vector<double> matrix,
    double hubbard_u)
    : basis_(std::move(basis)),
      matrix_(std::move(matrix)),
      hubbard_u_(hubbard_u) {
  if (matrix_.size() != basis_->size() * basis_->size())
    throw std::invalid_argument("Hamiltonian matrix size mismatch");
}

const EigenSystem& ManyBodyHamiltonian::spectrum() const {
  if (!spectrum_)
    spectrum_ = jacobi_eigensystem(matrix_,
                                   static_cast<int>(basis_->size()));
  return *spectrum_;
}

ManyBodyHamiltonian build_hamiltonian(const Graph& g,
                                      std::shared_ptr<const FockBasis> basis,
                                      double hubbard_u) {
  if (g.vertex_count() != basis->modes())
    throw std::invalid_argument(
        "graph vertex count does not match the basis mode count");
  const std::size_t dim = basis->size();
  if (dim > kDenseHamiltonianCap)
    throw std::invalid_argument(
        "dense Hamiltonian of dimension " + std::to_string(dim) +
        " exceeds the cap of " + std::to_string(kDenseHamiltonianCap));

  std::vector<double> h(dim * dim, 0.0);
  const auto edges = g.edges();
  std::vector<std::int32_t> hopped(
      static_cast<std::size_t>(basis->modes()));
  for (std::size_t m = 0; m < dim; ++m) {
    const auto occ = basis->occupation(m);
    if (hubbard_u != 0.0) {
      double onsite = 0.0;
      for (const std::int32_t nj : occ)
        onsite += static_cast<double>(nj) * static_cast<double>(nj - 1);
      h[m * dim + m] += 0.5 * hubbard_u * onsite;
    }
    for (const auto& [a, b] : edges) {
      // Move one particle src -> dst across the edge; the reverse hop from
      // the partner state fills the mirrored entry with the same value.
      for (const auto& [dst, src] : {std::pair{a, b}, std::pair{b, a}}) {
        if (occ[static_cast<std::size_t>(src)] == 0) continue;
        std::copy(occ.begin(), occ.end(), hopped.begin());
        --hopped[static_cast<std::size_t>(src)];
        ++hopped[static_cast<std::size_t>(dst)];
        const std::size_t mp = basis->index_of(hopped);
        const double amp = std::sqrt(
            static_cast<double>(occ[static_cast<std::size_t>(dst)] + 1) *
            static_cast<double>(occ[static_cast<std::size_t>(src)]));
        h[mp * dim + m] -= amp;
      }
    }
  }
  return ManyBodyHamiltonian(std::move(basis), std::move(h), hubbard_u);
}

FockState evolve(const FockState& psi, const ManyBodyHamiltonian& h,
                 double t) {
  check_same_basis(psi, h);
  const EigenSystem& eig = h.spectrum();
  const std::size_t dim = psi.basis->size();
  const kernels::Ops& k = kernels::active();

  // Project onto the eigenbasis (rows of eig.vectors), apply the phases,
  // and expand back.
  std::vector<double> yre(dim), yim(dim);
  for (std::size_t kk = 0; kk < dim; ++kk) {
    const double* row = eig.vectors.data() + kk * dim;
    yre[kk] = k.dot(row, psi.re.data(), dim);
    yim[kk] = k.dot(row, psi.im.data(), dim);
  }
  std::vector<double> pre(dim), pim(dim);
  for (std::size_t kk = 0; kk < dim; ++kk) {
    const double angle = -eig.values[kk] * t;
    pre[kk] = std::cos(angle);
    pim[kk] = std::sin(angle);
  }
  k.cmul_inplace(yre.data(), yim.data(), pre.data(), pim.data(), dim);

  FockState out = FockState::zero(psi.basis);
  for (std::size_t kk = 0; kk < dim; ++kk) {
    const double* row = eig.vectors.data() + kk * dim;
    k.axpy(out.re.data(), row, yre[kk], dim);
    k.axpy(out.im.data(), row, yim[kk], dim);
  }
  return out;
}

std::vector<TimeSeriesPoint> entropy_timeseries(
    const FockState& psi0, const ManyBodyHamiltonian& h, int vertex,
    std::span<const double> times) {
  check_same_basis(psi0, h);
  std::vector<TimeSeriesPoint> series;
  series.reserve(times.size());
  for (const double t : times) {
    if (!std::isfinite(t))
      throw std::invalid_argument("time values must be finite");
    const FockState psi = evolve(psi0, h, t);
    const auto marginal = vertex_marginal(psi, vertex);
    series.push_back({t, shannon_entropy_bits(marginal.probabilities)});
  }
  return series;
}

std::string fock_state_to_json(const FockState& psi) {
  const FockBasis& basis = *psi.basis;
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    if (psi.re[idx] == 0.0 && psi.im[idx] == 0.0) continue;
    const auto occ = basis.occupation(idx);
    entries.push_back(nlohmann::json::array(
        {std::vector<std::int32_t>(occ.begin(), occ.end()), psi.re[idx],
         psi.im[idx]}));
  }
  nlohmann::json doc{
      {"L", basis.modes()}, {"N", basis.particles()}, {"entries", entries}};
  return doc.dump();
}

FockState fock_state_from_json(const std::string& text, std::size_t cap) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("state JSON parse error: ") +
                                e.what());
  }
  if (!doc.is_object() || !doc.contains("L") || !doc.contains("N") ||
      !doc.contains("entries"))
    throw std::invalid_argument(
        "state JSON needs fields L, N, and entries");
  const int modes = doc.at("L").get<int>();
  const int particles = doc.at("N").get<int>();
  auto basis = FockBasis::build(modes, particles, cap);
  FockState psi = FockState::zero(basis);
  for (const auto& entry : doc.at("entries")) {
    if (!entry.is_array() || entry.size() != 3)
      throw std::invalid_argument(
          "state JSON entry must be [[n_1,...,n_L], re, im]");
    const auto occ = entry.at(0).get<std::vector<std::int32_t>>();
    std::int64_t total = 0;
    for (const std::int32_t nj : occ) {
      if (nj < 0)
        throw std::invalid_argument("state JSON occupation must be >= 0");
      total += nj;
    }
    if (occ.size() != static_cast<std::size_t>(modes) || total != particles)
      throw std::invalid_argument(
          "state JSON occupation vector does not match L and N");
    const std::size_t idx = basis->index_of(occ);
    if (psi.re[idx] != 0.0 || psi.im[idx] != 0.0)
      throw std::invalid_argument("state JSON repeats an occupation vector");
    psi.re[idx] = entry.at(1).get<double>();
    psi.im[idx] = entry.at(2).get<double>();
  }
  const double nrm = psi.norm();
  if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > 1e-6)
    throw std::invalid_argument(
        "state JSON is not normalized (norm " + std::to_string(nrm) + ")");
  psi.normalize();
  return psi;
}

}  // namespace becgraph
