#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "becgraph/kernels.hpp"

using becgraph::kernels::Ops;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n,
                                  double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

// Sizes around the SIMD width boundaries plus a large one.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 33, 1000};

}  // namespace

TEST_CASE("scalar backend is always available") {
  const auto names = becgraph::kernels::available();
  CHECK(names.front() == "scalar");
  CHECK(std::string(becgraph::kernels::scalar_ops().name) == "scalar");
}

TEST_CASE("select rejects unknown backends") {
  CHECK_THROWS_AS(becgraph::kernels::select("neon"), std::invalid_argument);
  becgraph::kernels::select("auto");
}

TEST_CASE("simd variants agree with the scalar reference") {
  const Ops* simd = becgraph::kernels::avx2_ops();
  if (!simd) return;  // nothing to compare on this machine
  const Ops& ref = becgraph::kernels::scalar_ops();
  std::mt19937_64 rng(0x5eed);

  for (const std::size_t n : kSizes) {
    CAPTURE(n);

    SUBCASE("rotate_pair") {
      const double theta = 0.7381;
      const double c = std::cos(theta), s = std::sin(theta);
      auto x1 = random_vector(rng, n), y1 = random_vector(rng, n);
      auto x2 = x1, y2 = y1;
      ref.rotate_pair(x1.data(), y1.data(), n, c, s);
      simd->rotate_pair(x2.data(), y2.data(), n, c, s);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(x1[i] == doctest::Approx(x2[i]).epsilon(1e-14));
        CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
      }
    }

    SUBCASE("dot") {
      const auto x = random_vector(rng, n), y = random_vector(rng, n);
      const double a = ref.dot(x.data(), y.data(), n);
      const double b = simd->dot(x.data(), y.data(), n);
      CHECK(std::abs(a - b) <= 1e-13 * (1.0 + static_cast<double>(n)));
    }

    SUBCASE("axpy") {
      const auto x = random_vector(rng, n);
      auto y1 = random_vector(rng, n);
      auto y2 = y1;
      ref.axpy(y1.data(), x.data(), 1.37, n);
      simd->axpy(y2.data(), x.data(), 1.37, n);
      for (std::size_t i = 0; i < n; ++i)
        CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
    }

    SUBCASE("abs2_sum") {
      const auto re = random_vector(rng, n), im = random_vector(rng, n);
      const double a = ref.abs2_sum(re.data(), im.data(), n);
      const double b = simd->abs2_sum(re.data(), im.data(), n);
      CHECK(std::abs(a - b) <= 1e-13 * (1.0 + static_cast<double>(n)));
    }

    SUBCASE("cmul_inplace") {
      auto ar1 = random_vector(rng, n), ai1 = random_vector(rng, n);
      const auto br = random_vector(rng, n), bi = random_vector(rng, n);
      auto ar2 = ar1, ai2 = ai1;
      ref.cmul_inplace(ar1.data(), ai1.data(), br.data(), bi.data(), n);
      simd->cmul_inplace(ar2.data(), ai2.data(), br.data(), bi.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(ar1[i] == doctest::Approx(ar2[i]).epsilon(1e-14));
        CHECK(ai1[i] == doctest::Approx(ai2[i]).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("rotate_pair is an isometry of the two rows") {
  const Ops& ops = becgraph::kernels::active();
  std::mt19937_64 rng(17);
  auto x = random_vector(rng, 257), y = random_vector(rng, 257);
  const double before =
      ops.dot(x.data(), x.data(), x.size()) +
      ops.dot(y.data(), y.data(), y.size());
  ops.rotate_pair(x.data(), y.data(), x.size(), std::cos(0.3),
                  std::sin(0.3));
  const double after =
      ops.dot(x.data(), x.data(), x.size()) +
      ops.dot(y.data(), y.data(), y.size());
  CHECK(after == doctest::Approx(before).epsilon(1e-13));
}
