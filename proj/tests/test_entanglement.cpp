#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "becgraph/entanglement.hpp"
#include "becgraph/graph.hpp"
#include "test_util.hpp"

using becgraph::NamedGraph;

TEST_CASE("vertex distribution basics") {
  const auto half = becgraph::vertex_distribution(0.5, 1);
  CHECK(half.probabilities == std::vector<double>{0.5, 0.5});

  const auto two = becgraph::vertex_distribution(0.5, 2);
  CHECK(two.probabilities == std::vector<double>{0.25, 0.5, 0.25});

  const auto empty = becgraph::vertex_distribution(0.0, 5);
  CHECK(empty.probabilities ==
        std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0, 0.0});

  CHECK_THROWS_AS(becgraph::vertex_distribution(-0.1, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(becgraph::vertex_distribution(1.1, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(becgraph::vertex_distribution(0.5, 0),
                  std::invalid_argument);
}

TEST_CASE("vertex distribution normalizes and stays binomial across N") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const int n : {1, 2, 7, 33, 64, 65, 129, 1000}) {
    const double p = unit(rng);
    const auto dist = becgraph::vertex_distribution(p, n);
    REQUIRE(dist.probabilities.size() == static_cast<std::size_t>(n) + 1);
    double sum = 0.0;
    double mean = 0.0;
    for (int m = 0; m <= n; ++m) {
      const double value = dist.probabilities[static_cast<std::size_t>(m)];
      CHECK(value >= 0.0);
      sum += value;
      mean += m * value;
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    CHECK(mean == doctest::Approx(n * p).epsilon(1e-10));
  }
}

TEST_CASE("entropy values") {
  CHECK(becgraph::vertex_entropy(0.5, 1) == 1.0);
  CHECK(becgraph::vertex_entropy(0.5, 2) == doctest::Approx(1.5).epsilon(1e-14));
  // Binom(2, 1/4): [9/16, 6/16, 1/16]
  CHECK(becgraph::vertex_entropy(0.25, 2) ==
        doctest::Approx(1.2475562489182659).epsilon(1e-12));
  CHECK(becgraph::vertex_entropy(0.0, 7) == 0.0);
  CHECK(becgraph::vertex_entropy(1.0, 7) == 0.0);
}

TEST_CASE("entropy is symmetric under p <-> 1-p") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const int n : {1, 3, 10, 64, 100, 500}) {
    for (int trial = 0; trial < 200; ++trial) {
      const double p = unit(rng);
      CHECK(std::abs(becgraph::vertex_entropy(p, n) -
                     becgraph::vertex_entropy(1.0 - p, n)) <= 1e-12);
    }
  }
}

TEST_CASE("entropy depends on the amplitude vector only through |x_i|^2") {
  // Recombine everything except component i by an arbitrary unitary and a
  // phase on i; the vertex entropy must not move.
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t l = 3 + trial % 4;
    const std::size_t i = trial % l;
    const int n = 1 + trial % 5;
    const auto x = becgraph::testutil::random_complex_unit(rng, l);
    const auto y = becgraph::testutil::recombine_except(rng, x, i);
    const double ex = becgraph::vertex_entropy(std::norm(x[i]), n);
    const double ey = becgraph::vertex_entropy(std::norm(y[i]), n);
    CHECK(std::abs(ex - ey) <= 1e-10);
  }
}

TEST_CASE("max entropy closed form") {
  CHECK(becgraph::max_entropy(1) == 1.0);
  CHECK(becgraph::max_entropy(2) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(becgraph::max_entropy(3) ==
        doctest::Approx(1.811278124459133).epsilon(1e-9));
}

TEST_CASE("max entropy equals the p = 1/2 entropy, exact and log regimes") {
  for (int n = 1; n <= 64; ++n)
    CHECK(std::abs(becgraph::max_entropy(n) -
                   becgraph::vertex_entropy(0.5, n)) <= 1e-10);
  for (const int n : {65, 100, 1000, 30000})
    CHECK(std::abs(becgraph::max_entropy(n) -
                   becgraph::vertex_entropy(0.5, n)) <= 1e-10);
}

TEST_CASE("max entropy grows with N while its normalized ratio shrinks") {
  double prev = becgraph::max_entropy(1);
  double prev_ratio = 1.0;
  for (int n = 2; n <= 200; ++n) {
    const double value = becgraph::max_entropy(n);
    const double ratio = value / std::log2(n + 1.0);
    CHECK(value > prev);
    CHECK(ratio < prev_ratio);
    prev = value;
    prev_ratio = ratio;
  }
}

TEST_CASE("entropy curve endpoints, symmetry, and peak") {
  const std::vector<int> ns{1, 2, 10};
  const auto table = becgraph::entropy_curve(ns, 101);
  REQUIRE(table.size() == 3 * 101);
  for (std::size_t block = 0; block < 3; ++block) {
    const auto* row = table.data() + block * 101;
    CHECK(row[0].normalized_entropy == 0.0);
    CHECK(row[100].normalized_entropy == 0.0);
    for (int i = 0; i <= 100; ++i)
      CHECK(std::abs(row[i].normalized_entropy -
                     row[100 - i].normalized_entropy) <= 1e-12);
    for (int i = 0; i <= 100; ++i)
      if (i != 50)
        CHECK(row[50].normalized_entropy > row[i].normalized_entropy);
  }
  // N = 1 peaks at exactly one normalized bit
  CHECK(table[50].normalized_entropy == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(becgraph::entropy_curve(ns, 1), std::invalid_argument);
}

TEST_CASE("unique grid maximum at p = 1/2 on a fine grid") {
  for (const int n : {1, 2, 3, 5, 17, 64, 65, 100}) {
    const std::vector<int> ns{n};
    const auto table = becgraph::entropy_curve(ns, 2001);
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < table.size(); ++i)
      if (table[i].normalized_entropy > table[argmax].normalized_entropy)
        argmax = i;
    CHECK(table[argmax].p == 0.5);
    for (std::size_t i = 0; i < table.size(); ++i)
      if (i != argmax)
        CHECK(table[i].normalized_entropy < table[argmax].normalized_entropy);
  }
}

TEST_CASE("ratio curve") {
  const auto points = becgraph::ratio_curve(30000, 40);
  REQUIRE(points.front().particles == 1);
  CHECK(points.front().ratio == 1.0);
  CHECK(points.back().particles == 30000);
  // exact log-space sum near the plateau-looking region
  CHECK(points.back().ratio ==
        doctest::Approx(0.5704021410666706).epsilon(1e-9));
  for (std::size_t i = 1; i < points.size(); ++i)
    CHECK(points[i].ratio < points[i - 1].ratio);
}

TEST_CASE("ratio at N=3 is max_entropy(3)/2") {
  const auto points = becgraph::ratio_curve(3, 10);
  CHECK(points.back().ratio ==
        doctest::Approx(0.9056390622295665).epsilon(1e-12));
}

TEST_CASE("large-N peak entropy tracks the Gaussian width") {
  // Independent route: Binom(N, 1/2) tends to a normal law of variance
  // N/4, whose entropy is log2(pi e N / 2) / 2.
  for (const int n : {10000, 30000, 100000}) {
    const double gauss =
        0.5 * std::log2(std::numbers::pi * std::numbers::e * n / 2.0);
    CHECK(std::abs(becgraph::max_entropy(n) - gauss) <= 1e-4);
  }
}

TEST_CASE("graph entanglement report") {
  SUBCASE("star(5), N=2: center of the top eigenstate carries 1.5 bits") {
    const auto report = becgraph::graph_entanglement_report(
        becgraph::generate_named(NamedGraph::star, 5), 2, false);
    const auto& cell = report.cell(0, 0);
    CHECK(cell.p == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cell.entropy_bits == doctest::Approx(1.5).epsilon(1e-12));
    CHECK_FALSE(cell.degenerate);
    // the zero eigenvalue class is flagged degenerate
    CHECK(report.cell(1, 0).degenerate);
    CHECK(report.cell(2, 3).degenerate);
  }
  SUBCASE("complete(4), N=2: p = 1/4 everywhere in the ground state") {
    const auto report = becgraph::graph_entanglement_report(
        becgraph::generate_named(NamedGraph::complete, 4), 2, false);
    for (int i = 0; i < 4; ++i) {
      CHECK(report.cell(0, i).p == doctest::Approx(0.25).epsilon(1e-12));
      CHECK(report.cell(0, i).entropy_bits ==
            doctest::Approx(1.2475562489182659).epsilon(1e-10));
    }
  }
  SUBCASE("entropy bound log2(N+1) holds cell-wise") {
    for (const int n : {1, 3, 6}) {
      const auto report = becgraph::graph_entanglement_report(
          becgraph::generate_named(NamedGraph::ring, 5), n, false);
      for (const auto& cell : report.cells) {
        CHECK(cell.entropy_bits >= 0.0);
        CHECK(cell.entropy_bits <= std::log2(n + 1.0) + 1e-12);
      }
    }
  }
  SUBCASE("eigenspace_max reports the projector diagonal") {
    // star(5) kernel class {1,2,3}: projector diagonal is 0 at the center,
    // 1 - 1/(L-1) = 3/4 on leaves.
    const auto report = becgraph::graph_entanglement_report(
        becgraph::generate_named(NamedGraph::star, 5), 2, true);
    CHECK(report.cell(1, 0).p == doctest::Approx(0.0).epsilon(1e-10));
    for (int i = 1; i < 5; ++i)
      CHECK(report.cell(2, i).p == doctest::Approx(0.75).epsilon(1e-10));
    // nondegenerate rows are untouched
    CHECK(report.cell(0, 0).p == doctest::Approx(0.5).epsilon(1e-12));
  }
}
