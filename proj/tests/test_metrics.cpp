#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "graphlim/error.hpp"
#include "graphlim/metrics.hpp"
#include "support.hpp"

using namespace graphlim;

namespace {

// Signed kernel with measures c_i / grid for a random composition of grid.
SignedStepfunction random_grid_kernel(Stream& rng, std::size_t k, std::size_t grid, std::vector<std::size_t>& counts) {
  counts.assign(k, 1);
  for (std::size_t r = k; r < grid; ++r) ++counts[rng.below(k)];
  std::vector<double> m(k), v(k * k);
  for (std::size_t i = 0; i < k; ++i) m[i] = static_cast<double>(counts[i]) / static_cast<double>(grid);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) v[i * k + j] = v[j * k + i] = 2 * rng.uniform() - 1;
  return SignedStepfunction(m, v);
}

}  // namespace

TEST(CutNorm, ExactMatchesGridBruteForce) {
  Stream rng(SeedSpec(31));
  for (int t = 0; t < 50; ++t) {
    std::vector<std::size_t> counts;
    const std::size_t k = 1 + rng.below(3);
    SignedStepfunction d = random_grid_kernel(rng, k, 64, counts);
    const CutNormResult exact = cut_norm_exact(d);
    EXPECT_NEAR(exact.value, gltest::grid_cut_norm(d, counts, 64), 1e-9);
    EXPECT_NEAR(std::abs(rectangle_integral(d, exact.witness_s, exact.witness_t)), exact.value, 1e-12);
    EXPECT_LE(cut_norm_heuristic(d, 8, SeedSpec(t)).value, exact.value + 1e-15);
  }
}

TEST(CutNorm, OrderingOfBounds) {
  Stream rng(SeedSpec(32));
  for (int t = 0; t < 100; ++t) {
    Stepfunction a = gltest::random_stepfunction(rng, 1 + rng.below(5));
    Stepfunction b = gltest::random_stepfunction(rng, 1 + rng.below(5));
    SignedStepfunction d = a - b;
    const double exact = cut_norm_exact(d).value;
    EXPECT_LE(cut_norm_heuristic(d, 16, SeedSpec(t)).value, exact + 1e-15);
    EXPECT_LE(exact, cut_norm_upper_bound(d) + 1e-15);
    EXPECT_LE(exact, l1_distance(a, b) + 1e-15);
    EXPECT_GE(exact, std::abs(d.integral()) - 1e-15);
  }
}

TEST(CutNorm, CapSwitchesToHeuristic) {
  Stream rng(SeedSpec(33));
  SimpleGraph g = gltest::random_graph(rng, 24, 0.5);
  SignedStepfunction d = embed_graph(g) - Stepfunction::constant(0.5);
  MetricConfig cfg;
  EXPECT_FALSE(cut_norm(d, cfg).exact);
  cfg.exact_cap = 24;
  CutNormResult full = cut_norm(d, cfg);
  EXPECT_TRUE(full.exact);
  cfg.exact_cap = 20;
  EXPECT_LE(cut_norm(d, cfg).value, full.value + 1e-15);
}

TEST(CutNorm, GraphDistances) {
  SimpleGraph k3 = complete_graph(3), e3 = edgeless_graph(3);
  EXPECT_NEAR(graph_cut_distance(k3, e3), 6.0 / 9, 1e-12);
  EXPECT_NEAR(graph_l1_distance(k3, e3), 6.0 / 9, 1e-15);
  Stream rng(SeedSpec(34));
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 1 + rng.below(70);
    SimpleGraph g = gltest::random_graph(rng, n, 0.5), h = gltest::random_graph(rng, n, 0.3);
    EXPECT_NEAR(graph_l1_distance(g, h), l1_distance(embed_graph(g), embed_graph(h)), 1e-12);
  }
  EXPECT_THROW(graph_l1_distance(k3, complete_graph(4)), Error);
}

TEST(Delta, TriangleVersusEmpty) {
  DistanceInterval d = delta_distance(complete_graph(3), edgeless_graph(3), Metric::cut);
  EXPECT_NEAR(d.lower, 2.0 / 3, 1e-9);
  EXPECT_NEAR(d.upper, 2.0 / 3, 1e-9);
  DistanceInterval l = delta_distance(complete_graph(3), edgeless_graph(3), Metric::l1);
  EXPECT_NEAR(l.upper, 2.0 / 3, 1e-12);
}

TEST(Delta, EdgeVersusHalf) {
  // The lower end comes from the triangle: |0 - 1/8| / 3.
  DistanceInterval d = delta_distance(embed_graph(complete_graph(2)), Stepfunction::constant(0.5), Metric::cut);
  EXPECT_NEAR(d.lower, 1.0 / 24, 1e-12);
  EXPECT_NEAR(d.upper, 1.0 / 8, 1e-12);
}

TEST(Delta, IsomorphicCopiesAreZeroApart) {
  Stream rng(SeedSpec(35));
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = 2 + rng.below(6);
    SimpleGraph g = gltest::random_graph(rng, n, 0.5);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    SimpleGraph h = g.relabeled(perm);
    DistanceInterval d = delta_distance(g, h, Metric::l1);
    EXPECT_NEAR(d.lower, 0.0, 1e-12);
    EXPECT_NEAR(d.upper, 0.0, 1e-12);
  }
}

TEST(Delta, IntervalIsOrderedAndBracketsAligned) {
  Stream rng(SeedSpec(36));
  for (int t = 0; t < 30; ++t) {
    Stepfunction a = gltest::random_stepfunction(rng, 1 + rng.below(4));
    Stepfunction b = gltest::random_stepfunction(rng, 1 + rng.below(4));
    DistanceInterval d = delta_distance(a, b, Metric::cut);
    EXPECT_LE(d.lower, d.upper + 1e-15);
    EXPECT_LE(d.upper, cut_norm_exact(a - b).value + 1e-12);
    auto lb = motif_lower_bound(a, b);
    EXPECT_NEAR(lb.first, d.lower, 1e-15);
  }
}

TEST(Delta, AnnealingBeyondExhaustive) {
  Stream rng(SeedSpec(37));
  SimpleGraph g = gltest::random_graph(rng, 12, 0.5);
  std::vector<std::size_t> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  SimpleGraph h = g.relabeled(perm);
  DistanceInterval d = delta_distance(g, h, Metric::l1);
  EXPECT_LE(d.lower, d.upper);
  EXPECT_LE(d.upper, graph_l1_distance(g, h) + 1e-12);
}

TEST(Delta, L1NeedsCompatibleParts) {
  Stepfunction a({0.3, 0.7}, {0, 1, 1, 0});
  Stepfunction b({0.5, 0.5}, {0, 1, 1, 0});
  EXPECT_THROW(delta_distance(a, b, Metric::l1), Error);
}

TEST(Delta, PermuteParts) {
  Stepfunction w({0.2, 0.3, 0.5}, {0.1, 0.2, 0.3, 0.2, 0.4, 0.5, 0.3, 0.5, 0.6});
  Stepfunction p = permute_parts(w, {2, 0, 1});
  EXPECT_EQ(p.measure(0), 0.5);
  EXPECT_EQ(p.value(0, 1), 0.3);
  EXPECT_EQ(p.value(1, 2), 0.2);
  EXPECT_NEAR(p.integral(), w.integral(), 1e-15);
}

TEST(LeftClose, HypothesisAndVacuity) {
  Stream rng(SeedSpec(38));
  Stepfunction u = gltest::random_stepfunction(rng, 3);
  for (std::size_t k = 2; k <= 4; ++k) {
    LeftCloseReport r = left_close_check(u, u, k);
    EXPECT_TRUE(r.hypothesis_holds);
    EXPECT_EQ(r.max_gap, 0.0);
    EXPECT_NEAR(r.threshold, std::pow(3.0, -double(k * k)), 1e-30);
    EXPECT_NEAR(r.implied_bound, 22 / std::sqrt(std::log2(double(k))), 1e-12);
    EXPECT_TRUE(r.bound_vacuous);
  }
  LeftCloseReport far = left_close_check(Stepfunction::constant(0), Stepfunction::constant(1), 2);
  EXPECT_FALSE(far.hypothesis_holds);
  EXPECT_THROW(left_close_check(u, u, 5), Error);
}
