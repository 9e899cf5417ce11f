#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "graphlim/density.hpp"
#include "graphlim/error.hpp"
#include "graphlim/metrics.hpp"
#include "graphlim/stepfunction.hpp"
#include "support.hpp"

using namespace graphlim;

namespace {

Stepfunction checkerboard4() {
  std::vector<double> v(16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v[i * 4 + j] = (i + j) % 2 ? 1.0 : 0.0;
  return Stepfunction::equal_parts(4, v);
}

}  // namespace

TEST(Stepfunction, Validation) {
  EXPECT_THROW(Stepfunction({0.5, 0.4}, {0, 0, 0, 0}), Error);
  EXPECT_THROW(Stepfunction({0.5, 0.5}, {0, 0.1, 0.2, 0}), Error);
  EXPECT_THROW(Stepfunction({0.5, 0.5}, {0, 1.5, 1.5, 0}), Error);
  EXPECT_THROW(Stepfunction({1.0, 0.0}, {0, 0, 0, 0}), Error);
  EXPECT_THROW(Stepfunction({}, {}), Error);
  EXPECT_NO_THROW(SignedStepfunction({1.0}, {-1.0}));
}

TEST(Stepfunction, EmbedGraph) {
  Stepfunction w = embed_graph(complete_graph(2));
  EXPECT_EQ(w.parts(), 2u);
  EXPECT_EQ(w.value(0, 1), 1.0);
  EXPECT_EQ(w.value(0, 0), 0.0);
  Stepfunction one = embed_graph(SimpleGraph(1));
  EXPECT_EQ(one.parts(), 1u);
  EXPECT_EQ(one.value(0, 0), 0.0);
}

TEST(Stepfunction, EmbedK4C4Density) {
  EXPECT_NEAR(homomorphism_density(cycle_graph(4), embed_graph(complete_graph(4))).value, 21.0 / 64, 1e-15);
  EXPECT_NEAR(gltest::brute_hom_density(cycle_graph(4), complete_graph(4)), 21.0 / 64, 1e-15);
}

TEST(Stepfunction, CommonRefinementInIntervalOrder) {
  std::vector<double> a{0.5, 0.5}, b{0.25, 0.75};
  Refinement r = common_refinement(a, b);
  ASSERT_EQ(r.measures.size(), 3u);
  EXPECT_NEAR(r.measures[0], 0.25, 1e-15);
  EXPECT_NEAR(r.measures[1], 0.25, 1e-15);
  EXPECT_NEAR(r.measures[2], 0.5, 1e-15);
  EXPECT_EQ(r.left, (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(r.right, (std::vector<std::size_t>{0, 1, 1}));
}

TEST(Stepfunction, StepAverageExamples) {
  Stepfunction half = Stepfunction::constant(0.5);
  EXPECT_TRUE(same_function(step_average(half, Partition::equal(3)), half, 1e-15));
  Stepfunction k2 = step_average(embed_graph(complete_graph(2)), Partition::equal(1));
  EXPECT_NEAR(k2.value(0, 0), 0.5, 1e-15);
  Stepfunction cb = step_average(checkerboard4(), Partition::grouping({0, 0, 1, 1}, 2));
  ASSERT_EQ(cb.parts(), 2u);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(cb.value(i, j), 0.5, 1e-15);
  EXPECT_THROW(Partition::grouping({0, 2}, 2), Error);
  EXPECT_THROW(Partition::intervals({0.3, 0.9}), Error);
}

TEST(Stepfunction, StepAveragePreservesIntegralAndMatchesOracle) {
  Stream rng(SeedSpec(5));
  for (int t = 0; t < 50; ++t) {
    Stepfunction w = gltest::random_stepfunction(rng, 1 + rng.below(6));
    const std::size_t q = 1 + rng.below(7);
    Stepfunction a = step_average(w, Partition::equal(q));
    EXPECT_NEAR(a.integral(), w.integral(), 1e-12);
    // Oracle: integrate w over cell (0,0) = [0,1/q]^2 by overlaps.
    double start = 0, cell = 0;
    std::vector<double> ov(w.parts());
    for (std::size_t i = 0; i < w.parts(); ++i) {
      ov[i] = std::max(0.0, std::min(start + w.measure(i), 1.0 / q) - start);
      start += w.measure(i);
    }
    for (std::size_t i = 0; i < w.parts(); ++i)
      for (std::size_t j = 0; j < w.parts(); ++j) cell += ov[i] * ov[j] * w.value(i, j);
    EXPECT_NEAR(a.value(0, 0), cell * q * q, 1e-10);
  }
}

TEST(Stepfunction, MixExamples) {
  Stream rng(SeedSpec(6));
  Stepfunction w = gltest::random_stepfunction(rng, 3);
  EXPECT_TRUE(same_function(mix(w, w, 0.3), w));
  EXPECT_TRUE(same_function(mix(Stepfunction::constant(0), Stepfunction::constant(1), 0.5),
                            Stepfunction::constant(0.5)));
  Stepfunction d = Stepfunction::equal_parts({{1, 0}, {0, 1}});
  Stepfunction m = mix(d, Stepfunction::constant(0), 0.25);
  EXPECT_TRUE(same_function(m, Stepfunction::equal_parts({{0.25, 0}, {0, 0.25}}), 1e-15));
  Stepfunction u = gltest::random_stepfunction(rng, 2);
  EXPECT_TRUE(same_function(mix(u, w, 1), u));
  EXPECT_TRUE(same_function(mix(u, w, 0), w));
  EXPECT_THROW(mix(u, w, 1.5), Error);
}

TEST(Stepfunction, Flexing) {
  Stream rng(SeedSpec(7));
  Stepfunction any = gltest::random_stepfunction(rng, 3);
  EXPECT_TRUE(is_flexing(any, Stepfunction::constant(0.5)));
  EXPECT_FALSE(is_flexing(Stepfunction::constant(0), Stepfunction::constant(1)));
  for (int t = 0; t < 100; ++t) {
    Stepfunction u = gltest::random_stepfunction(rng, 1 + rng.below(4));
    Stepfunction w = embed_graph(gltest::random_graph(rng, 1 + rng.below(4), 0.5));
    const double a = 0.01 + 0.98 * rng.uniform();
    Stepfunction z = mix(u, w, a);
    EXPECT_TRUE(is_flexing(u, z));
    EXPECT_TRUE(is_flexing(w, z));
    EXPECT_TRUE(is_flexing(u, u));
  }
}

TEST(Stepfunction, BlowupExamples) {
  SimpleGraph b = blowup_equitable(complete_graph(2), 5);
  EXPECT_EQ(blowup_class_sizes(2, 5), (std::vector<std::size_t>{3, 2}));
  EXPECT_EQ(b.edge_count(), 6u);
  EXPECT_FALSE(b.has_edge(0, 1));
  EXPECT_TRUE(b.has_edge(0, 3));
  SimpleGraph t = blowup_equitable(complete_graph(3), 4);
  EXPECT_EQ(blowup_class_sizes(3, 4), (std::vector<std::size_t>{2, 1, 1}));
  SimpleGraph k4m = complete_graph(4);
  k4m.remove_edge(0, 1);
  EXPECT_EQ(t, k4m);
  EXPECT_THROW(blowup_equitable(complete_graph(3), 2), Error);
}

TEST(Stepfunction, BlowupMultipleIsExact) {
  Stream rng(SeedSpec(8));
  for (int t = 0; t < 10; ++t) {
    SimpleGraph g = gltest::random_graph(rng, 2 + rng.below(6), 0.5);
    SimpleGraph b = blowup_equitable(g, 3 * g.node_count());
    EXPECT_TRUE(same_function(embed_graph(b), embed_graph(g), 1e-12));
  }
}

TEST(Stepfunction, BlowupL1Bound) {
  Stream rng(SeedSpec(9));
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(40);
    const std::size_t big = n + rng.below(400);
    SimpleGraph g = gltest::random_graph(rng, n, 0.5);
    const double d = l1_distance(embed_graph(blowup_equitable(g, big)), embed_graph(g));
    EXPECT_LE(d, 2.0 * n / big + 1e-12) << "n=" << n << " N=" << big;
  }
  // The case that breaks the lowest-index rule.
  SimpleGraph g = gltest::random_graph(rng, 40, 0.5);
  EXPECT_LE(l1_distance(embed_graph(blowup_equitable(g, 420)), embed_graph(g)), 2.0 * 40 / 420 + 1e-12);
}

TEST(Stepfunction, DominatingInterpolant) {
  Stream rng(SeedSpec(10));
  SimpleGraph g = gltest::random_graph(rng, 6, 0.5);
  Stepfunction one = dominating_interpolant(Stepfunction::constant(1), Stepfunction::constant(0.3), g);
  EXPECT_TRUE(same_function(one, Stepfunction::constant(1)));
  Stepfunction u = Stepfunction::constant(0.4);
  Stepfunction same = dominating_interpolant(u, u, g);
  EXPECT_TRUE(same_function(same, embed_graph(g), 1e-15));
  EXPECT_THROW(dominating_interpolant(Stepfunction::constant(0.2), Stepfunction::constant(0.3), g), Error);
  // W_G matching U_L everywhere gives V_L.
  SimpleGraph k = complete_graph(3);
  Stepfunction wk = embed_graph(k);
  Stepfunction v = mix(wk, Stepfunction::constant(1), 0.5);
  EXPECT_TRUE(same_function(dominating_interpolant(v, wk, k), step_average(v, Partition::equal(3)), 1e-15));
}

TEST(Stepfunction, DominatingInterpolantBracketsGraph) {
  Stream rng(SeedSpec(12));
  for (int t = 0; t < 100; ++t) {
    Stepfunction v = gltest::random_stepfunction(rng, 1 + rng.below(4));
    std::vector<double> uv(v.values().begin(), v.values().end());
    const double f = rng.uniform();
    for (auto& x : uv) x *= f;
    Stepfunction u(std::vector<double>(v.measures().begin(), v.measures().end()), uv);
    SimpleGraph g = gltest::random_graph(rng, 2 + rng.below(8), 0.5);
    Stepfunction w = dominating_interpolant(v, u, g);
    EXPECT_TRUE(dominated(embed_graph(g), w));
  }
}

TEST(Stepfunction, HalfGraphon) {
  Stepfunction h = half_graphon(4);
  EXPECT_NEAR(h.integral(), 0.5, 1e-15);
  EXPECT_EQ(h.value(0, 0), 1.0);
  EXPECT_EQ(h.value(0, 3), 0.5);
  EXPECT_EQ(h.value(3, 3), 0.0);
}

TEST(Stepfunction, JsonRoundTripAndErrors) {
  Stream rng(SeedSpec(13));
  for (int t = 0; t < 20; ++t) {
    Stepfunction w = gltest::random_stepfunction(rng, 1 + rng.below(5));
    EXPECT_EQ(parse_stepfunction_json(stepfunction_to_json(w)), w);
  }
  EXPECT_THROW(parse_stepfunction_json("{\"parts\":[1]}"), Error);
  EXPECT_THROW(parse_stepfunction_json("{\"parts\":[1],\"values\":[[0.5]],\"x\":1}"), Error);
  EXPECT_THROW(parse_stepfunction_json("not json"), Error);
}

TEST(Stepfunction, Literals) {
  EXPECT_EQ(stepfunction_from_literal("constant:0.25"), Stepfunction::constant(0.25));
  EXPECT_EQ(stepfunction_from_literal("halfgraphon:3"), half_graphon(3));
  auto path = std::filesystem::temp_directory_path() / "graphlim_literal.json";
  Stepfunction w = Stepfunction::equal_parts({{0, 1}, {1, 0.5}});
  {
    std::ofstream out(path);
    out << stepfunction_to_json(w);
  }
  EXPECT_EQ(stepfunction_from_literal("file:" + path.string()), w);
  std::filesystem::remove(path);
  EXPECT_THROW(stepfunction_from_literal("banana"), Error);
  EXPECT_THROW(stepfunction_from_literal("constant:2"), Error);
}
