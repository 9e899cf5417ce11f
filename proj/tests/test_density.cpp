#include <gtest/gtest.h>

#include <cmath>

#include "graphlim/density.hpp"
#include "graphlim/error.hpp"
#include "graphlim/parallel.hpp"
#include "support.hpp"

using namespace graphlim;

TEST(Density, ClosedFormsAtOneHalf) {
  const Stepfunction half = Stepfunction::constant(0.5);
  EXPECT_EQ(homomorphism_density(motif("K2"), half).value, 0.5);
  EXPECT_EQ(homomorphism_density(motif("C4"), half).value, 0.0625);
  EXPECT_EQ(induced_density(motif("K3"), half).value, 0.125);
  EXPECT_TRUE(homomorphism_density(motif("C4"), half).exact);
}

TEST(Density, GraphHomMatchesBruteForce) {
  Stream rng(SeedSpec(21));
  for (int t = 0; t < 30; ++t) {
    SimpleGraph g = gltest::random_graph(rng, 1 + rng.below(9), rng.uniform());
    for (std::size_t k = 1; k <= 4; ++k) {
      SimpleGraph f = gltest::random_graph(rng, k, 0.6);
      EXPECT_NEAR(homomorphism_density(f, g).value, gltest::brute_hom_density(f, g), 1e-15);
    }
  }
  EXPECT_EQ(homomorphism_count(cycle_graph(4), complete_graph(4)), 84u);
  EXPECT_EQ(homomorphism_count(complete_graph(3), complete_graph(5)), 60u);
}

TEST(Density, EmbeddingPreservesHomDensity) {
  Stream rng(SeedSpec(22));
  for (int t = 0; t < 20; ++t) {
    SimpleGraph g = gltest::random_graph(rng, 1 + rng.below(12), rng.uniform());
    const Stepfunction w = embed_graph(g);
    for (std::size_t k = 1; k <= 4; ++k)
      for (const SimpleGraph& f : all_labeled_graphs(k))
        EXPECT_NEAR(homomorphism_density(f, g).value, homomorphism_density(f, w).value, 1e-12);
  }
}

TEST(Density, InducedGraphMatchesBruteForce) {
  Stream rng(SeedSpec(23));
  for (int t = 0; t < 20; ++t) {
    SimpleGraph g = gltest::random_graph(rng, 4 + rng.below(5), rng.uniform());
    for (std::size_t k = 1; k <= 4; ++k) {
      SimpleGraph f = gltest::random_graph(rng, k, 0.5);
      EXPECT_NEAR(induced_density(f, g).value, gltest::brute_induced_graph(f, g), 1e-15);
    }
  }
  EXPECT_THROW(induced_density(complete_graph(4), complete_graph(3)), Error);
}

TEST(Density, StepfunctionMatchesBruteForce) {
  Stream rng(SeedSpec(24));
  for (int t = 0; t < 30; ++t) {
    Stepfunction w = gltest::random_stepfunction(rng, 1 + rng.below(4));
    for (std::size_t k = 1; k <= 4; ++k) {
      SimpleGraph f = gltest::random_graph(rng, k, 0.5);
      EXPECT_NEAR(homomorphism_density(f, w).value, gltest::brute_step_density(f, w, false), 1e-13);
      EXPECT_NEAR(induced_density(f, w).value, gltest::brute_step_density(f, w, true), 1e-13);
    }
  }
}

TEST(Density, MotifCaps) {
  const Stepfunction half = Stepfunction::constant(0.5);
  EXPECT_THROW(homomorphism_density(complete_graph(6), half), Error);
  EXPECT_THROW(homomorphism_density(complete_graph(7), complete_graph(8)), Error);
  MotifCaps wide{7, 6};
  EXPECT_NEAR(homomorphism_density(complete_graph(6), half, wide).value, std::pow(0.5, 15), 1e-18);
}

TEST(Density, ProfileSumsToOneAndMatchesOracle) {
  Stream rng(SeedSpec(25));
  Stepfunction w = gltest::random_stepfunction(rng, 3);
  SimpleGraph g = gltest::random_graph(rng, 7, 0.4);
  for (std::size_t k = 1; k <= 4; ++k) {
    auto pw = density_profile(&w, k);
    auto pg = density_profile(&g, k);
    EXPECT_EQ(pw.size(), std::size_t{1} << pair_count(k));
    double sw = 0, sg = 0;
    for (const auto& [code, dv] : pw) {
      sw += dv.value;
      EXPECT_NEAR(dv.value, gltest::brute_step_density(graph_from_code(k, code), w, true), 1e-13);
    }
    for (const auto& [code, dv] : pg) {
      sg += dv.value;
      EXPECT_NEAR(dv.value, gltest::brute_induced_graph(graph_from_code(k, code), g), 1e-13);
    }
    EXPECT_NEAR(sw, 1.0, 1e-12);
    EXPECT_NEAR(sg, 1.0, 1e-12);
  }
  EXPECT_THROW(density_profile(&w, 6), Error);
}

TEST(Density, HoeffdingHalfwidth) {
  EXPECT_NEAR(hoeffding_halfwidth(1000), std::sqrt(std::log(40.0) / 2000), 1e-15);
  EXPECT_NEAR(hoeffding_halfwidth(50, 0.01), std::sqrt(std::log(200.0) / 100), 1e-15);
}

TEST(Density, MonteCarloCoversExact) {
  Stream rng(SeedSpec(26));
  for (int t = 0; t < 10; ++t) {
    Stepfunction w = gltest::random_stepfunction(rng, 1 + rng.below(4));
    SimpleGraph f = motif(t % 2 ? "C4" : "K3");
    DensityValue est = estimate_density(f, w, 20000, SeedSpec(100 + t));
    EXPECT_FALSE(est.exact);
    EXPECT_LE(std::abs(est.value - homomorphism_density(f, w).value), est.ci_halfwidth);
  }
}

TEST(Density, MonteCarloIndependentOfThreads) {
  Stepfunction w = Stepfunction::equal_parts({{0.2, 0.9}, {0.9, 0.4}});
  set_max_threads(1);
  const double a = estimate_density(motif("C4"), w, 5000, SeedSpec(77)).value;
  set_max_threads(4);
  const double b = estimate_density(motif("C4"), w, 5000, SeedSpec(77)).value;
  set_max_threads(0);
  EXPECT_EQ(a, b);
}
