#pragma once

#include <cstddef>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/stepfunction.hpp"

namespace graphlim {

// A point of [0,1] seen through a stepfunction: the part it falls in plus
// its offset within that part (in [0, measure)).
struct PartPoint {
  std::size_t part;
  double offset;
};

// Locates x in [0,1) among W's parts laid out in order.
PartPoint locate(const StepKernel& w, double x);

// G(n, W): n i.i.d. uniform points, pair ij joined with probability
// W(X_i, X_j). Point i uses draw i of seed.child(0); pair (i,j) uses the
// draw indexed by the pair on seed.child(1), so every decision is a pure
// function of (seed, i, j).
SimpleGraph sample_w_random(const Stepfunction& w, std::size_t n, const SeedSpec& seed);

// sample_w_random(w, n, seed).edge_count() without building the graph.
std::size_t w_random_edge_count(const Stepfunction& w, std::size_t n, const SeedSpec& seed);

// G'(n, W): X_i uniform in [i/n, (i+1)/n], pairs as above.
SimpleGraph sample_w_random_ordered(const Stepfunction& w, std::size_t n, const SeedSpec& seed);

// The point positions used by the two samplers above (exposed for tests
// and for couplings).
std::vector<PartPoint> sample_points(const Stepfunction& w, std::size_t n, const SeedSpec& seed, bool stratified);

// G(k, G): induced subgraph on a uniform k-subset, relabeled in ascending
// original order.
SimpleGraph sample_induced(const SimpleGraph& g, std::size_t k, const SeedSpec& seed);
std::vector<std::size_t> sample_subset(std::size_t n, std::size_t k, const SeedSpec& seed);

// Equal-part stepfunction read as a weighted graph on N nodes; edge ij kept
// independently with probability values[i][j].
SimpleGraph randomize_weighted(const Stepfunction& h, const SeedSpec& seed);

// Random corpus generator: Dirichlet(1,...,1) measures on k parts and
// i.i.d. uniform values on and above the diagonal, mirrored.
Stepfunction random_stepfunction(Stream& rng, std::size_t k);

}  // namespace graphlim
