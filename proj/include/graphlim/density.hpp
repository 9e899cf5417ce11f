#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <variant>

#include "graphlim/graph.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/stepfunction.hpp"

namespace graphlim {

// A density in [0,1]. Exact values carry ci_halfwidth == 0.
struct DensityValue {
  double value = 0;
  bool exact = true;
  double ci_halfwidth = 0;
};

// Borrowed view of either kind of subject.
using Subject = std::variant<const SimpleGraph*, const Stepfunction*>;

struct MotifCaps {
  std::size_t graph = 6;
  std::size_t stepfunction = 5;
};

// t(F, X). Graph subjects: hom(F, G) / n^{v(F)}. Stepfunction subjects:
// sum over part assignments of product of measures times product of edge
// values.
DensityValue homomorphism_density(const SimpleGraph& f, const SimpleGraph& g, const MotifCaps& caps = {});
DensityValue homomorphism_density(const SimpleGraph& f, const Stepfunction& w, const MotifCaps& caps = {});
DensityValue homomorphism_density(const SimpleGraph& f, Subject x, const MotifCaps& caps = {});

// Exact hom(F, G) as an integer count.
std::uint64_t homomorphism_count(const SimpleGraph& f, const SimpleGraph& g);

// t_ind(F, X): induced copies normalized by (n)_k for graphs; integral with
// (1 - W) factors on non-edges for stepfunctions.
DensityValue induced_density(const SimpleGraph& f, const SimpleGraph& g, const MotifCaps& caps = {});
DensityValue induced_density(const SimpleGraph& f, const Stepfunction& w, const MotifCaps& caps = {});
DensityValue induced_density(const SimpleGraph& f, Subject x, const MotifCaps& caps = {});

// t_ind of every labeled k-node graph, keyed by labeled_code. Requires k <= 5.
std::map<std::uint64_t, DensityValue> density_profile(Subject x, std::size_t k);

// Two-sided Hoeffding halfwidth for a mean of [0,1] variables:
// sqrt(ln(2/delta) / (2 trials)). delta = 0.05 gives sqrt(ln 40 / (2 trials)).
double hoeffding_halfwidth(std::size_t trials, double delta = 0.05);

// Monte Carlo estimate of t(F, W) from independent uniform point tuples.
// Trial i draws from seed.child(i), so the result does not depend on the
// worker count.
DensityValue estimate_density(const SimpleGraph& f, const Stepfunction& w, std::size_t trials, const SeedSpec& seed,
                              double delta = 0.05);

}  // namespace graphlim
