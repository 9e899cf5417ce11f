#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "graphlim/density.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/stepfunction.hpp"

namespace graphlim {

// Exact cap and annealing schedule shared by the distance routines.
struct MetricConfig {
  std::size_t exact_cap = 20;           // cut norm: vertex enumeration up to this many parts
  std::size_t heuristic_restarts = 32;  // alternating maximization starts
  std::size_t exhaustive_parts = 8;     // delta: full permutation search up to this many parts
  std::size_t anneal_restarts = 32;
  std::size_t anneal_steps = 400;       // swap proposals per restart
  double anneal_t0 = 0.05;
  double anneal_cooling = 0.99;         // geometric factor per step
  std::uint64_t seed = 0;               // heuristic and annealing streams
};

struct CutNormResult {
  double value = 0;
  bool exact = true;
  std::vector<std::size_t> witness_s;  // part indices
  std::vector<std::size_t> witness_t;
};

// d1(U, W) = integral of |U - W| over the common refinement.
double l1_distance(const Stepfunction& u, const Stepfunction& w);

// ||D||_box. Exact by enumerating S over part subsets (the bilinear
// objective over the box of fractional part weights peaks at a vertex, and
// for fixed S the best T takes every column of one sign). Beyond the exact
// cap, alternating maximization from random starts gives a lower bound.
CutNormResult cut_norm(const SignedStepfunction& d, const MetricConfig& cfg = {});
CutNormResult cut_norm_exact(const SignedStepfunction& d);
CutNormResult cut_norm_heuristic(const SignedStepfunction& d, std::size_t restarts, const SeedSpec& seed);

// Integral of D over the witness rectangle (signed).
double rectangle_integral(const StepKernel& d, const std::vector<std::size_t>& s, const std::vector<std::size_t>& t);

// max(integral of D+, integral of D-): a certified upper bound on ||D||_box.
double cut_norm_upper_bound(const SignedStepfunction& d);

// d1 between two graphs on the same node set: 2 |E(G) xor E(H)| / n^2,
// which equals l1_distance(embed(G), embed(H)).
double graph_l1_distance(const SimpleGraph& g, const SimpleGraph& h);

// d_box between two graphs on the same node set, e_G(S,T) counting ordered
// pairs; equals cut_norm(W_G - W_H).
double graph_cut_distance(const SimpleGraph& g, const SimpleGraph& h, const MetricConfig& cfg = {});

enum class Metric { cut, l1 };

struct DistanceInterval {
  double lower = 0;
  double upper = 0;
  std::string lower_witness;               // edge list of the motif attaining the lower end
  std::vector<std::size_t> upper_witness;  // permutation of B's parts
};

// Interval for delta_box / delta_1. Upper: best aligned distance over
// permutations of B's parts (exhaustive up to exhaustive_parts, annealing
// beyond); an aligned cut norm past the exact cap is replaced by the
// certified bound max(int D+, int D-), so upper stays an upper bound.
// Lower: the motif bound, valid for both metrics since delta_1 >= delta_box.
DistanceInterval delta_distance(const Stepfunction& a, const Stepfunction& b, Metric metric,
                                const MetricConfig& cfg = {});
DistanceInterval delta_distance(const SimpleGraph& a, const SimpleGraph& b, Metric metric,
                                const MetricConfig& cfg = {});

// max over motifs F (no isolated nodes, <= max_nodes nodes) of
// |t(F,A) - t(F,B)| / |E(F)|, with the maximizing motif.
std::pair<double, SimpleGraph> motif_lower_bound(const Stepfunction& a, const Stepfunction& b,
                                                 std::size_t max_nodes = 4);

// Stepfunction with B's parts reordered: part i of the result is part perm[i].
Stepfunction permute_parts(const Stepfunction& w, const std::vector<std::size_t>& perm);

struct LeftCloseReport {
  std::size_t k = 0;
  double max_gap = 0;        // max |t(F,U) - t(F,W)| over labeled k-node F
  std::uint64_t worst_code = 0;
  double threshold = 0;      // 3^{-k^2}
  bool hypothesis_holds = false;
  double implied_bound = 0;  // 22 / sqrt(log2 k)
  bool bound_vacuous = false;
};

// Checks the density-closeness hypothesis that implies a delta_box bound of
// 22/sqrt(log2 k). k in {2,3,4}.
LeftCloseReport left_close_check(const Stepfunction& u, const Stepfunction& w, std::size_t k);

}  // namespace graphlim
