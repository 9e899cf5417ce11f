#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/density.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/metrics.hpp"
#include "graphlim/rng.hpp"
#include "graphlim/stepfunction.hpp"

namespace graphlim {

using GraphPredicate = std::function<bool(const SimpleGraph&)>;

// Tolerance 1/log n of the density-style test properties. base <= 0 means
// the natural logarithm. Infinite for n <= 1.
struct LogThreshold {
  double base = 0;
  double operator()(std::size_t n) const;
};

// A graph property evaluated on the sampled subgraph.
struct TestProperty {
  std::string name;
  GraphPredicate member;
  std::string description;
};

enum class PropertyKind { graph, graphon };

// Graphon property given as B_box(S, radius): graphons within cut distance
// radius of some center.
struct StepNet {
  std::vector<Stepfunction> centers;
  double radius = 0;
};

struct EditDistance {
  double distance = 0;  // 2 * edits / n^2
  std::size_t edits = 0;
  SimpleGraph witness;
};

struct PropertySpec {
  std::string name;
  PropertyKind kind = PropertyKind::graph;
  std::string description;
  GraphPredicate graph_member;                                   // graph kind
  std::function<bool(const Stepfunction&)> graphon_member;       // graphon kind, when decidable
  std::optional<std::vector<SimpleGraph>> forbidden;             // hereditary: forbidden induced subgraphs
  std::optional<StepNet> net;
  std::function<double(const Stepfunction&)> exact_distance;     // graphon kind closed form of d1(W, R)
  std::function<EditDistance(const SimpleGraph&)> graph_distance;  // graph kind exact edit distance

  TestProperty as_test_property() const;
};

enum class Verdict { accept, reject, inconclusive };
const char* verdict_name(Verdict v);
Verdict verdict_for(double estimate);

struct TesterReport {
  double estimate = 0;
  double ci_halfwidth = 0;
  std::size_t trials = 0;
  std::size_t k = 0;
  std::size_t accepted = 0;
  Verdict verdict = Verdict::inconclusive;
  // Witness trials: sample t is reproducible from seed.child(t).
  std::optional<std::size_t> first_accepted;
  std::optional<std::size_t> first_rejected;
};

// Fraction of samples in P'. Graph subjects: induced subgraph on a uniform
// k-subset; graphon subjects: G(k, W). Trial t uses seed.child(t). The
// halfwidth is Hoeffding's at confidence 1 - delta.
TesterReport run_tester(const SimpleGraph& g, const TestProperty& p, std::size_t k, std::size_t trials,
                        const SeedSpec& seed, double delta = 0.05);
TesterReport run_tester(const Stepfunction& w, const TestProperty& p, std::size_t k, std::size_t trials,
                        const SeedSpec& seed, double delta = 0.05);

// Fraction of k-subsets of F whose induced subgraph lies in P'. Exact when
// C(n,k) <= exact_limit, otherwise `samples` fixed-seed uniform subsets.
double subset_acceptance(const SimpleGraph& f, const TestProperty& p, std::size_t k,
                         std::size_t exact_limit = 100000, std::size_t samples = 10000);

// P'' = {F : q_k(F) >= 1/2}; graphs with fewer than k nodes are judged by P'.
TestProperty amplify(const TestProperty& p, std::size_t k);

// |t(F,G) - c| <= 1/log n; graphs on <= 2 nodes are members.
TestProperty density_test_property(const SimpleGraph& f, double c, LogThreshold log = {});

// Named properties:
//   quasirandom, triangle_free, forbidden_induced (list), edgeless, has_edge,
//   all_graphs (graph kind); constant_graphon(p), corner_one(a),
//   cut_ball_zero(r), net_property(S, radius) (graphon kind).
PropertySpec quasirandom_property(LogThreshold log = {});
PropertySpec triangle_free_property();
PropertySpec forbidden_induced_property(std::vector<SimpleGraph> forbidden, std::string name = "forbidden_induced");
PropertySpec edgeless_property();
PropertySpec has_edge_property();
PropertySpec all_graphs_property();
PropertySpec constant_graphon_property(double p);
// Stepfunctions equal to 1 on [0,a]^2. Flexible: flexing never moves a 1.
PropertySpec corner_one_property(double a);
// B_box({0}, r) = {W : integral of W <= r}; d1(W, R) = max(0, int W - r).
PropertySpec cut_ball_zero_property(double r);
PropertySpec net_property(std::vector<Stepfunction> centers, double radius);

// Parses "name" or "name:arg[:arg]" as listed by property_catalog():
// triangle_free, quasirandom, edgeless, has_edge, all_graphs,
// forbidden_induced:K3,C4, density:K2:0.5, amplify:3:triangle_free,
// constant_graphon:0.5, corner_one:0.5, cut_ball_zero:0.25,
// net:0.1:constant:0.5;file:w.json.
PropertySpec builtin_property(const std::string& spec, LogThreshold log = {});

struct PropertyInfo {
  std::string syntax;
  PropertyKind kind;
  std::string description;
};
std::vector<PropertyInfo> property_catalog();

struct ClosureCheck {
  bool holds = true;
  std::size_t checked = 0;          // labeled non-members examined
  std::optional<SimpleGraph> witness;
  double witness_density = 0;       // t_ind(witness, W)
};

// Necessary condition for W in the closure of a hereditary P: every labeled
// F on <= kmax nodes outside P has t_ind(F, W) == 0 exactly.
ClosureCheck hereditary_closure_check(const Stepfunction& w, const PropertySpec& p, std::size_t kmax);

// Nearest member of P on the same node set. Uses P's exact oracle when it
// has one; otherwise breadth-first over the number of toggled pairs, subsets
// in lexicographic order of the canonical pair list, first member wins
// (needs C(n,2) <= 21).
EditDistance edit_distance_to_property(const SimpleGraph& g, const PropertySpec& p);

// Monte Carlo estimate of E[d1(G(k,W), P)]; trial t uses seed.child(t).
DensityValue closure_score(const Stepfunction& w, const PropertySpec& p, std::size_t k, std::size_t trials,
                           const SeedSpec& seed);

// d1(W, R) for a graphon property: exact for closed forms, an interval
// [max(0, min_S lower delta_box - radius), min_S upper delta_1 + radius]
// for nets.
DistanceInterval graphon_distance_to_property(const Stepfunction& w, const PropertySpec& r,
                                              const MetricConfig& cfg = {});

// Integral of (1 - W) over [0,a]^2, which is d1(W, corner_one(a)).
double corner_deficit(const Stepfunction& w, double a);

}  // namespace graphlim
