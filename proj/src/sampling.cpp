#include "graphlim/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

std::uint64_t pair_index(std::size_t i, std::size_t j) {
  return static_cast<std::uint64_t>(j) * (static_cast<std::uint64_t>(j) - 1) / 2 + i;
}

// Pair i<j is joined when its uniform draw falls below prob(i, j). The
// outcome is handed to `join` as a flag rather than branched on, which
// keeps the inner loop free of unpredictable jumps.
template <class Prob, class Join>
void decide_pairs(std::size_t n, const SeedSpec& seed, Prob&& prob, Join&& join) {
  const Stream edges(seed.child(1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = prob(i, j);
      if (p <= 0) continue;
      join(i, j, p >= 1 || edges.uniform_at(pair_index(i, j)) < p);
    }
  }
}

template <class Prob>
SimpleGraph connect_pairs(std::size_t n, const SeedSpec& seed, Prob&& prob) {
  const std::size_t words = (n + 63) / 64;
  std::vector<std::uint64_t> bits(n * words, 0);
  decide_pairs(n, seed, prob, [&](std::size_t i, std::size_t j, bool hit) {
    bits[i * words + j / 64] |= static_cast<std::uint64_t>(hit) << (j % 64);
  });
  return SimpleGraph::from_upper_rows(n, std::move(bits));
}

}  // namespace

PartPoint locate(const StepKernel& w, double x) {
  double start = 0;
  const std::size_t k = w.parts();
  for (std::size_t i = 0; i < k; ++i) {
    const double end = i + 1 == k ? 1.0 : start + w.measure(i);
    if (x < end || i + 1 == k) return {i, std::max(0.0, x - start)};
    start = end;
  }
  return {k - 1, 0.0};
}

std::vector<PartPoint> sample_points(const Stepfunction& w, std::size_t n, const SeedSpec& seed, bool stratified) {
  require(n >= 1, ErrorCode::invalid_argument, "sample size must be positive");
  const Stream pts(seed.child(0));
  std::vector<PartPoint> out(n);
  const double width = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = pts.uniform_at(i);
    const double x = stratified ? std::min((static_cast<double>(i) + u) * width, std::nextafter(1.0, 0.0)) : u;
    out[i] = locate(w, x);
  }
  return out;
}

SimpleGraph sample_w_random(const Stepfunction& w, std::size_t n, const SeedSpec& seed) {
  const auto pts = sample_points(w, n, seed, false);
  return connect_pairs(n, seed, [&](std::size_t i, std::size_t j) { return w.value(pts[i].part, pts[j].part); });
}

SimpleGraph sample_w_random_ordered(const Stepfunction& w, std::size_t n, const SeedSpec& seed) {
  const auto pts = sample_points(w, n, seed, true);
  return connect_pairs(n, seed, [&](std::size_t i, std::size_t j) { return w.value(pts[i].part, pts[j].part); });
}

std::size_t w_random_edge_count(const Stepfunction& w, std::size_t n, const SeedSpec& seed) {
  const auto pts = sample_points(w, n, seed, false);
  std::size_t count = 0;
  decide_pairs(n, seed, [&](std::size_t i, std::size_t j) { return w.value(pts[i].part, pts[j].part); },
               [&](std::size_t, std::size_t, bool hit) { count += hit; });
  return count;
}

std::vector<std::size_t> sample_subset(std::size_t n, std::size_t k, const SeedSpec& seed) {
  require(k >= 1 && k <= n, ErrorCode::out_of_range,
          "sample size " + std::to_string(k) + " out of range for a graph on " + std::to_string(n) + " nodes");
  Stream rng(seed);
  // Floyd's algorithm: k draws, uniform over k-subsets.
  std::vector<std::size_t> chosen;
  chosen.reserve(k);
  std::vector<bool> in(n, false);
  for (std::size_t j = n - k; j < n; ++j) {
    const std::size_t t = rng.below(j + 1);
    const std::size_t pick = in[t] ? j : t;
    in[pick] = true;
    chosen.push_back(pick);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

SimpleGraph sample_induced(const SimpleGraph& g, std::size_t k, const SeedSpec& seed) {
  const auto nodes = sample_subset(g.node_count(), k, seed);
  return g.induced(nodes);
}

SimpleGraph randomize_weighted(const Stepfunction& h, const SeedSpec& seed) {
  require(h.has_equal_parts(), ErrorCode::invalid_argument, "randomize_weighted needs equal parts");
  return connect_pairs(h.parts(), seed, [&](std::size_t i, std::size_t j) { return h.value(i, j); });
}

Stepfunction random_stepfunction(Stream& rng, std::size_t k) {
  require(k >= 1, ErrorCode::invalid_argument, "need at least one part");
  auto measures = dirichlet_uniform(rng, k);
  std::vector<double> v(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) v[i * k + j] = v[j * k + i] = rng.uniform();
  return Stepfunction(std::move(measures), std::move(v));
}

}  // namespace graphlim
