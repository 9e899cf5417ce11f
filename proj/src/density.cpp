#include "graphlim/density.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "graphlim/error.hpp"
#include "graphlim/parallel.hpp"

namespace graphlim {

namespace {

void check_cap(const SimpleGraph& f, std::size_t cap, const char* what) {
  require(f.node_count() <= cap, ErrorCode::unsupported,
          std::string("motif too large: ") + std::to_string(f.node_count()) + " nodes exceeds the " + what +
              " cap of " + std::to_string(cap));
}

// Smallest vertex cover of F (brute force; F has at most a handful of
// nodes), ordered so each node has as many earlier neighbours as possible.
std::vector<std::size_t> cover_order(const SimpleGraph& f) {
  const std::size_t k = f.node_count();
  const auto edges = f.edges();
  std::uint32_t best = (1U << k) - 1;
  for (std::uint32_t s = 0; s < (1U << k); ++s) {
    if (std::popcount(s) >= std::popcount(best)) continue;
    bool covers = std::all_of(edges.begin(), edges.end(),
                              [&](const Edge& e) { return ((s >> e.u) & 1U) || ((s >> e.v) & 1U); });
    if (covers) best = s;
  }
  std::vector<std::size_t> order;
  std::vector<bool> placed(k, false);
  while (order.size() < static_cast<std::size_t>(std::popcount(best))) {
    std::size_t pick = k;
    int pick_links = -1;
    for (std::size_t v = 0; v < k; ++v) {
      if (!((best >> v) & 1U) || placed[v]) continue;
      int links = 0;
      for (std::size_t u : order) links += f.has_edge(u, v) ? 1 : 0;
      if (links > pick_links) {
        pick = v;
        pick_links = links;
      }
    }
    placed[pick] = true;
    order.push_back(pick);
  }
  return order;
}

using Wide = unsigned __int128;

struct HomCounter {
  const SimpleGraph& f;
  const SimpleGraph& g;
  std::vector<std::size_t> cover;
  std::vector<std::size_t> rest;
  std::vector<std::size_t> image;
  std::vector<std::uint64_t> scratch;
  Wide total = 0;

  HomCounter(const SimpleGraph& f_, const SimpleGraph& g_) : f(f_), g(g_), cover(cover_order(f_)) {
    std::vector<bool> in_cover(f.node_count(), false);
    for (std::size_t v : cover) in_cover[v] = true;
    for (std::size_t v = 0; v < f.node_count(); ++v)
      if (!in_cover[v]) rest.push_back(v);
    image.assign(f.node_count(), 0);
    scratch.assign(g.words_per_row(), 0);
  }

  // Intersection of G-neighbourhoods of the images of v's already-mapped
  // F-neighbours among cover[0..depth). Returns false if v has none.
  bool candidates(std::size_t v, std::size_t depth, std::vector<std::uint64_t>& out) const {
    bool any = false;
    for (std::size_t d = 0; d < depth; ++d) {
      const std::size_t u = cover[d];
      if (!f.has_edge(u, v)) continue;
      auto r = g.row(image[u]);
      if (!any) {
        std::copy(r.begin(), r.end(), out.begin());
        any = true;
      } else {
        for (std::size_t w = 0; w < out.size(); ++w) out[w] &= r[w];
      }
    }
    return any;
  }

  Wide leaf_factor() {
    Wide prod = 1;
    for (std::size_t v : rest) {
      std::uint64_t c = g.node_count();
      if (candidates(v, cover.size(), scratch)) {
        c = 0;
        for (std::uint64_t w : scratch) c += std::popcount(w);
      }
      if (c == 0) return 0;
      prod *= c;
    }
    return prod;
  }

  void run(std::size_t depth) {
    if (depth == cover.size()) {
      total += leaf_factor();
      return;
    }
    const std::size_t v = cover[depth];
    std::vector<std::uint64_t> cand(g.words_per_row());
    if (!candidates(v, depth, cand)) {
      for (std::size_t x = 0; x < g.node_count(); ++x) {
        image[v] = x;
        run(depth + 1);
      }
      return;
    }
    for (std::size_t w = 0; w < cand.size(); ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        image[v] = w * 64 + std::countr_zero(bits);
        run(depth + 1);
        bits &= bits - 1;
      }
    }
  }
};

Wide hom_count_wide(const SimpleGraph& f, const SimpleGraph& g) {
  HomCounter c(f, g);
  c.run(0);
  return c.total;
}

long double ipow(long double base, std::size_t e) {
  long double r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

std::uint64_t homomorphism_count(const SimpleGraph& f, const SimpleGraph& g) {
  Wide c = hom_count_wide(f, g);
  require(c <= std::numeric_limits<std::uint64_t>::max(), ErrorCode::out_of_range,
          "homomorphism count exceeds 64 bits");
  return static_cast<std::uint64_t>(c);
}

DensityValue homomorphism_density(const SimpleGraph& f, const SimpleGraph& g, const MotifCaps& caps) {
  check_cap(f, caps.graph, "graph");
  const Wide c = hom_count_wide(f, g);
  const long double denom = ipow(static_cast<long double>(g.node_count()), f.node_count());
  return {static_cast<double>(static_cast<long double>(c) / denom), true, 0.0};
}

DensityValue homomorphism_density(const SimpleGraph& f, const Stepfunction& w, const MotifCaps& caps) {
  check_cap(f, caps.stepfunction, "stepfunction");
  const std::size_t k = w.parts();
  const auto cover = cover_order(f);
  std::vector<std::size_t> rest;
  {
    std::vector<bool> in_cover(f.node_count(), false);
    for (std::size_t v : cover) in_cover[v] = true;
    for (std::size_t v = 0; v < f.node_count(); ++v)
      if (!in_cover[v]) rest.push_back(v);
  }
  std::vector<std::size_t> part(f.node_count(), 0);
  long double total = 0;
  // Odometer over cover assignments.
  std::vector<std::size_t> digits(cover.size(), 0);
  for (;;) {
    for (std::size_t d = 0; d < cover.size(); ++d) part[cover[d]] = digits[d];
    long double weight = 1;
    for (std::size_t d = 0; d < cover.size() && weight != 0; ++d) {
      weight *= w.measure(digits[d]);
      for (std::size_t e = 0; e < d; ++e)
        if (f.has_edge(cover[e], cover[d])) weight *= w.value(digits[e], digits[d]);
    }
    for (std::size_t v : rest) {
      if (weight == 0) break;
      long double s = 0;
      for (std::size_t p = 0; p < k; ++p) {
        long double term = w.measure(p);
        for (std::size_t u : cover)
          if (f.has_edge(u, v)) term *= w.value(part[u], p);
        s += term;
      }
      weight *= s;
    }
    total += weight;
    std::size_t d = 0;
    while (d < digits.size() && ++digits[d] == k) digits[d++] = 0;
    if (d == digits.size()) break;
  }
  return {std::clamp(static_cast<double>(total), 0.0, 1.0), true, 0.0};
}

DensityValue homomorphism_density(const SimpleGraph& f, Subject x, const MotifCaps& caps) {
  return std::visit([&](const auto* s) { return homomorphism_density(f, *s, caps); }, x);
}

namespace {

struct InducedCounter {
  const SimpleGraph& f;
  const SimpleGraph& g;
  std::vector<std::size_t> image;
  std::vector<std::uint64_t> used;
  Wide total = 0;

  InducedCounter(const SimpleGraph& f_, const SimpleGraph& g_)
      : f(f_), g(g_), image(f_.node_count()), used(g_.words_per_row(), 0) {}

  void candidates(std::size_t v, std::vector<std::uint64_t>& out) const {
    const std::size_t n = g.node_count();
    const std::size_t words = out.size();
    for (std::size_t w = 0; w < words; ++w) out[w] = ~used[w];
    if (n % 64) out[words - 1] &= (std::uint64_t{1} << (n % 64)) - 1;
    for (std::size_t u = 0; u < v; ++u) {
      auto r = g.row(image[u]);
      if (f.has_edge(u, v)) {
        for (std::size_t w = 0; w < words; ++w) out[w] &= r[w];
      } else {
        for (std::size_t w = 0; w < words; ++w) out[w] &= ~r[w];
      }
    }
  }

  void run(std::size_t v) {
    std::vector<std::uint64_t> cand(g.words_per_row());
    candidates(v, cand);
    if (v + 1 == f.node_count()) {
      for (std::uint64_t w : cand) total += std::popcount(w);
      return;
    }
    for (std::size_t w = 0; w < cand.size(); ++w) {
      std::uint64_t bits = cand[w];
      while (bits) {
        const std::size_t x = w * 64 + std::countr_zero(bits);
        image[v] = x;
        used[x / 64] |= std::uint64_t{1} << (x % 64);
        run(v + 1);
        used[x / 64] &= ~(std::uint64_t{1} << (x % 64));
        bits &= bits - 1;
      }
    }
  }
};

long double falling(std::size_t n, std::size_t k) {
  long double r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= static_cast<long double>(n - i);
  return r;
}

}  // namespace

DensityValue induced_density(const SimpleGraph& f, const SimpleGraph& g, const MotifCaps& caps) {
  check_cap(f, caps.graph, "graph");
  require(g.node_count() >= f.node_count(), ErrorCode::invalid_argument,
          "graph too small: induced density needs at least " + std::to_string(f.node_count()) + " nodes");
  InducedCounter c(f, g);
  c.run(0);
  return {static_cast<double>(static_cast<long double>(c.total) / falling(g.node_count(), f.node_count())), true,
          0.0};
}

DensityValue induced_density(const SimpleGraph& f, const Stepfunction& w, const MotifCaps& caps) {
  check_cap(f, caps.stepfunction, "stepfunction");
  const std::size_t k = w.parts();
  const std::size_t v = f.node_count();
  std::vector<std::size_t> digits(v, 0);
  long double total = 0;
  for (;;) {
    long double weight = 1;
    for (std::size_t a = 0; a < v && weight != 0; ++a) {
      weight *= w.measure(digits[a]);
      for (std::size_t b = 0; b < a; ++b) {
        const double x = w.value(digits[a], digits[b]);
        weight *= f.has_edge(a, b) ? x : 1.0 - x;
      }
    }
    total += weight;
    std::size_t d = 0;
    while (d < v && ++digits[d] == k) digits[d++] = 0;
    if (d == v) break;
  }
  return {std::clamp(static_cast<double>(total), 0.0, 1.0), true, 0.0};
}

DensityValue induced_density(const SimpleGraph& f, Subject x, const MotifCaps& caps) {
  return std::visit([&](const auto* s) { return induced_density(f, *s, caps); }, x);
}

namespace {

void profile_graph(const SimpleGraph& g, std::size_t k, std::vector<Wide>& counts) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> image(k);
  std::vector<bool> used(n, false);
  // Depth-first over injective maps, extending the labeled code pair by pair.
  auto rec = [&](auto&& self, std::size_t depth, std::uint64_t code) -> void {
    if (depth == k) {
      ++counts[code];
      return;
    }
    for (std::size_t x = 0; x < n; ++x) {
      if (used[x]) continue;
      used[x] = true;
      image[depth] = x;
      // Pair (i, depth) for i < depth sits at the bit of pair index in the
      // lexicographic (i<j) ordering.
      std::uint64_t c = code;
      for (std::size_t i = 0; i < depth; ++i) {
        const std::size_t idx = i * (2 * k - i - 1) / 2 + (depth - i - 1);
        if (g.has_edge(image[i], x)) c |= std::uint64_t{1} << idx;
      }
      self(self, depth + 1, c);
      used[x] = false;
    }
  };
  rec(rec, 0, 0);
}

}  // namespace

std::map<std::uint64_t, DensityValue> density_profile(Subject x, std::size_t k) {
  require(k >= 1 && k <= 5, ErrorCode::unsupported, "density profile supports 1..5 nodes");
  const std::size_t codes = std::size_t{1} << pair_count(k);
  std::map<std::uint64_t, DensityValue> out;
  if (std::holds_alternative<const SimpleGraph*>(x)) {
    const SimpleGraph& g = *std::get<const SimpleGraph*>(x);
    require(g.node_count() >= k, ErrorCode::invalid_argument, "graph too small for the requested profile");
    std::vector<Wide> counts(codes, 0);
    profile_graph(g, k, counts);
    const long double denom = falling(g.node_count(), k);
    for (std::size_t c = 0; c < codes; ++c)
      out[c] = {static_cast<double>(static_cast<long double>(counts[c]) / denom), true, 0.0};
    return out;
  }
  const Stepfunction& w = *std::get<const Stepfunction*>(x);
  const std::size_t parts = w.parts();
  std::vector<long double> probs(codes, 0.0L);
  std::vector<std::size_t> digits(k, 0);
  std::vector<long double> dist, next;
  for (;;) {
    long double weight = 1;
    for (std::size_t a = 0; a < k; ++a) weight *= w.measure(digits[a]);
    // Distribution over codes, one pair at a time.
    dist.assign(1, weight);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        const double p = w.value(digits[i], digits[j]);
        next.assign(dist.size() * 2, 0.0L);
        for (std::size_t c = 0; c < dist.size(); ++c) {
          next[c] = dist[c] * (1.0L - p);
          next[c + dist.size()] = dist[c] * p;
        }
        dist.swap(next);
      }
    }
    for (std::size_t c = 0; c < codes; ++c) probs[c] += dist[c];
    std::size_t d = 0;
    while (d < k && ++digits[d] == parts) digits[d++] = 0;
    if (d == k) break;
  }
  for (std::size_t c = 0; c < codes; ++c) out[c] = {static_cast<double>(probs[c]), true, 0.0};
  return out;
}

double hoeffding_halfwidth(std::size_t trials, double delta) {
  require(trials >= 1, ErrorCode::invalid_argument, "trials must be positive");
  require(delta > 0 && delta < 1, ErrorCode::invalid_argument, "confidence level must lie in (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(trials)));
}

DensityValue estimate_density(const SimpleGraph& f, const Stepfunction& w, std::size_t trials, const SeedSpec& seed,
                              double delta) {
  require(trials >= 1, ErrorCode::invalid_argument, "trials must be positive");
  const std::size_t v = f.node_count();
  const auto ends = w.boundaries();
  const auto edges = f.edges();
  std::vector<double> samples(trials);
  parallel_for(trials, [&](std::size_t t) {
    Stream rng(seed.child(t));
    std::vector<std::size_t> part(v);
    for (std::size_t i = 0; i < v; ++i) {
      const double u = rng.uniform();
      part[i] = std::min<std::size_t>(std::upper_bound(ends.begin(), ends.end(), u) - ends.begin(), ends.size() - 1);
    }
    double prod = 1;
    for (const Edge& e : edges) prod *= w.value(part[e.u], part[e.v]);
    samples[t] = prod;
  });
  long double sum = 0;
  for (double s : samples) sum += s;
  return {static_cast<double>(sum / static_cast<long double>(trials)), false, hoeffding_halfwidth(trials, delta)};
}

}  // namespace graphlim
