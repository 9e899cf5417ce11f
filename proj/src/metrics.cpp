#include "graphlim/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "graphlim/error.hpp"

namespace graphlim {

double l1_distance(const Stepfunction& u, const Stepfunction& w) { return (u - w).l1_norm(); }

double rectangle_integral(const StepKernel& d, const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
  long double sum = 0;
  for (std::size_t i : s)
    for (std::size_t j : t) sum += static_cast<long double>(d.measure(i)) * d.measure(j) * d.value(i, j);
  return static_cast<double>(sum);
}

double cut_norm_upper_bound(const SignedStepfunction& d) {
  long double pos = 0, neg = 0;
  const std::size_t k = d.parts();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const long double x = static_cast<long double>(d.measure(i)) * d.measure(j) * d.value(i, j);
      (x > 0 ? pos : neg) += x;
    }
  }
  return static_cast<double>(std::max(pos, -neg));
}

namespace {

std::vector<std::size_t> members(std::uint64_t mask, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < k; ++i)
    if ((mask >> i) & 1U) out.push_back(i);
  return out;
}

}  // namespace

CutNormResult cut_norm_exact(const SignedStepfunction& d) {
  const std::size_t k = d.parts();
  require(k <= 30, ErrorCode::unsupported, "exact cut norm supports at most 30 parts");
  // a[i][j] = m_i m_j D_ij; col[j] = sum over i in S of a[i][j].
  std::vector<double> a(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i * k + j] = d.measure(i) * d.measure(j) * d.value(i, j);
  std::vector<double> col(k, 0.0);
  double best = 0;
  std::uint64_t best_s = 0;
  bool best_positive = true;
  std::uint64_t gray = 0;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::size_t flip = std::countr_zero(step);
    const bool adding = !((gray >> flip) & 1U);
    gray ^= std::uint64_t{1} << flip;
    const double* row = &a[flip * k];
    if (adding) {
      for (std::size_t j = 0; j < k; ++j) col[j] += row[j];
    } else {
      for (std::size_t j = 0; j < k; ++j) col[j] -= row[j];
    }
    double pos = 0, neg = 0;
    for (std::size_t j = 0; j < k; ++j) (col[j] > 0 ? pos : neg) += col[j];
    if (pos > best) {
      best = pos;
      best_s = gray;
      best_positive = true;
    }
    if (-neg > best) {
      best = -neg;
      best_s = gray;
      best_positive = false;
    }
  }
  CutNormResult r;
  r.exact = true;
  r.witness_s = members(best_s, k);
  // Recompute T and the value from scratch so the witness is self-consistent.
  for (std::size_t j = 0; j < k; ++j) {
    double c = 0;
    for (std::size_t i : r.witness_s) c += a[i * k + j];
    if (best_positive ? c > 0 : c < 0) r.witness_t.push_back(j);
  }
  r.value = std::abs(rectangle_integral(d, r.witness_s, r.witness_t));
  return r;
}

CutNormResult cut_norm_heuristic(const SignedStepfunction& d, std::size_t restarts, const SeedSpec& seed) {
  const std::size_t k = d.parts();
  std::vector<double> a(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i * k + j] = d.measure(i) * d.measure(j) * d.value(i, j);

  CutNormResult best;
  best.exact = false;
  std::vector<char> s(k), t(k);
  std::vector<double> acc(k);
  for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
    for (double sign : {1.0, -1.0}) {
      Stream rng(seed.child(r).child(sign > 0 ? 0 : 1));
      for (std::size_t i = 0; i < k; ++i) s[i] = rng.uniform() < 0.5;
      double value = -1;
      for (std::size_t iter = 0; iter < 100; ++iter) {
        // Best T for S, then best S for T (a is symmetric).
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t i = 0; i < k; ++i)
          if (s[i])
            for (std::size_t j = 0; j < k; ++j) acc[j] += a[i * k + j];
        for (std::size_t j = 0; j < k; ++j) t[j] = sign * acc[j] > 0;
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t j = 0; j < k; ++j)
          if (t[j])
            for (std::size_t i = 0; i < k; ++i) acc[i] += a[j * k + i];
        double next = 0;
        for (std::size_t i = 0; i < k; ++i) {
          s[i] = sign * acc[i] > 0;
          if (s[i]) next += sign * acc[i];
        }
        if (next <= value + 1e-15) break;
        value = next;
      }
      if (value > best.value) {
        best.witness_s.clear();
        best.witness_t.clear();
        for (std::size_t i = 0; i < k; ++i) {
          if (s[i]) best.witness_s.push_back(i);
          if (t[i]) best.witness_t.push_back(i);
        }
        best.value = std::abs(rectangle_integral(d, best.witness_s, best.witness_t));
      }
    }
  }
  return best;
}

CutNormResult cut_norm(const SignedStepfunction& d, const MetricConfig& cfg) {
  if (d.parts() <= cfg.exact_cap) return cut_norm_exact(d);
  return cut_norm_heuristic(d, cfg.heuristic_restarts, SeedSpec(cfg.seed, {0x6375746eULL}));
}

double graph_l1_distance(const SimpleGraph& g, const SimpleGraph& h) {
  require(g.node_count() == h.node_count(), ErrorCode::invalid_argument,
          "graph l1 distance needs graphs on the same node set");
  const std::size_t n = g.node_count();
  std::uint64_t diff = 0;
  for (std::size_t u = 0; u < n; ++u) {
    auto a = g.row(u);
    auto b = h.row(u);
    for (std::size_t w = 0; w < a.size(); ++w) diff += std::popcount(a[w] ^ b[w]);
  }
  // diff counts ordered pairs.
  return static_cast<double>(diff) / (static_cast<double>(n) * static_cast<double>(n));
}

double graph_cut_distance(const SimpleGraph& g, const SimpleGraph& h, const MetricConfig& cfg) {
  require(g.node_count() == h.node_count(), ErrorCode::invalid_argument,
          "graph cut distance needs graphs on the same node set");
  return cut_norm(embed_graph(g) - embed_graph(h), cfg).value;
}

Stepfunction permute_parts(const Stepfunction& w, const std::vector<std::size_t>& perm) {
  const std::size_t k = w.parts();
  require(perm.size() == k, ErrorCode::invalid_argument, "permutation size mismatch");
  std::vector<double> m(k), v(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    m[i] = w.measure(perm[i]);
    for (std::size_t j = 0; j < k; ++j) v[i * k + j] = w.value(perm[i], perm[j]);
  }
  return Stepfunction(std::move(m), std::move(v));
}

namespace {

std::pair<double, SimpleGraph> lower_from_subjects(Subject a, Subject b, std::size_t max_nodes) {
  double best = 0;
  SimpleGraph arg(1);
  for (const SimpleGraph& f : motifs_without_isolated(max_nodes)) {
    const double gap =
        std::abs(homomorphism_density(f, a).value - homomorphism_density(f, b).value) / static_cast<double>(f.edge_count());
    if (gap > best) {
      best = gap;
      arg = f;
    }
  }
  return {best, arg};
}

std::string motif_label(const SimpleGraph& f, double gap) {
  if (gap == 0) return "none";
  std::string s = std::to_string(f.node_count()) + ":";
  bool first = true;
  for (const Edge& e : f.edges()) {
    if (!first) s += ",";
    s += std::to_string(e.u) + "-" + std::to_string(e.v);
    first = false;
  }
  return s;
}

double aligned_distance(const Stepfunction& a, const Stepfunction& b, Metric metric, const MetricConfig& cfg) {
  if (metric == Metric::l1) return l1_distance(a, b);
  SignedStepfunction d = a - b;
  if (d.parts() <= cfg.exact_cap) return cut_norm_exact(d).value;
  return std::min(cut_norm_upper_bound(d), d.l1_norm());
}

bool l1_compatible(const Stepfunction& a, const Stepfunction& b) {
  if (a.has_equal_parts() && b.has_equal_parts()) return true;
  if (a.parts() != b.parts()) return false;
  for (std::size_t i = 0; i < a.parts(); ++i)
    if (std::abs(a.measure(i) - b.measure(i)) > 1e-12) return false;
  return true;
}

DistanceInterval search_alignments(const Stepfunction& a, const Stepfunction& b, Metric metric,
                                   const MetricConfig& cfg) {
  const std::size_t k = b.parts();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  DistanceInterval out;
  out.upper = aligned_distance(a, b, metric, cfg);
  out.upper_witness = perm;
  if (k <= cfg.exhaustive_parts) {
    while (std::next_permutation(perm.begin(), perm.end()) && out.upper > 0) {
      const double d = aligned_distance(a, permute_parts(b, perm), metric, cfg);
      if (d < out.upper) {
        out.upper = d;
        out.upper_witness = perm;
      }
    }
    return out;
  }
  // Simulated annealing over swaps, geometric cooling, restart 0 from the
  // identity alignment.
  for (std::size_t r = 0; r < cfg.anneal_restarts && out.upper > 0; ++r) {
    Stream rng(SeedSpec(cfg.seed, {0x616e6e6cULL, r}));
    std::vector<std::size_t> cur(k);
    std::iota(cur.begin(), cur.end(), 0);
    if (r > 0)
      for (std::size_t i = k - 1; i > 0; --i) std::swap(cur[i], cur[rng.below(i + 1)]);
    double cur_d = aligned_distance(a, permute_parts(b, cur), metric, cfg);
    double temp = cfg.anneal_t0;
    for (std::size_t step = 0; step < cfg.anneal_steps; ++step, temp *= cfg.anneal_cooling) {
      const std::size_t i = rng.below(k);
      std::size_t j = rng.below(k - 1);
      if (j >= i) ++j;
      std::swap(cur[i], cur[j]);
      const double cand = aligned_distance(a, permute_parts(b, cur), metric, cfg);
      const double u = rng.uniform();
      if (cand <= cur_d || (temp > 0 && u < std::exp((cur_d - cand) / temp))) {
        cur_d = cand;
        if (cur_d < out.upper) {
          out.upper = cur_d;
          out.upper_witness = cur;
        }
      } else {
        std::swap(cur[i], cur[j]);
      }
    }
  }
  return out;
}

DistanceInterval finish(DistanceInterval out, std::pair<double, SimpleGraph> lower) {
  out.lower = lower.first;
  // Both ends are exact sums of cell terms; only rounding can invert them.
  if (out.lower > out.upper && out.lower - out.upper < 1e-12) out.lower = out.upper;
  out.lower_witness = motif_label(lower.second, lower.first);
  return out;
}

}  // namespace

std::pair<double, SimpleGraph> motif_lower_bound(const Stepfunction& a, const Stepfunction& b, std::size_t max_nodes) {
  return lower_from_subjects(&a, &b, max_nodes);
}

DistanceInterval delta_distance(const Stepfunction& a, const Stepfunction& b, Metric metric, const MetricConfig& cfg) {
  if (metric == Metric::l1)
    require(l1_compatible(a, b), ErrorCode::invalid_argument,
            "incompatible part structures for l1: need equal-measure parts or identical part measures");
  return finish(search_alignments(a, b, metric, cfg), lower_from_subjects(&a, &b, 4));
}

DistanceInterval delta_distance(const SimpleGraph& a, const SimpleGraph& b, Metric metric, const MetricConfig& cfg) {
  const Stepfunction wa = embed_graph(a);
  const Stepfunction wb = embed_graph(b);
  return finish(search_alignments(wa, wb, metric, cfg), lower_from_subjects(&a, &b, 4));
}

LeftCloseReport left_close_check(const Stepfunction& u, const Stepfunction& w, std::size_t k) {
  require(k >= 2 && k <= 4, ErrorCode::out_of_range, "left_close_check supports k in {2,3,4}");
  LeftCloseReport r;
  r.k = k;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << pair_count(k)); ++code) {
    const SimpleGraph f = graph_from_code(k, code);
    const double gap = std::abs(homomorphism_density(f, u).value - homomorphism_density(f, w).value);
    if (gap > r.max_gap) {
      r.max_gap = gap;
      r.worst_code = code;
    }
  }
  r.threshold = std::pow(3.0, -static_cast<double>(k * k));
  r.hypothesis_holds = r.max_gap <= r.threshold;
  r.implied_bound = 22.0 / std::sqrt(std::log2(static_cast<double>(k)));
  r.bound_vacuous = r.implied_bound > 1.0;
  return r;
}

}  // namespace graphlim
