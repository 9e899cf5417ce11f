#include "graphlim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "graphlim/density.hpp"
#include "graphlim/error.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/metrics.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/sampling.hpp"
#include "graphlim/stepfunction.hpp"
#include "graphlim/testing.hpp"

namespace graphlim {

namespace {

constexpr double kRounding = 1e-12;

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double binom2(std::size_t k) { return static_cast<double>(k * (k - 1) / 2); }

double mean_of(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Standard error of the mean.
double stderr_of(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0;
  const double m = mean_of(xs);
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
}

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// Pointwise product on the common refinement.
Stepfunction product(const Stepfunction& a, const Stepfunction& b) {
  Refinement r = common_refinement(a.measures(), b.measures());
  auto va = pulled_back(a, r, true);
  const auto vb = pulled_back(b, r, false);
  for (std::size_t i = 0; i < va.size(); ++i) va[i] *= vb[i];
  return Stepfunction(std::move(r.measures), std::move(va));
}

// Sets every cell meeting [0,a]^2 to 1, giving a member of corner_one(a).
Stepfunction with_corner_one(const Stepfunction& w, double a) {
  const std::size_t k = w.parts();
  std::vector<bool> meets(k);
  double start = 0;
  for (std::size_t i = 0; i < k; ++i) {
    meets[i] = start < a;
    start += w.measure(i);
  }
  std::vector<double> v(w.values().begin(), w.values().end());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (meets[i] && meets[j]) v[i * k + j] = 1.0;
  return Stepfunction({w.measures().begin(), w.measures().end()}, std::move(v));
}

// Reads "experiment.parameter" overrides and echoes every value used.
class Params {
 public:
  Params(std::string experiment, const Config& cfg) : exp_(std::move(experiment)), cfg_(cfg) {}

  double real(const std::string& key, double def) {
    const double v = lookup(key, def);
    echo_.emplace_back(key, v);
    return v;
  }

  std::size_t count(const std::string& key, std::size_t def) {
    const double v = lookup(key, static_cast<double>(def));
    require(v >= 0 && v == std::floor(v) && v < 1e12, ErrorCode::invalid_argument,
            "parameter " + exp_ + "." + key + " must be a non-negative integer");
    echo_.emplace_back(key, v);
    return static_cast<std::size_t>(v);
  }

  // The experiment's main repetition count: an explicit override wins,
  // then the global trial count, then the default.
  std::size_t trials(std::size_t def) {
    return count("trials", cfg_.trials != 0 ? cfg_.trials : def);
  }

  void check_consumed() const {
    const std::string prefix = exp_ + ".";
    for (const auto& [key, v] : cfg_.overrides) {
      if (key.compare(0, prefix.size(), prefix) != 0) continue;
      require(used_.count(key.substr(prefix.size())) > 0, ErrorCode::invalid_argument,
              "experiment " + exp_ + " has no parameter '" + key.substr(prefix.size()) + "'");
    }
  }

  std::vector<std::pair<std::string, double>> echo() const { return echo_; }

 private:
  double lookup(const std::string& key, double def) {
    used_.insert(key);
    auto it = cfg_.overrides.find(exp_ + "." + key);
    return it == cfg_.overrides.end() ? def : it->second;
  }

  std::string exp_;
  const Config& cfg_;
  std::set<std::string> used_;
  std::vector<std::pair<std::string, double>> echo_;
};

struct Ctx {
  const Config& cfg;
  SeedSpec seed;
  Params params;
  ExperimentReport& report;

  void check(const std::string& description, double measured, const std::string& rel, double bound,
             const std::string& reference) {
    bool ok = false;
    if (rel == "<=") ok = measured <= bound;
    else if (rel == "<") ok = measured < bound;
    else if (rel == ">=") ok = measured >= bound;
    else if (rel == ">") ok = measured > bound;
    else if (rel == "==") ok = measured == bound;
    report.assertions.push_back({description, measured, rel, bound, ok, reference});
  }

  void record(const std::string& name, double value, const std::string& note = "") {
    report.records.push_back({name, value, note});
  }

  MetricConfig metric(std::uint64_t stream) const {
    MetricConfig m = cfg.metric;
    m.seed = seed.child(0xc0de).child(stream).key();
    return m;
  }
};

// ---------------------------------------------------------------------------

void tind_bound(Ctx& c) {
  const std::size_t pairs = c.params.trials(100);
  const std::size_t n_min = c.params.count("n_min", 10);
  const std::size_t n_max = c.params.count("n_max", 14);
  const std::size_t k_max = c.params.count("k_max", 4);
  require(k_max >= 2 && k_max <= 5 && n_min <= n_max && binom2(k_max) < static_cast<double>(n_min),
          ErrorCode::invalid_argument, "tind_bound needs 2 <= k_max <= 5 and n_min > C(k_max, 2)");

  struct Out {
    double dev_ind, bound, dev_hom;
  };
  std::vector<Out> out(pairs);
  parallel_for(pairs, [&](std::size_t t) {
    const SeedSpec s = c.seed.child(t);
    Stream rng(s);
    const std::size_t k = 2 + rng.below(k_max - 1);
    const SimpleGraph f = graph_from_code(k, rng.below(std::uint64_t{1} << pair_count(k)));
    const std::size_t n = n_min + rng.below(n_max - n_min + 1);
    const double p = rng.uniform();
    const SimpleGraph g = sample_w_random(Stepfunction::constant(p), n, s.child(1));
    const Stepfunction wg = embed_graph(g);
    const double ind_g = induced_density(f, g, c.cfg.caps).value;
    const double ind_w = induced_density(f, wg, c.cfg.caps).value;
    const double hom_g = homomorphism_density(f, g, c.cfg.caps).value;
    const double hom_w = homomorphism_density(f, wg, c.cfg.caps).value;
    out[t] = {std::abs(ind_g - ind_w), binom2(k) / (static_cast<double>(n) - binom2(k)), std::abs(hom_g - hom_w)};
  });
  std::size_t violations = 0;
  double worst_ratio = 0, worst_dev = 0, worst_hom = 0;
  for (const Out& o : out) {
    if (o.dev_ind > o.bound) ++violations;
    worst_ratio = std::max(worst_ratio, o.dev_ind / o.bound);
    worst_dev = std::max(worst_dev, o.dev_ind);
    worst_hom = std::max(worst_hom, o.dev_hom);
  }
  const std::string ref = "induced density of G vs W_G: C(k,2)/(n - C(k,2))";
  c.check("pairs violating the induced-density bound", static_cast<double>(violations), "==", 0, ref);
  c.check("max deviation / bound", worst_ratio, "<=", 1, ref);
  c.check("max |t(F,G) - t(F,W_G)|", worst_hom, "<=", kRounding, "t(F,G) = t(F,W_G)");
  c.record("max induced deviation", worst_dev);
}

void counting_lemma(Ctx& c) {
  const std::size_t pairs = c.params.trials(100);
  const std::size_t k_max = c.params.count("k_max", 6);
  const std::size_t f_max = c.params.count("motif_nodes", 4);
  require(k_max >= 1 && 2 * k_max <= c.cfg.metric.exact_cap + 1 && f_max >= 2 && f_max <= 4,
          ErrorCode::invalid_argument, "counting_lemma needs refinements within the exact cut cap and motifs of 2..4 nodes");

  std::vector<SimpleGraph> motifs;
  for (std::size_t k = 2; k <= f_max; ++k)
    for (auto& g : all_labeled_graphs(k)) motifs.push_back(g);

  struct Out {
    double excess_hom = -1, excess_ind = -1, ratio = 0, cut = 0;
    bool exact = true;
  };
  std::vector<Out> out(pairs);
  parallel_for(pairs, [&](std::size_t t) {
    Stream rng(c.seed.child(t));
    const Stepfunction u = random_stepfunction(rng, 1 + rng.below(k_max));
    const Stepfunction other = random_stepfunction(rng, 1 + rng.below(k_max));
    // Odd trials are near pairs so that the bound is tested where it is tight.
    const double alpha = t % 2 ? std::pow(10.0, -1.0 - 3.0 * rng.uniform()) : 1.0;
    const Stepfunction w = t % 2 ? mix(other, u, alpha) : other;
    const CutNormResult cut = cut_norm_exact(u - w);
    Out o;
    o.cut = cut.value;
    o.exact = cut.exact;
    for (const SimpleGraph& f : motifs) {
      const double m = static_cast<double>(f.edge_count());
      const double dh = std::abs(homomorphism_density(f, u, c.cfg.caps).value -
                                 homomorphism_density(f, w, c.cfg.caps).value);
      const double di =
          std::abs(induced_density(f, u, c.cfg.caps).value - induced_density(f, w, c.cfg.caps).value);
      o.excess_hom = std::max(o.excess_hom, dh - m * cut.value);
      o.excess_ind = std::max(o.excess_ind, di - binom2(f.node_count()) * cut.value);
      if (m > 0 && cut.value > 0) o.ratio = std::max(o.ratio, dh / (m * cut.value));
    }
    out[t] = o;
  });
  double eh = -1, ei = -1, ratio = 0;
  std::size_t inexact = 0;
  for (const Out& o : out) {
    eh = std::max(eh, o.excess_hom);
    ei = std::max(ei, o.excess_ind);
    ratio = std::max(ratio, o.ratio);
    inexact += !o.exact;
  }
  c.check("cut norms computed exactly (pairs not exact)", static_cast<double>(inexact), "==", 0, "exact cut norm");
  c.check("max of |t(F,U)-t(F,W)| - e(F) ||U-W||_box", eh, "<=", kRounding,
          "counting lemma: |t(F,U)-t(F,W)| <= e(F) ||U-W||_box");
  c.check("max of |t_ind(F,U)-t_ind(F,W)| - C(k,2) ||U-W||_box", ei, "<=", kRounding,
          "induced counting lemma: C(k,2) ||U-W||_box");
  c.record("max |t(F,U)-t(F,W)| / (e(F) ||U-W||_box)", ratio, "tightness of the homomorphism bound");
}

void graph_counting_lemma(Ctx& c) {
  const std::size_t pairs = c.params.trials(100);
  const std::size_t n_min = c.params.count("n_min", 10);
  const std::size_t n_max = c.params.count("n_max", 14);
  const std::size_t k_max = c.params.count("k_max", 3);
  require(k_max >= 2 && k_max <= 4 && n_min <= n_max && n_max <= c.cfg.metric.exact_cap &&
              binom2(k_max) < static_cast<double>(n_min),
          ErrorCode::invalid_argument, "graph_counting_lemma needs n_min > C(k_max,2) and n_max within the exact cap");

  struct Out {
    double excess = -1, additive_max = 0, delta = 0;
  };
  std::vector<Out> out(pairs);
  parallel_for(pairs, [&](std::size_t t) {
    const SeedSpec s = c.seed.child(t);
    Stream rng(s);
    const std::size_t ng = n_min + rng.below(n_max - n_min + 1);
    const SimpleGraph g = sample_w_random(Stepfunction::constant(rng.uniform()), ng, s.child(1));
    SimpleGraph h(ng);
    double delta_upper = 0;
    if (t % 2) {
      // A relabeled copy of G with a few toggled pairs; the planted
      // relabeling is a known alignment.
      std::vector<std::size_t> perm(ng);
      std::iota(perm.begin(), perm.end(), 0);
      for (std::size_t i = ng; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
      h = g.relabeled(perm);
      const std::size_t toggles = rng.below(4);
      for (std::size_t e = 0; e < toggles; ++e) {
        const std::size_t a = rng.below(ng), b = rng.below(ng);
        if (a != b) h.toggle_edge(a, b);
      }
      std::vector<std::size_t> inverse(ng);
      for (std::size_t i = 0; i < ng; ++i) inverse[perm[i]] = i;
      const double planted = cut_norm_exact(embed_graph(g) - embed_graph(h.relabeled(inverse))).value;
      delta_upper = std::min(planted, cut_norm_exact(embed_graph(g) - embed_graph(h)).value);
    } else {
      h = sample_w_random(Stepfunction::constant(rng.uniform()), ng, s.child(2));
      delta_upper = cut_norm_exact(embed_graph(g) - embed_graph(h)).value;
    }
    Out o;
    o.delta = delta_upper;
    for (std::size_t k = 2; k <= k_max; ++k) {
      const double ck = binom2(k);
      const double additive = 2 * ck / (static_cast<double>(ng) - ck);
      o.additive_max = std::max(o.additive_max, additive);
      for (const SimpleGraph& f : all_labeled_graphs(k)) {
        const double d = std::abs(induced_density(f, g, c.cfg.caps).value - induced_density(f, h, c.cfg.caps).value);
        o.excess = std::max(o.excess, d - (ck * delta_upper + additive));
      }
    }
    out[t] = o;
  });
  double excess = -1, additive = 0, delta = 0;
  for (const Out& o : out) {
    excess = std::max(excess, o.excess);
    additive = std::max(additive, o.additive_max);
    delta = std::max(delta, o.delta);
  }
  c.check("max of |t_ind(F,H)-t_ind(F,G)| - (C(k,2) delta_box + additive terms)", excess, "<=", kRounding,
          "graph induced counting lemma with two C(k,2)/(n - C(k,2)) terms");
  c.check("largest additive term sum (bound stays below 1)", additive, "<", 1, "non-vacuous at this scale");
  c.record("largest delta_box upper end", delta, "min of the identity and planted alignments, exact cut norm");
}

void concentration(Ctx& c) {
  const std::size_t trials = c.params.trials(200);
  const std::size_t n = c.params.count("n", 10000);
  const double eps = c.params.real("eps", 0.1);
  const double p = c.params.real("p", 0.5);
  require(n >= 2 && eps > 0 && eps < 1 && p >= 0 && p <= 1, ErrorCode::invalid_argument,
          "concentration needs n >= 2, eps in (0,1), p in [0,1]");
  const double k = 2;  // F = K2
  const double bound = 2 * std::exp(-eps * eps / (18 * k * k) * static_cast<double>(n));
  const Stepfunction w = Stepfunction::constant(p);
  std::vector<double> dev(trials);
  parallel_for(trials, [&](std::size_t t) {
    const double edges = static_cast<double>(w_random_edge_count(w, n, c.seed.child(t)));
    dev[t] = std::abs(2 * edges / (static_cast<double>(n) * static_cast<double>(n)) - p);
  });
  const double exceed =
      static_cast<double>(std::count_if(dev.begin(), dev.end(), [&](double d) { return d > eps; })) /
      static_cast<double>(trials);
  const std::string ref = "P(|t(F,G(n,W)) - t(F,W)| > eps) <= 2 exp(-eps^2 n / (18 k^2))";
  if (bound < 1) {
    c.check("bound below 1 at this scale", bound, "<", 1, ref);
    c.check("exceedance frequency for F = K2", exceed, "<=", bound, ref);
  } else {
    c.record("concentration bound", bound, "vacuous-at-scale");
  }
  c.record("max |t(K2,G) - p|", *std::max_element(dev.begin(), dev.end()));
}

void gprime_mean(Ctx& c) {
  const std::size_t trials = c.params.trials(200);
  const std::size_t n = c.params.count("n", 256);
  const std::size_t parts = c.params.count("parts", 4);
  require(n >= 2 && trials >= 2 && parts >= 1, ErrorCode::invalid_argument, "gprime_mean needs n >= 2 and trials >= 2");
  Stream rng(c.seed.child(0));
  const Stepfunction w = random_stepfunction(rng, parts);
  const SimpleGraph h = sample_w_random(Stepfunction::constant(rng.uniform()), n, c.seed.child(1));
  const double l1_hw = l1_distance(embed_graph(h), w);
  // The pairs i = j never contribute to d1(G', H), but W's mass on the
  // diagonal squares does count in ||W_H - W||_1.
  const Stepfunction avg = step_average(w, Partition::equal(n));
  double diag = 0;
  for (std::size_t i = 0; i < n; ++i) diag += avg.value(i, i) * avg.measure(i) * avg.measure(i);
  const double expected = l1_hw - diag;

  std::vector<double> d1(trials), l1_gw(trials);
  parallel_for(trials, [&](std::size_t t) {
    const SimpleGraph g = sample_w_random_ordered(w, n, c.seed.child(2).child(t));
    d1[t] = graph_l1_distance(g, h);
    l1_gw[t] = l1_distance(embed_graph(g), w);
  });
  const double m = mean_of(d1), se = stderr_of(d1);
  const double sigma = c.cfg.sigma_margin;
  const std::string ref = "E d1(G', H) = ||W_H - W||_1 for G' = G'(n,W), H on [n]";
  c.check("|mean d1(G',H) - (||W_H - W||_1 - diagonal mass)| in standard errors", se > 0 ? std::abs(m - expected) / se : 0,
          "<=", sigma, ref);
  c.check("mean ||W_G' - W||_1 vs 2 ||W_H - W||_1 plus the sigma margin", mean_of(l1_gw), "<=",
          2 * l1_hw + sigma * stderr_of(l1_gw), "E ||W_G' - W||_1 <= 2 ||W_H - W||_1");
  c.record("||W_H - W||_1", l1_hw);
  c.record("diagonal mass of W on the n x n grid", diag, "omitted pairs i = j");
  c.record("mean d1(G',H)", m);
  c.record("literal gap |mean - ||W_H - W||_1| in standard errors", se > 0 ? std::abs(m - l1_hw) / se : 0,
           "identity read without the diagonal correction");
}

void squareclose(Ctx& c) {
  const std::size_t seeds = c.params.trials(32);
  const std::size_t n = c.params.count("n", 256);
  const std::size_t parts = c.params.count("parts", 4);
  const std::size_t decay_seeds = c.params.count("decay_seeds", 5);
  require(n >= 3 && seeds >= 1 && decay_seeds >= 1 && parts >= 1, ErrorCode::invalid_argument,
          "squareclose needs n >= 3 and at least one seed");
  Stream rng(c.seed.child(0));
  const Stepfunction u = random_stepfunction(rng, parts);
  const SimpleGraph g = sample_w_random_ordered(u, n, c.seed.child(1));
  const double base = l1_distance(embed_graph(g), u);
  std::vector<double> ratio(seeds);
  parallel_for(seeds, [&](std::size_t s) {
    const SimpleGraph gp = sample_w_random_ordered(u, n, c.seed.child(2).child(s));
    ratio[s] = l1_distance(embed_graph(gp), u) / base;
  });
  c.check("min over seeds of ||W_G' - U||_1 / ||W_G - U||_1", *std::min_element(ratio.begin(), ratio.end()), "<=", 4,
          "some G' has ||W_G' - U||_1 <= 4 ||W_G - U||_1");
  const double loglog = std::log(std::log(static_cast<double>(n)));
  c.record("cut bound 50/sqrt(log log n)", 50 / std::sqrt(loglog), "vacuous-at-scale");

  const std::vector<std::size_t> scales{64, 256, 1024};
  std::vector<double> med;
  for (std::size_t si = 0; si < scales.size(); ++si) {
    std::vector<double> cuts(decay_seeds);
    parallel_for(decay_seeds, [&](std::size_t s) {
      const SimpleGraph gp = sample_w_random_ordered(u, scales[si], c.seed.child(3).child(si).child(s));
      cuts[s] = cut_norm_heuristic(embed_graph(gp) - u, c.cfg.metric.heuristic_restarts,
                                   c.seed.child(4).child(si).child(s))
                    .value;
    });
    med.push_back(median_of(cuts));
    c.record("median heuristic ||W_G' - U||_box at n=" + std::to_string(scales[si]), med.back(), "lower bound");
  }
  for (std::size_t i = 1; i < med.size(); ++i)
    c.check("median cut estimate at n=" + std::to_string(scales[i]) + " vs n=" + std::to_string(scales[i - 1]), med[i],
            "<", med[i - 1], "cut distance of G'(n,U) to U decays");
}

void quasirandom_gap(Ctx& c) {
  const std::size_t n = c.params.count("n", 512);
  const std::size_t small_n = c.params.count("small_n", 16);
  const std::size_t small_seeds = c.params.count("small_seeds", 8);
  const std::size_t members = c.params.trials(100);
  require(n >= 3 && small_n >= 2 && small_n <= c.cfg.metric.exact_cap && small_seeds >= 1 && members >= 1,
          ErrorCode::invalid_argument, "quasirandom_gap needs small_n within the exact cap");
  const Stepfunction half = Stepfunction::constant(0.5);
  const SimpleGraph g = sample_w_random(half, n, c.seed.child(0));
  const double l1 = l1_distance(embed_graph(g), half);
  c.check("|  ||W_G - 1/2||_1 - 1/2  |", std::abs(l1 - 0.5), "<=", kRounding, "||W_Gn - 1/2||_1 = 1/2 for every n");
  c.record("||W_G - 1/2||_1", l1);

  std::vector<double> small(small_seeds);
  parallel_for(small_seeds, [&](std::size_t s) {
    small[s] = cut_norm_exact(embed_graph(sample_w_random(half, small_n, c.seed.child(1).child(s))) - half).value;
  });
  const double big = cut_norm_heuristic(embed_graph(g) - half, c.cfg.metric.heuristic_restarts, c.seed.child(2)).value;
  c.check("mean exact ||W_G - 1/2||_box at small n minus heuristic at large n", mean_of(small) - big, ">", 0,
          "||W_Gn - 1/2||_box -> 0");
  c.record("mean exact cut at n=" + std::to_string(small_n), mean_of(small));
  c.record("heuristic cut at n=" + std::to_string(n), big, "lower bound");

  const PropertySpec qr = quasirandom_property(LogThreshold{c.cfg.log_base});
  std::vector<char> in(members);
  parallel_for(members, [&](std::size_t s) { in[s] = qr.graph_member(sample_w_random(half, n, c.seed.child(3).child(s))); });
  const double frac = static_cast<double>(std::count(in.begin(), in.end(), 1)) / static_cast<double>(members);
  c.check("fraction of G(n,1/2) samples in the quasirandom property", frac, ">=", 0.95,
          "|t(K2,G) - 1/2| <= 1/log n and t(C4,G) <= 1/16 + 1/log n");
}

// U with values in [0.2, 1], Z uniform on U's parts, W = Z U.
// U_n = W_G' for G' = G'(n, U), W_n = Z U_n.
struct RevConv {
  Stepfunction u, z, w;
};

RevConv revconv_setup(const SeedSpec& seed, std::size_t parts) {
  Stream rng(seed);
  const Stepfunction base = random_stepfunction(rng, parts);
  std::vector<double> uv(base.values().begin(), base.values().end());
  for (double& x : uv) x = 0.2 + 0.8 * x;
  Stepfunction u({base.measures().begin(), base.measures().end()}, std::move(uv));
  std::vector<double> zv(parts * parts);
  for (std::size_t i = 0; i < parts; ++i)
    for (std::size_t j = i; j < parts; ++j) zv[i * parts + j] = zv[j * parts + i] = rng.uniform();
  Stepfunction z({base.measures().begin(), base.measures().end()}, std::move(zv));
  Stepfunction w = product(z, u);
  return {std::move(u), std::move(z), std::move(w)};
}

// ||U_n - W_n||_1 per seed at each scale.
std::vector<std::vector<double>> revconv_sequence(const RevConv& r, const std::vector<std::size_t>& scales,
                                                  std::size_t seeds, const SeedSpec& seed) {
  std::vector<std::vector<double>> out(scales.size(), std::vector<double>(seeds));
  parallel_for(scales.size() * seeds, [&](std::size_t idx) {
    const std::size_t si = idx / seeds, s = idx % seeds;
    const Stepfunction un = embed_graph(sample_w_random_ordered(r.u, scales[si], seed.child(si).child(s)));
    out[si][s] = l1_distance(un, product(r.z, un));
  });
  return out;
}

void revconv1(Ctx& c) {
  const std::size_t seeds = c.params.trials(10);
  const std::size_t parts = c.params.count("parts", 3);
  require(seeds >= 2 && parts >= 1, ErrorCode::invalid_argument, "revconv1 needs at least two seeds");
  const std::vector<std::size_t> scales{32, 128, 512};
  const RevConv r = revconv_setup(c.seed.child(0), parts);
  const double target = l1_distance(r.u, r.w);
  const auto seq = revconv_sequence(r, scales, seeds, c.seed.child(1));
  std::vector<double> gap_mean;
  for (std::size_t si = 0; si < scales.size(); ++si) {
    std::vector<double> gaps;
    for (double x : seq[si]) gaps.push_back(std::abs(x - target));
    gap_mean.push_back(mean_of(gaps));
    c.record("mean | ||U_n - W_n||_1 - ||U - W||_1 | at n=" + std::to_string(scales[si]), gap_mean.back(),
             "standard error " + format_double(stderr_of(gaps)));
  }
  c.record("||U - W||_1", target);
  for (std::size_t i = 1; i < scales.size(); ++i)
    c.check("mean gap at n=" + std::to_string(scales[i]) + " vs n=" + std::to_string(scales[i - 1]), gap_mean[i], "<",
            gap_mean[i - 1], "W_n = Z U_n gives ||U_n - W_n||_1 -> ||U - W||_1");
}

void semicontinuity(Ctx& c) {
  const std::size_t seeds = c.params.trials(10);
  const std::size_t parts = c.params.count("parts", 3);
  require(seeds >= 1 && parts >= 1, ErrorCode::invalid_argument, "semicontinuity needs at least one seed");
  const std::vector<std::size_t> scales{32, 128, 512};
  const RevConv r = revconv_setup(c.seed.child(0), parts);
  const double target = l1_distance(r.u, r.w);
  const auto seq = revconv_sequence(r, scales, seeds, c.seed.child(1));
  double liminf = 1;
  for (std::size_t si = 0; si < scales.size(); ++si) {
    const double m = mean_of(seq[si]);
    c.record("mean ||U_n - W_n||_1 at n=" + std::to_string(scales[si]), m);
    if (scales[si] >= 128) liminf = std::min(liminf, m);
  }
  c.check("min over n >= 128 of mean ||W_n - U_n||_1", liminf, ">=", target - c.cfg.liminf_tolerance,
          "liminf ||W_n - U_n||_1 >= ||W - U||_1");
  // The inequality can be strict: G(n,1/2) converges to 1/2 in cut norm
  // but stays at L1 distance 1/2 from it.
  const Stepfunction half = Stepfunction::constant(0.5);
  c.record("||W_G(128,1/2) - 1/2||_1", l1_distance(embed_graph(sample_w_random(half, 128, c.seed.child(2))), half),
           "limit distance is 0; strict inequality");
}

void flex_convexity(Ctx& c) {
  const std::size_t triples = c.params.trials(200);
  const std::size_t k_max = c.params.count("k_max", 6);
  const double a = c.params.real("corner", 0.5);
  require(k_max >= 1 && a > 0 && a <= 1, ErrorCode::invalid_argument, "flex_convexity needs k_max >= 1, corner in (0,1]");
  const PropertySpec r = corner_one_property(a);

  // A random stepfunction with some cells pinned to 0 or 1, and a third of
  // the time placed inside the property.
  auto draw = [&](Stream& rng) {
    Stepfunction w = random_stepfunction(rng, 1 + rng.below(k_max));
    const std::size_t k = w.parts();
    std::vector<double> v(w.values().begin(), w.values().end());
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i; j < k; ++j) {
        const double roll = rng.uniform();
        if (roll < 0.15) v[i * k + j] = v[j * k + i] = 0.0;
        else if (roll < 0.3) v[i * k + j] = v[j * k + i] = 1.0;
      }
    Stepfunction out({w.measures().begin(), w.measures().end()}, std::move(v));
    return rng.below(3) == 0 ? with_corner_one(out, a) : out;
  };

  struct Out {
    bool flex_u = true, flex_w = true, convex_ok = true, nonmember_pair = false;
    double concave_excess = 0;
  };
  std::vector<Out> out(triples);
  parallel_for(triples, [&](std::size_t t) {
    Stream rng(c.seed.child(t));
    const Stepfunction u = draw(rng), w = draw(rng);
    double alpha = rng.uniform();
    while (alpha == 0.0) alpha = rng.uniform();
    const Stepfunction z = mix(u, w, alpha);
    Out o;
    o.flex_u = is_flexing(u, z);
    o.flex_w = is_flexing(w, z);
    if (!r.graphon_member(u) && !r.graphon_member(w)) {
      o.nonmember_pair = true;
      o.convex_ok = !r.graphon_member(z);
    }
    o.concave_excess = alpha * r.exact_distance(u) + (1 - alpha) * r.exact_distance(w) - r.exact_distance(z);
    out[t] = o;
  });
  std::size_t not_flex = 0, convex_bad = 0, pairs = 0;
  double concave = -1;
  for (const Out& o : out) {
    not_flex += !o.flex_u + !o.flex_w;
    convex_bad += !o.convex_ok;
    pairs += o.nonmember_pair;
    concave = std::max(concave, o.concave_excess);
  }
  c.check("mixtures where U or W is not a flexing of Z", static_cast<double>(not_flex), "==", 0,
          "U and W are flexings of Z = alpha U + (1 - alpha) W");
  c.check("non-member pairs whose mixture is a member", static_cast<double>(convex_bad), "==", 0,
          "complement of a flexible property is convex");
  c.check("max of alpha d1(U,R) + (1-alpha) d1(W,R) - d1(Z,R)", concave, "<=", kRounding,
          "d1(., R) is concave for flexible R");
  c.record("non-member pairs examined", static_cast<double>(pairs));
}

void alon_stav_corner(Ctx& c) {
  const std::size_t count = c.params.trials(1000);
  const std::size_t k_max = c.params.count("k_max", 6);
  const double a = c.params.real("corner", 0.5);
  const std::size_t steps = c.params.count("scan_steps", 100);
  require(k_max >= 1 && a > 0 && a <= 1 && steps >= 1, ErrorCode::invalid_argument,
          "alon_stav_corner needs k_max >= 1, corner in (0,1], scan_steps >= 1");
  const PropertySpec r = corner_one_property(a);
  std::vector<double> d(count);
  parallel_for(count, [&](std::size_t t) {
    Stream rng(c.seed.child(t));
    d[t] = graphon_distance_to_property(random_stepfunction(rng, 1 + rng.below(k_max)), r).upper;
  });
  const double at_zero = graphon_distance_to_property(Stepfunction::constant(0), r).upper;
  double best = -1;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double v = graphon_distance_to_property(Stepfunction::constant(static_cast<double>(i) / steps), r).upper;
    if (v > best) best = v, best_i = i;
  }
  const std::string ref = "max of d1(., R) over flexible R is attained by a constant";
  c.check("max d1(W, R) over random stepfunctions", *std::max_element(d.begin(), d.end()), "<=", at_zero + c.cfg.tolerance,
          ref);
  c.check("d1(0, R) - a^2", std::abs(at_zero - a * a), "<=", kRounding, "closed form: integral of 1 - W over the corner");
  c.check("maximizing constant of the scan", static_cast<double>(best_i) / steps, "==", 0, ref);
  c.record("scan maximum", best);
}

void interpolant(Ctx& c) {
  const std::size_t triples = c.params.trials(100);
  require(triples >= 3 && 18 <= c.cfg.metric.exact_cap, ErrorCode::invalid_argument,
          "interpolant needs at least 3 triples and an exact cap of 18");
  const std::vector<std::size_t> sizes{6, 12, 18};

  struct Out {
    std::size_t size_index = 0;
    std::size_t range_bad = 0, formula_bad = 0;
    double cut_excess = -1, cut_w = 0;
  };
  std::vector<Out> out(triples);
  parallel_for(triples, [&](std::size_t t) {
    Stream rng(c.seed.child(t));
    const std::size_t p = 2 + rng.below(2);
    const std::size_t n = sizes[t % sizes.size()];
    std::vector<double> vv(p * p), fv(p * p), uv(p * p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = i; j < p; ++j) {
        vv[i * p + j] = vv[j * p + i] = rng.uniform();
        fv[i * p + j] = fv[j * p + i] = rng.uniform();
        uv[i * p + j] = uv[j * p + i] = vv[i * p + j] * fv[i * p + j];
      }
    const Stepfunction v = Stepfunction::equal_parts(p, vv);
    const Stepfunction u = Stepfunction::equal_parts(p, uv);
    const SimpleGraph g = sample_w_random_ordered(u, n, c.seed.child(t).child(1));
    const Stepfunction wp = dominating_interpolant(v, u, g);
    Out o;
    o.size_index = t % sizes.size();
    // n is a multiple of p, so V and U are already constant on the grid.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double vl = vv[(i * p / n) * p + j * p / n];
        const double ul = uv[(i * p / n) * p + j * p / n];
        const double wg = g.has_edge(i, j) ? 1.0 : 0.0;
        const double raw = ul < 1 ? vl + (1 - vl) / (1 - ul) * (wg - ul) : vl;
        o.range_bad += raw < wg - kRounding || raw > 1 + kRounding;
        o.formula_bad += std::abs(raw - wp.value(i, j)) > kRounding;
      }
    const double lhs = cut_norm_exact(wp - v).value;
    const double rhs = cut_norm_exact(embed_graph(g) - u).value;
    o.cut_excess = lhs - static_cast<double>(p * p) * rhs;
    o.cut_w = lhs;
    out[t] = o;
  });
  std::size_t range_bad = 0, formula_bad = 0;
  double excess = -1;
  std::vector<std::vector<double>> by_size(sizes.size());
  for (const Out& o : out) {
    range_bad += o.range_bad;
    formula_bad += o.formula_bad;
    excess = std::max(excess, o.cut_excess);
    by_size[o.size_index].push_back(o.cut_w);
  }
  const std::string ref = "W' = V_L + ((1 - V_L)/(1 - U_L)) (W_G - U_L)";
  c.check("cells with W' outside [W_G, 1]", static_cast<double>(range_bad), "==", 0, ref);
  c.check("cells where the library differs from the formula", static_cast<double>(formula_bad), "==", 0, ref);
  c.check("max of ||W' - V_L||_box - p^2 ||W_G - U_L||_box", excess, "<=", kRounding,
          "multiplying by a p x p stepfunction with values in [0,1] scales the cut norm by at most p^2");
  std::vector<double> med;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    med.push_back(median_of(by_size[i]));
    c.record("median ||W' - V_L||_box at N=" + std::to_string(sizes[i]), med.back());
  }
  c.check("median ||W' - V_L||_box at N=18 vs N=6", med.back(), "<", med.front(), "||W'_n - V_L||_box -> 0");
}

void left_close(Ctx& c) {
  const std::size_t parts = c.params.count("parts", 3);
  require(parts >= 1, ErrorCode::invalid_argument, "left_close needs at least one part");
  Stream rng(c.seed.child(0));
  const Stepfunction u = random_stepfunction(rng, parts);
  const Stepfunction other = random_stepfunction(rng, parts);
  const std::vector<double> alphas{1e-2, 1e-5, 1e-9};
  for (std::size_t k = 2; k <= 4; ++k) {
    const LeftCloseReport same = left_close_check(u, u, k);
    c.check("k=" + std::to_string(k) + ": implied bound 22/sqrt(log2 k)", same.implied_bound, ">", 1,
            "vacuous-at-scale: any delta_box <= 1 satisfies it");
    c.check("k=" + std::to_string(k) + ": U = W meets the hypothesis (max gap)", same.max_gap, "<=", same.threshold,
            "|t(F,U) - t(F,W)| <= 3^(-k^2)");
    for (double alpha : alphas) {
      const Stepfunction w = mix(other, u, alpha);
      const LeftCloseReport rep = left_close_check(u, w, k);
      const std::string tag = "k=" + std::to_string(k) + " alpha=" + format_double(alpha);
      c.record(tag + ": max density gap", rep.max_gap,
               rep.hypothesis_holds ? "hypothesis holds" : "hypothesis fails");
      if (rep.hypothesis_holds) {
        const double upper = delta_distance(u, w, Metric::cut, c.metric(k)).upper;
        c.check(tag + ": delta_box upper end vs implied bound", upper, "<=", rep.implied_bound,
                "hypothesis implies delta_box <= 22/sqrt(log k)");
      }
      if (alpha == alphas.back())
        c.check(tag + ": near pair meets the hypothesis (max gap)", rep.max_gap, "<=", rep.threshold,
                "|t(F,U) - t(F,W)| <= 3^(-k^2)");
    }
  }
}

void distance_functional(Ctx& c) {
  const std::size_t seeds = c.params.trials(10);
  const std::size_t cut_seeds = c.params.count("cut_seeds", 3);
  const double radius = c.params.real("radius", 0.25);
  const double final_tol = c.params.real("final_tolerance", 0.01);
  require(seeds >= 1 && cut_seeds >= 1 && radius >= 0 && radius < 0.5, ErrorCode::invalid_argument,
          "distance_functional needs seeds >= 1 and radius in [0, 1/2)");
  const std::vector<std::size_t> scales{64, 256, 1024};
  const Stepfunction half = Stepfunction::constant(0.5);
  const PropertySpec single = constant_graphon_property(0.5);
  const PropertySpec ball = cut_ball_zero_property(radius);
  const double ball_limit = graphon_distance_to_property(half, ball).upper;
  c.record("d1(1/2, singleton)", graphon_distance_to_property(half, single).upper);
  c.record("d1(1/2, cut ball)", ball_limit);

  std::vector<double> cut_mean, ball_gap;
  double single_dev = 0;
  for (std::size_t si = 0; si < scales.size(); ++si) {
    std::vector<double> gaps(seeds), cuts(cut_seeds), singles(seeds);
    parallel_for(seeds, [&](std::size_t s) {
      const Stepfunction wn = embed_graph(sample_w_random(half, scales[si], c.seed.child(si).child(s)));
      singles[s] = graphon_distance_to_property(wn, single).upper;
      gaps[s] = std::abs(graphon_distance_to_property(wn, ball).upper - ball_limit);
      if (s < cut_seeds)
        cuts[s] = cut_norm_heuristic(wn - half, c.cfg.metric.heuristic_restarts, c.seed.child(si).child(s).child(1)).value;
    });
    for (double d : singles) single_dev = std::max(single_dev, std::abs(d - 0.5));
    cut_mean.push_back(mean_of(cuts));
    ball_gap.push_back(mean_of(gaps));
    c.record("mean heuristic ||W_n - 1/2||_box at n=" + std::to_string(scales[si]), cut_mean.back(), "lower bound");
    c.record("mean |d1(W_n, ball) - d1(1/2, ball)| at n=" + std::to_string(scales[si]), ball_gap.back());
  }
  c.check("max |d1(W_n, singleton) - 1/2|", single_dev, "<=", kRounding,
          "singleton {1/2}: d1 stays 1/2 while W_n -> 1/2 in cut norm");
  for (std::size_t i = 1; i < scales.size(); ++i) {
    const std::string at = " at n=" + std::to_string(scales[i]) + " vs n=" + std::to_string(scales[i - 1]);
    c.check("mean cut estimate" + at, cut_mean[i], "<", cut_mean[i - 1], "W_n -> 1/2 in cut norm");
    c.check("mean distance gap to the cut ball" + at, ball_gap[i], "<", ball_gap[i - 1],
            "d1(., R) is continuous for a testable R");
  }
  c.check("final mean distance gap to the cut ball", ball_gap.back(), "<=", final_tol,
          "d1(W_n, R) -> d1(1/2, R)");
}

struct Entry {
  const char* name;
  const char* summary;
  void (*run)(Ctx&);
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list{
      {"tind_bound", "induced densities of G vs W_G on random small pairs", tind_bound},
      {"counting_lemma", "homomorphism and induced counting lemmas with exact cut norms", counting_lemma},
      {"graph_counting_lemma", "induced counting lemma for graphs with additive terms", graph_counting_lemma},
      {"concentration", "edge-density exceedance of G(n,W) against the exponential bound", concentration},
      {"gprime_mean", "expected d1 of the stratified sample to a fixed graph", gprime_mean},
      {"squareclose", "stratified samples within 4x the L1 distance, cut decay", squareclose},
      {"quasirandom_gap", "G(n,1/2) at L1 distance 1/2 while its cut distance decays", quasirandom_gap},
      {"revconv1", "W_n = Z U_n recovers the L1 distance in the limit", revconv1},
      {"semicontinuity", "liminf of L1 distances along cut-convergent sequences", semicontinuity},
      {"flex_convexity", "flexings of mixtures, complement convexity, concavity", flex_convexity},
      {"alon_stav_corner", "maximum distance to corner_one attained by a constant", alon_stav_corner},
      {"interpolant", "dominating interpolant range and cut decay", interpolant},
      {"left_close", "density-closeness hypothesis and its vacuous cut bound", left_close},
      {"distance_functional", "distance to a singleton vs a cut ball along G(n,1/2)", distance_functional},
  };
  return list;
}

const Entry& find_entry(const std::string& name) {
  for (const Entry& e : entries())
    if (name == e.name) return e;
  fail(ErrorCode::invalid_argument, "unknown experiment '" + name + "'");
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
  static const std::vector<ExperimentInfo> cat = [] {
    std::vector<ExperimentInfo> out;
    for (const Entry& e : entries()) out.push_back({e.name, e.summary});
    return out;
  }();
  return cat;
}

SeedSpec experiment_seed(const Config& cfg, const std::string& name) { return SeedSpec(cfg.seed, {fnv1a(name)}); }

ExperimentReport run_experiment(const std::string& name, const Config& cfg, const SeedSpec& seed) {
  const Entry& entry = find_entry(name);
  for (const auto& [key, v] : cfg.overrides) {
    const std::string exp = key.substr(0, key.find('.'));
    bool known = false;
    for (const Entry& e : entries()) known = known || exp == e.name;
    require(known, ErrorCode::invalid_argument, "override '" + key + "' names no experiment");
  }
  ExperimentReport report;
  report.name = name;
  report.seed = seed;
  Ctx ctx{cfg, seed, Params(name, cfg), report};
  const auto start = std::chrono::steady_clock::now();
  entry.run(ctx);
  report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ctx.params.check_consumed();
  report.parameters = ctx.params.echo();
  report.pass = std::all_of(report.assertions.begin(), report.assertions.end(), [](const Assertion& a) { return a.pass; });
  return report;
}

ExperimentReport run_experiment(const std::string& name, const Config& cfg) {
  return run_experiment(name, cfg, experiment_seed(cfg, name));
}

std::vector<ExperimentReport> run_experiments(const std::vector<std::string>& names, const Config& cfg) {
  std::vector<std::string> list;
  for (const auto& n : names) {
    if (n == "all") {
      for (const Entry& e : entries()) list.push_back(e.name);
    } else {
      find_entry(n);
      list.push_back(n);
    }
  }
  std::vector<ExperimentReport> out(list.size());
  parallel_for(list.size(), [&](std::size_t i) { out[i] = run_experiment(list[i], cfg); });
  return out;
}

bool all_pass(const std::vector<ExperimentReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const ExperimentReport& r) { return r.pass; });
}

std::string reports_to_json(const std::vector<ExperimentReport>& reports, const Config& cfg, bool timing) {
  using json = nlohmann::ordered_json;
  json root;
  root["schema"] = "graphlim.verify/1";
  root["config"] = json::parse(config_to_json(cfg));
  root["experiments"] = json::array();
  for (const auto& r : reports) {
    json e;
    e["name"] = r.name;
    e["seed"] = {{"root", r.seed.root}, {"path", r.seed.path}};
    e["parameters"] = json::object();
    for (const auto& [k, v] : r.parameters) e["parameters"][k] = v;
    e["assertions"] = json::array();
    for (const auto& a : r.assertions)
      e["assertions"].push_back({{"description", a.description},
                                 {"reference", a.reference},
                                 {"measured", a.measured},
                                 {"relation", a.relation},
                                 {"bound", a.bound},
                                 {"pass", a.pass}});
    e["records"] = json::array();
    for (const auto& rec : r.records)
      e["records"].push_back({{"name", rec.name}, {"value", rec.value}, {"note", rec.note}});
    e["pass"] = r.pass;
    if (timing) e["runtime_seconds"] = r.runtime_seconds;
    root["experiments"].push_back(std::move(e));
  }
  root["pass"] = all_pass(reports);
  return root.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string reports_to_csv(const std::vector<ExperimentReport>& reports, bool timing) {
  std::ostringstream os;
  os << "experiment,kind,description,measured,relation,bound,pass,reference";
  if (timing) os << ",runtime_seconds";
  os << "\n";
  for (const auto& r : reports) {
    const std::string tail = timing ? "," + format_double(r.runtime_seconds) : "";
    for (const auto& a : r.assertions)
      os << csv_field(r.name) << ",assertion," << csv_field(a.description) << "," << format_double(a.measured) << ","
         << a.relation << "," << format_double(a.bound) << "," << (a.pass ? "true" : "false") << ","
         << csv_field(a.reference) << tail << "\n";
    for (const auto& rec : r.records)
      os << csv_field(r.name) << ",record," << csv_field(rec.name) << "," << format_double(rec.value) << ",,,,"
         << csv_field(rec.note) << tail << "\n";
  }
  return os.str();
}

}  // namespace graphlim
