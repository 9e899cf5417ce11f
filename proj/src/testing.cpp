#include "graphlim/testing.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "graphlim/error.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/sampling.hpp"

namespace graphlim {

namespace {

std::string shortest(double x) {
  char buf[32];
  return std::string(buf, std::to_chars(buf, buf + sizeof buf, x).ptr);
}

constexpr std::uint64_t kAmplifyStream = 0x616d706c696679ULL;

double parse_number(const std::string& text, const std::string& what) {
  double x = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(x))
    fail(ErrorCode::invalid_argument, "bad " + what + ": '" + text + "'");
  return x;
}

std::size_t parse_count(const std::string& text, const std::string& what) {
  std::size_t x = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(ErrorCode::invalid_argument, "bad " + what + ": '" + text + "'");
  return x;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

bool has_triangle(const SimpleGraph& g) {
  for (const Edge& e : g.edges()) {
    auto a = g.row(e.u);
    auto b = g.row(e.v);
    for (std::size_t w = 0; w < a.size(); ++w)
      if (a[w] & b[w]) return true;
  }
  return false;
}

double edge_density(const SimpleGraph& g) {
  const double n = static_cast<double>(g.node_count());
  return 2.0 * static_cast<double>(g.edge_count()) / (n * n);
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  double r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Overlap of each part with [0, a].
std::vector<double> prefix_overlaps(const StepKernel& w, double a) {
  std::vector<double> ov(w.parts());
  double start = 0;
  for (std::size_t i = 0; i < w.parts(); ++i) {
    const double end = start + w.measure(i);
    ov[i] = std::max(0.0, std::min(end, a) - start);
    start = end;
  }
  return ov;
}

PropertySpec graph_spec(std::string name, std::string description, GraphPredicate member) {
  PropertySpec p;
  p.name = std::move(name);
  p.kind = PropertyKind::graph;
  p.description = std::move(description);
  p.graph_member = std::move(member);
  return p;
}

PropertySpec graphon_spec(std::string name, std::string description) {
  PropertySpec p;
  p.name = std::move(name);
  p.kind = PropertyKind::graphon;
  p.description = std::move(description);
  return p;
}

template <class Draw>
TesterReport tester_loop(const TestProperty& p, std::size_t k, std::size_t trials, const SeedSpec& seed, double delta,
                         Draw&& draw) {
  require(trials >= 1, ErrorCode::invalid_argument, "tester needs at least one trial");
  require(k >= 1, ErrorCode::invalid_argument, "sample size must be positive");
  std::vector<char> hit(trials, 0);
  parallel_for(trials, [&](std::size_t t) { hit[t] = p.member(draw(seed.child(t))) ? 1 : 0; });
  TesterReport r;
  r.trials = trials;
  r.k = k;
  r.accepted = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
  r.estimate = static_cast<double>(r.accepted) / static_cast<double>(trials);
  r.ci_halfwidth = hoeffding_halfwidth(trials, delta);
  r.verdict = verdict_for(r.estimate);
  const auto acc = std::find(hit.begin(), hit.end(), 1);
  const auto rej = std::find(hit.begin(), hit.end(), 0);
  if (acc != hit.end()) r.first_accepted = static_cast<std::size_t>(acc - hit.begin());
  if (rej != hit.end()) r.first_rejected = static_cast<std::size_t>(rej - hit.begin());
  return r;
}

bool compatible_for_l1(const Stepfunction& a, const Stepfunction& b) {
  if (a.parts() != b.parts()) return false;
  if (a.has_equal_parts() && b.has_equal_parts()) return true;
  return std::equal(a.measures().begin(), a.measures().end(), b.measures().begin());
}

}  // namespace

double LogThreshold::operator()(std::size_t n) const {
  if (n <= 1) return std::numeric_limits<double>::infinity();
  const double ln = std::log(static_cast<double>(n));
  return base > 0 ? std::log(base) / ln : 1.0 / ln;
}

TestProperty PropertySpec::as_test_property() const {
  require(kind == PropertyKind::graph && static_cast<bool>(graph_member), ErrorCode::invalid_argument,
          "property '" + name + "' is not a graph property");
  return {name, graph_member, description};
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::accept: return "accept";
    case Verdict::reject: return "reject";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict verdict_for(double estimate) {
  if (estimate >= 2.0 / 3.0) return Verdict::accept;
  if (estimate <= 1.0 / 3.0) return Verdict::reject;
  return Verdict::inconclusive;
}

TesterReport run_tester(const SimpleGraph& g, const TestProperty& p, std::size_t k, std::size_t trials,
                        const SeedSpec& seed, double delta) {
  require(k <= g.node_count(), ErrorCode::out_of_range,
          "sample size " + std::to_string(k) + " exceeds the " + std::to_string(g.node_count()) + "-node subject");
  return tester_loop(p, k, trials, seed, delta, [&](const SeedSpec& s) { return sample_induced(g, k, s); });
}

TesterReport run_tester(const Stepfunction& w, const TestProperty& p, std::size_t k, std::size_t trials,
                        const SeedSpec& seed, double delta) {
  return tester_loop(p, k, trials, seed, delta, [&](const SeedSpec& s) { return sample_w_random(w, k, s); });
}

double subset_acceptance(const SimpleGraph& f, const TestProperty& p, std::size_t k, std::size_t exact_limit,
                         std::size_t samples) {
  const std::size_t n = f.node_count();
  require(k >= 1 && k <= n, ErrorCode::out_of_range, "subset size out of range");
  if (binomial(n, k) <= static_cast<double>(exact_limit)) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    std::size_t total = 0, hits = 0;
    for (;;) {
      ++total;
      if (p.member(f.induced(idx))) ++hits;
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
  }
  const SeedSpec seed(kAmplifyStream);
  std::size_t hits = 0;
  for (std::size_t t = 0; t < samples; ++t)
    if (p.member(sample_induced(f, k, seed.child(t)))) ++hits;
  return static_cast<double>(hits) / static_cast<double>(samples);
}

TestProperty amplify(const TestProperty& p, std::size_t k) {
  require(k >= 1, ErrorCode::invalid_argument, "amplification needs k >= 1");
  TestProperty out;
  out.name = "amplify:" + std::to_string(k) + ":" + p.name;
  out.description = "majority of " + std::to_string(k) + "-node induced subgraphs satisfy " + p.name;
  out.member = [p, k](const SimpleGraph& f) {
    if (f.node_count() < k) return p.member(f);
    return subset_acceptance(f, p, k) >= 0.5;
  };
  return out;
}

TestProperty density_test_property(const SimpleGraph& f, double c, LogThreshold log) {
  require(c > 0 && c < 1, ErrorCode::invalid_argument, "density target must lie in (0,1)");
  TestProperty out;
  std::ostringstream name;
  name << "density(" << f.node_count() << " nodes, " << f.edge_count() << " edges):" << c;
  out.name = name.str();
  out.description = "|t(F,G) - c| <= 1/log n; graphs on <= 2 nodes pass";
  out.member = [f, c, log](const SimpleGraph& g) {
    const std::size_t n = g.node_count();
    if (n <= 2) return true;
    return std::abs(homomorphism_density(f, g).value - c) <= log(n);
  };
  return out;
}

PropertySpec quasirandom_property(LogThreshold log) {
  return graph_spec("quasirandom", "|t(K2,G) - 1/2| <= 1/log n and t(C4,G) <= 1/16 + 1/log n",
                    [log](const SimpleGraph& g) {
                      const std::size_t n = g.node_count();
                      if (n <= 2) return true;
                      const double tol = log(n);
                      if (std::abs(edge_density(g) - 0.5) > tol) return false;
                      return homomorphism_density(cycle_graph(4), g).value <= 1.0 / 16 + tol;
                    });
}

PropertySpec triangle_free_property() {
  PropertySpec p = graph_spec("triangle_free", "no three mutually adjacent nodes",
                              [](const SimpleGraph& g) { return !has_triangle(g); });
  p.forbidden = std::vector<SimpleGraph>{complete_graph(3)};
  return p;
}

PropertySpec forbidden_induced_property(std::vector<SimpleGraph> forbidden, std::string name) {
  require(!forbidden.empty(), ErrorCode::invalid_argument, "forbidden list is empty");
  PropertySpec p = graph_spec(std::move(name), "no induced copy of any listed graph",
                              [forbidden](const SimpleGraph& g) {
                                for (const SimpleGraph& f : forbidden) {
                                  if (f.node_count() > g.node_count()) continue;
                                  if (induced_density(f, g).value > 0) return false;
                                }
                                return true;
                              });
  p.forbidden = std::move(forbidden);
  return p;
}

PropertySpec edgeless_property() {
  PropertySpec p = graph_spec("edgeless", "no edges", [](const SimpleGraph& g) { return g.edge_count() == 0; });
  p.forbidden = std::vector<SimpleGraph>{complete_graph(2)};
  p.graph_distance = [](const SimpleGraph& g) {
    const double n = static_cast<double>(g.node_count());
    return EditDistance{2.0 * static_cast<double>(g.edge_count()) / (n * n), g.edge_count(),
                        edgeless_graph(g.node_count())};
  };
  return p;
}

PropertySpec has_edge_property() {
  return graph_spec("has_edge", "at least one edge", [](const SimpleGraph& g) { return g.edge_count() > 0; });
}

PropertySpec all_graphs_property() {
  PropertySpec p = graph_spec("all_graphs", "every graph", [](const SimpleGraph&) { return true; });
  p.graph_distance = [](const SimpleGraph& g) { return EditDistance{0.0, 0, g}; };
  return p;
}

double corner_deficit(const Stepfunction& w, double a) {
  require(a >= 0 && a <= 1, ErrorCode::invalid_argument, "corner size must lie in [0,1]");
  const auto ov = prefix_overlaps(w, a);
  long double sum = 0;
  for (std::size_t i = 0; i < w.parts(); ++i)
    for (std::size_t j = 0; j < w.parts(); ++j)
      sum += static_cast<long double>(ov[i]) * ov[j] * (1.0 - w.value(i, j));
  return static_cast<double>(sum);
}

PropertySpec constant_graphon_property(double p) {
  require(p >= 0 && p <= 1, ErrorCode::invalid_argument, "constant must lie in [0,1]");
  PropertySpec r = graphon_spec("constant_graphon:" + shortest(p), "identically equal to the constant");
  const Stepfunction c = Stepfunction::constant(p);
  r.graphon_member = [c](const Stepfunction& w) { return same_function(w, c); };
  r.exact_distance = [c](const Stepfunction& w) { return l1_distance(w, c); };
  return r;
}

PropertySpec corner_one_property(double a) {
  require(a >= 0 && a <= 1, ErrorCode::invalid_argument, "corner size must lie in [0,1]");
  PropertySpec r = graphon_spec("corner_one:" + shortest(a), "equal to 1 on [0,a]^2");
  r.graphon_member = [a](const Stepfunction& w) {
    const auto ov = prefix_overlaps(w, a);
    for (std::size_t i = 0; i < w.parts(); ++i)
      for (std::size_t j = 0; j < w.parts(); ++j)
        if (ov[i] > 0 && ov[j] > 0 && w.value(i, j) != 1.0) return false;
    return true;
  };
  r.exact_distance = [a](const Stepfunction& w) { return corner_deficit(w, a); };
  return r;
}

PropertySpec cut_ball_zero_property(double radius) {
  require(radius >= 0, ErrorCode::invalid_argument, "ball radius must be nonnegative");
  PropertySpec r = graphon_spec("cut_ball_zero:" + shortest(radius), "cut norm at most r (integral at most r)");
  r.graphon_member = [radius](const Stepfunction& w) { return w.integral() <= radius; };
  r.exact_distance = [radius](const Stepfunction& w) { return std::max(0.0, w.integral() - radius); };
  return r;
}

PropertySpec net_property(std::vector<Stepfunction> centers, double radius) {
  require(!centers.empty(), ErrorCode::invalid_argument, "net needs at least one center");
  require(radius >= 0, ErrorCode::invalid_argument, "net radius must be nonnegative");
  PropertySpec r = graphon_spec("net", "within cut distance r of a listed stepfunction");
  r.net = StepNet{std::move(centers), radius};
  return r;
}

PropertySpec builtin_property(const std::string& spec, LogThreshold log) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto no_args = [&] {
    require(rest.empty() && colon == std::string::npos, ErrorCode::invalid_argument,
            "property '" + name + "' takes no arguments");
  };
  if (name == "triangle_free") return no_args(), triangle_free_property();
  if (name == "quasirandom") return no_args(), quasirandom_property(log);
  if (name == "edgeless") return no_args(), edgeless_property();
  if (name == "has_edge") return no_args(), has_edge_property();
  if (name == "all_graphs") return no_args(), all_graphs_property();
  if (name == "forbidden_induced") {
    std::vector<SimpleGraph> list;
    for (const auto& m : split(rest, ',')) list.push_back(motif(m));
    return forbidden_induced_property(std::move(list), spec);
  }
  if (name == "density") {
    const auto parts = split(rest, ':');
    require(parts.size() == 2, ErrorCode::invalid_argument, "expected density:MOTIF:c");
    const TestProperty t = density_test_property(motif(parts[0]), parse_number(parts[1], "density target"), log);
    return graph_spec(spec, t.description, t.member);
  }
  if (name == "amplify") {
    const auto c2 = rest.find(':');
    require(c2 != std::string::npos, ErrorCode::invalid_argument, "expected amplify:k:property");
    const std::size_t k = parse_count(rest.substr(0, c2), "amplification size");
    const PropertySpec inner = builtin_property(rest.substr(c2 + 1), log);
    const TestProperty t = amplify(inner.as_test_property(), k);
    return graph_spec(spec, t.description, t.member);
  }
  if (name == "constant_graphon") return constant_graphon_property(parse_number(rest, "constant"));
  if (name == "corner_one") return corner_one_property(parse_number(rest, "corner size"));
  if (name == "cut_ball_zero") return cut_ball_zero_property(parse_number(rest, "ball radius"));
  if (name == "net") {
    const auto c2 = rest.find(':');
    require(c2 != std::string::npos, ErrorCode::invalid_argument, "expected net:radius:literal;literal...");
    const double radius = parse_number(rest.substr(0, c2), "net radius");
    std::vector<Stepfunction> centers;
    for (const auto& lit : split(rest.substr(c2 + 1), ';')) centers.push_back(stepfunction_from_literal(lit));
    PropertySpec r = net_property(std::move(centers), radius);
    r.name = spec;
    return r;
  }
  fail(ErrorCode::invalid_argument, "unknown property: " + spec);
}

std::vector<PropertyInfo> property_catalog() {
  using K = PropertyKind;
  return {
      {"triangle_free", K::graph, "no triangle (hereditary, forbidden K3)"},
      {"quasirandom", K::graph, "|t(K2,G)-1/2| <= 1/log n and t(C4,G) <= 1/16 + 1/log n"},
      {"edgeless", K::graph, "no edges (hereditary, forbidden K2)"},
      {"has_edge", K::graph, "at least one edge"},
      {"all_graphs", K::graph, "every graph"},
      {"forbidden_induced:M1,M2,...", K::graph, "no induced copy of the named motifs (hereditary)"},
      {"density:MOTIF:c", K::graph, "|t(F,G) - c| <= 1/log n"},
      {"amplify:k:PROPERTY", K::graph, "majority of k-node induced subgraphs satisfy PROPERTY"},
      {"constant_graphon:p", K::graphon, "identically p"},
      {"corner_one:a", K::graphon, "equal to 1 on [0,a]^2 (flexible)"},
      {"cut_ball_zero:r", K::graphon, "cut norm at most r"},
      {"net:r:LIT;LIT...", K::graphon, "within cut distance r of a listed stepfunction literal"},
  };
}

ClosureCheck hereditary_closure_check(const Stepfunction& w, const PropertySpec& p, std::size_t kmax) {
  require(p.forbidden.has_value() && static_cast<bool>(p.graph_member), ErrorCode::invalid_argument,
          "property '" + p.name + "' is not hereditary (no forbidden list)");
  require(kmax >= 1 && kmax <= 5, ErrorCode::out_of_range, "closure check supports kmax in 1..5");
  ClosureCheck out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    const auto profile = density_profile(&w, k);
    for (const auto& [code, dv] : profile) {
      SimpleGraph f = graph_from_code(k, code);
      if (p.graph_member(f)) continue;
      ++out.checked;
      if (dv.value > 0 && out.holds) {
        out.holds = false;
        out.witness = std::move(f);
        out.witness_density = dv.value;
      }
    }
  }
  return out;
}

EditDistance edit_distance_to_property(const SimpleGraph& g, const PropertySpec& p) {
  if (p.graph_distance) return p.graph_distance(g);
  require(p.kind == PropertyKind::graph && static_cast<bool>(p.graph_member), ErrorCode::invalid_argument,
          "property '" + p.name + "' is not a graph property");
  const std::size_t n = g.node_count();
  const std::size_t m = pair_count(n);
  require(m <= 21, ErrorCode::unsupported,
          "edit distance search needs at most 21 node pairs (7 nodes); got " + std::to_string(n) + " nodes");
  std::vector<Edge> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) pairs.push_back({u, v});
  const double scale = 2.0 / (static_cast<double>(n) * static_cast<double>(n));
  SimpleGraph h = g;
  for (std::size_t r = 0; r <= m; ++r) {
    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;
    for (;;) {
      for (std::size_t i : idx) h.toggle_edge(pairs[i].u, pairs[i].v);
      const bool hit = p.graph_member(h);
      if (hit) return EditDistance{scale * static_cast<double>(r), r, h};
      for (std::size_t i : idx) h.toggle_edge(pairs[i].u, pairs[i].v);
      std::size_t i = r;
      while (i > 0 && idx[i - 1] == m - r + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  fail(ErrorCode::invalid_argument,
       "property '" + p.name + "' has no member on " + std::to_string(n) + " nodes");
}

DensityValue closure_score(const Stepfunction& w, const PropertySpec& p, std::size_t k, std::size_t trials,
                           const SeedSpec& seed) {
  require(trials >= 1, ErrorCode::invalid_argument, "closure score needs at least one trial");
  require(static_cast<bool>(p.graph_distance) || pair_count(k) <= 21, ErrorCode::unsupported,
          "closure score at k = " + std::to_string(k) + " needs an exact distance oracle (generic search stops at 7)");
  std::vector<double> d(trials);
  parallel_for(trials, [&](std::size_t t) {
    d[t] = edit_distance_to_property(sample_w_random(w, k, seed.child(t)), p).distance;
  });
  long double sum = 0;
  for (double x : d) sum += x;
  const double mean = static_cast<double>(sum / static_cast<long double>(trials));
  return {mean, false, hoeffding_halfwidth(trials)};
}

DistanceInterval graphon_distance_to_property(const Stepfunction& w, const PropertySpec& r,
                                              const MetricConfig& cfg) {
  if (r.exact_distance) {
    const double d = r.exact_distance(w);
    return {d, d, "closed form", {}};
  }
  require(r.net.has_value(), ErrorCode::unsupported,
          "property '" + r.name + "' has neither a closed form nor a net");
  const StepNet& net = *r.net;
  double lo = std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  std::string witness;
  std::vector<std::size_t> perm;
  for (std::size_t c = 0; c < net.centers.size(); ++c) {
    const Stepfunction& s = net.centers[c];
    const DistanceInterval cut = delta_distance(w, s, Metric::cut, cfg);
    lo = std::min(lo, cut.lower);
    double up;
    std::vector<std::size_t> p;
    if (compatible_for_l1(w, s)) {
      const DistanceInterval l1 = delta_distance(w, s, Metric::l1, cfg);
      up = l1.upper;
      p = l1.upper_witness;
    } else {
      up = l1_distance(w, s);  // identity alignment
    }
    if (up < hi) {
      hi = up;
      witness = "center " + std::to_string(c);
      perm = std::move(p);
    }
  }
  return {std::max(0.0, lo - net.radius), std::min(1.0, hi + net.radius), witness, perm};
}

}  // namespace graphlim
