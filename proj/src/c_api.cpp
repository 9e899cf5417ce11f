#include "graphlim.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <sstream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "graphlim/config.hpp"
#include "graphlim/density.hpp"
#include "graphlim/error.hpp"
#include "graphlim/graph.hpp"
#include "graphlim/metrics.hpp"
#include "graphlim/parallel.hpp"
#include "graphlim/sampling.hpp"
#include "graphlim/stepfunction.hpp"
#include "graphlim/testing.hpp"
#include "graphlim/verify.hpp"

struct gl_graph {
  graphlim::SimpleGraph g;
};
struct gl_graphon {
  graphlim::Stepfunction w;
};
struct gl_property {
  graphlim::PropertySpec p;
};
struct gl_config {
  graphlim::Config c;
};

namespace {

using namespace graphlim;
using json = nlohmann::ordered_json;

thread_local std::string t_last_error;

gl_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return GL_INVALID_ARGUMENT;
    case ErrorCode::parse: return GL_PARSE_ERROR;
    case ErrorCode::out_of_range: return GL_OUT_OF_RANGE;
    case ErrorCode::unsupported: return GL_UNSUPPORTED;
    case ErrorCode::not_aligned: return GL_NOT_ALIGNED;
    case ErrorCode::domination: return GL_DOMINATION;
    case ErrorCode::io: return GL_IO_ERROR;
  }
  return GL_INTERNAL;
}

template <class Fn>
gl_status guarded(Fn&& fn) {
  try {
    fn();
    return GL_OK;
  } catch (const Error& e) {
    t_last_error = e.what();
    return status_of(e.code());
  } catch (const json::exception& e) {
    t_last_error = e.what();
    return GL_PARSE_ERROR;
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return GL_INTERNAL;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return GL_INTERNAL;
  } catch (...) {
    t_last_error = "unknown error";
    return GL_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorCode::invalid_argument, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const Config& config_or_default(const gl_config* c) {
  static const Config defaults;
  return c ? c->c : defaults;
}

MetricConfig metric_of(const Config& c) {
  MetricConfig m = c.metric;
  m.seed = c.seed;
  return m;
}

void fill(const DensityValue& d, gl_density* out) {
  out->value = d.value;
  out->exact = d.exact ? 1 : 0;
  out->ci_halfwidth = d.ci_halfwidth;
}

using Input = std::variant<SimpleGraph, Stepfunction>;

bool is_graphon_text(const std::string& s) {
  for (const char* prefix : {"constant:", "halfgraphon:", "file:"})
    if (s.rfind(prefix, 0) == 0) return true;
  return s.size() > 5 && s.compare(s.size() - 5, 5, ".json") == 0;
}

Input load_subject(const std::string& s) {
  if (!is_graphon_text(s)) return load_graph_file(s);
  if (s.rfind("constant:", 0) == 0 || s.rfind("halfgraphon:", 0) == 0 || s.rfind("file:", 0) == 0)
    return stepfunction_from_literal(s);
  return stepfunction_from_literal("file:" + s);
}

Stepfunction as_graphon(const Input& s) {
  if (const auto* g = std::get_if<SimpleGraph>(&s)) return embed_graph(*g);
  return std::get<Stepfunction>(s);
}

// A motif name, or a graph file when no motif has that name.
SimpleGraph load_motif(const std::string& s) {
  try {
    return motif(s);
  } catch (const Error&) {
    if (std::filesystem::exists(s)) return load_graph_file(s);
    throw;
  }
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// JSON object, or a flat CSV header plus one row (nested values inline).
std::string render(const json& j, const Config& c) {
  if (c.format == OutputFormat::json) return j.dump(2) + "\n";
  std::string head, row;
  for (const auto& [k, v] : j.items()) {
    if (!head.empty()) head += ",", row += ",";
    head += csv_cell(k);
    row += csv_cell(v);
  }
  return head + "\n" + row + "\n";
}

// A list of objects as CSV rows sharing the first object's columns.
std::string render_rows(const json& rows, const Config& c) {
  if (c.format == OutputFormat::json) return rows.dump(2) + "\n";
  std::string out;
  bool first = true;
  for (const auto& r : rows) {
    if (first) {
      std::string head;
      for (const auto& [k, v] : r.items()) head += (head.empty() ? "" : ",") + csv_cell(k);
      out += head + "\n";
      first = false;
    }
    std::string row;
    bool lead = true;
    for (const auto& [k, v] : r.items()) {
      row += (lead ? "" : ",") + csv_cell(v);
      lead = false;
    }
    out += row + "\n";
  }
  return out;
}

json edge_list(const SimpleGraph& g) {
  json out = json::array();
  for (const Edge& e : g.edges()) out.push_back({e.u, e.v});
  return out;
}

}  // namespace

extern "C" {

const char* gl_version(void) { return "1.0.0"; }

const char* gl_last_error(void) { return t_last_error.c_str(); }

const char* gl_status_name(gl_status status) {
  switch (status) {
    case GL_OK: return "ok";
    case GL_INVALID_ARGUMENT: return "invalid argument";
    case GL_PARSE_ERROR: return "parse error";
    case GL_OUT_OF_RANGE: return "out of range";
    case GL_UNSUPPORTED: return "unsupported";
    case GL_NOT_ALIGNED: return "partition not aligned";
    case GL_DOMINATION: return "domination violated";
    case GL_IO_ERROR: return "i/o error";
    case GL_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void gl_string_free(char* s) { std::free(s); }

void gl_set_max_threads(unsigned n) { set_max_threads(n); }

// ---- graphs

gl_status gl_graph_new(size_t n, gl_graph** out) {
  return guarded([&] {
    need(out, "out");
    *out = new gl_graph{SimpleGraph(n)};
  });
}

gl_status gl_graph_from_text(const char* text, gl_graph** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new gl_graph{parse_graph_text(text)};
  });
}

gl_status gl_graph_load(const char* path, gl_graph** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new gl_graph{load_graph_file(path)};
  });
}

gl_status gl_graph_motif(const char* name, gl_graph** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new gl_graph{motif(name)};
  });
}

gl_status gl_graph_copy(const gl_graph* g, gl_graph** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = new gl_graph{g->g};
  });
}

gl_status gl_graph_add_edge(gl_graph* g, size_t u, size_t v) {
  return guarded([&] {
    need(g, "graph");
    g->g.add_edge(u, v);
  });
}

gl_status gl_graph_has_edge(const gl_graph* g, size_t u, size_t v, int* out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = g->g.has_edge(u, v) ? 1 : 0;
  });
}

size_t gl_graph_node_count(const gl_graph* g) { return g ? g->g.node_count() : 0; }

size_t gl_graph_edge_count(const gl_graph* g) { return g ? g->g.edge_count() : 0; }

gl_status gl_graph_to_text(const gl_graph* g, char** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = dup_string(graph_to_text(g->g));
  });
}

gl_status gl_graph_save(const gl_graph* g, const char* path) {
  return guarded([&] {
    need(g, "graph");
    need(path, "path");
    save_graph_file(g->g, path);
  });
}

void gl_graph_free(gl_graph* g) { delete g; }

// ---- graphons

gl_status gl_graphon_new(size_t k, const double* measures, const double* values, gl_graphon** out) {
  return guarded([&] {
    need(measures, "measures");
    need(values, "values");
    need(out, "out");
    *out = new gl_graphon{Stepfunction(std::vector<double>(measures, measures + k),
                                       std::vector<double>(values, values + k * k))};
  });
}

gl_status gl_graphon_from_literal(const char* literal, gl_graphon** out) {
  return guarded([&] {
    need(literal, "literal");
    need(out, "out");
    *out = new gl_graphon{stepfunction_from_literal(literal)};
  });
}

gl_status gl_graphon_from_json(const char* text, gl_graphon** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new gl_graphon{parse_stepfunction_json(text)};
  });
}

gl_status gl_graphon_embed(const gl_graph* g, gl_graphon** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = new gl_graphon{embed_graph(g->g)};
  });
}

size_t gl_graphon_parts(const gl_graphon* w) { return w ? w->w.parts() : 0; }

gl_status gl_graphon_measure(const gl_graphon* w, size_t i, double* out) {
  return guarded([&] {
    need(w, "graphon");
    need(out, "out");
    require(i < w->w.parts(), ErrorCode::out_of_range, "part index out of range");
    *out = w->w.measure(i);
  });
}

gl_status gl_graphon_value(const gl_graphon* w, size_t i, size_t j, double* out) {
  return guarded([&] {
    need(w, "graphon");
    need(out, "out");
    require(i < w->w.parts() && j < w->w.parts(), ErrorCode::out_of_range, "part index out of range");
    *out = w->w.value(i, j);
  });
}

gl_status gl_graphon_to_json(const gl_graphon* w, char** out) {
  return guarded([&] {
    need(w, "graphon");
    need(out, "out");
    *out = dup_string(stepfunction_to_json(w->w));
  });
}

void gl_graphon_free(gl_graphon* w) { delete w; }

// ---- configuration

gl_status gl_config_new(gl_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new gl_config{};
  });
}

gl_status gl_config_from_json(const char* text, gl_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new gl_config{parse_config_json(text)};
  });
}

gl_status gl_config_load(const char* path, gl_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new gl_config{load_config_file(path)};
  });
}

gl_status gl_config_set_seed(gl_config* c, uint64_t seed) {
  return guarded([&] {
    need(c, "config");
    c->c.seed = seed;
  });
}

gl_status gl_config_set_trials(gl_config* c, size_t trials) {
  return guarded([&] {
    need(c, "config");
    c->c.trials = trials;
  });
}

gl_status gl_config_set_exact_cap(gl_config* c, size_t cap) {
  return guarded([&] {
    need(c, "config");
    require(cap <= 30, ErrorCode::invalid_argument, "exact cap above 30 is not supported");
    c->c.metric.exact_cap = cap;
  });
}

gl_status gl_config_set_confidence_delta(gl_config* c, double delta) {
  return guarded([&] {
    need(c, "config");
    require(delta > 0 && delta < 1, ErrorCode::invalid_argument, "confidence delta must lie in (0, 1)");
    c->c.confidence_delta = delta;
  });
}

gl_status gl_config_set_log_base(gl_config* c, double base) {
  return guarded([&] {
    need(c, "config");
    require(base == 0 || (base > 0 && base != 1), ErrorCode::invalid_argument,
            "log base must be 0 (natural) or a positive number other than 1");
    c->c.log_base = base;
  });
}

gl_status gl_config_set_format(gl_config* c, const char* format) {
  return guarded([&] {
    need(c, "config");
    need(format, "format");
    c->c.format = parse_format(format);
  });
}

gl_status gl_config_set_override(gl_config* c, const char* key, double value) {
  return guarded([&] {
    need(c, "config");
    need(key, "key");
    require(std::strchr(key, '.') != nullptr, ErrorCode::invalid_argument,
            std::string("override '") + key + "' must be named experiment.parameter");
    c->c.overrides[key] = value;
  });
}

gl_status gl_config_to_json(const gl_config* c, char** out) {
  return guarded([&] {
    need(c, "config");
    need(out, "out");
    *out = dup_string(config_to_json(c->c) + "\n");
  });
}

void gl_config_free(gl_config* c) { delete c; }

// ---- densities

gl_status gl_hom_density_graph(const gl_graph* f, const gl_graph* g, gl_density* out) {
  return guarded([&] {
    need(f, "motif");
    need(g, "graph");
    need(out, "out");
    fill(homomorphism_density(f->g, g->g), out);
  });
}

gl_status gl_hom_density_graphon(const gl_graph* f, const gl_graphon* w, gl_density* out) {
  return guarded([&] {
    need(f, "motif");
    need(w, "graphon");
    need(out, "out");
    fill(homomorphism_density(f->g, w->w), out);
  });
}

gl_status gl_induced_density_graph(const gl_graph* f, const gl_graph* g, gl_density* out) {
  return guarded([&] {
    need(f, "motif");
    need(g, "graph");
    need(out, "out");
    fill(induced_density(f->g, g->g), out);
  });
}

gl_status gl_induced_density_graphon(const gl_graph* f, const gl_graphon* w, gl_density* out) {
  return guarded([&] {
    need(f, "motif");
    need(w, "graphon");
    need(out, "out");
    fill(induced_density(f->g, w->w), out);
  });
}

gl_status gl_estimate_density(const gl_graph* f, const gl_graphon* w, size_t trials, uint64_t seed, double delta,
                              gl_density* out) {
  return guarded([&] {
    need(f, "motif");
    need(w, "graphon");
    need(out, "out");
    fill(estimate_density(f->g, w->w, trials, SeedSpec(seed), delta), out);
  });
}

// ---- distances

gl_status gl_l1_distance(const gl_graphon* a, const gl_graphon* b, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = l1_distance(a->w, b->w);
  });
}

gl_status gl_cut_distance(const gl_graphon* a, const gl_graphon* b, const gl_config* cfg, double* value, int* exact) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(value, "value");
    const CutNormResult r = cut_norm(a->w - b->w, metric_of(config_or_default(cfg)));
    *value = r.value;
    if (exact) *exact = r.exact ? 1 : 0;
  });
}

gl_status gl_delta_graphs(const gl_graph* a, const gl_graph* b, gl_metric metric, const gl_config* cfg,
                          gl_interval* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    const auto d = delta_distance(a->g, b->g, metric == GL_METRIC_L1 ? Metric::l1 : Metric::cut,
                                  metric_of(config_or_default(cfg)));
    *out = {d.lower, d.upper};
  });
}

gl_status gl_delta_graphons(const gl_graphon* a, const gl_graphon* b, gl_metric metric, const gl_config* cfg,
                            gl_interval* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    const auto d = delta_distance(a->w, b->w, metric == GL_METRIC_L1 ? Metric::l1 : Metric::cut,
                                  metric_of(config_or_default(cfg)));
    *out = {d.lower, d.upper};
  });
}

// ---- sampling

gl_status gl_sample_graphon(const gl_graphon* w, const char* kind, size_t n, uint64_t seed, gl_graph** out) {
  return guarded([&] {
    need(w, "graphon");
    need(kind, "kind");
    need(out, "out");
    const std::string k = kind;
    const SeedSpec s(seed);
    if (k == "gnw") {
      *out = new gl_graph{sample_w_random(w->w, n, s)};
    } else if (k == "gprime") {
      *out = new gl_graph{sample_w_random_ordered(w->w, n, s)};
    } else if (k == "weighted") {
      require(n == w->w.parts(), ErrorCode::invalid_argument,
              "weighted sampling uses one node per part: n must be " + std::to_string(w->w.parts()));
      *out = new gl_graph{randomize_weighted(w->w, s)};
    } else {
      fail(ErrorCode::invalid_argument, "unknown sample kind '" + k + "' (gnw, gprime, weighted)");
    }
  });
}

gl_status gl_sample_induced(const gl_graph* g, size_t k, uint64_t seed, gl_graph** out) {
  return guarded([&] {
    need(g, "graph");
    need(out, "out");
    *out = new gl_graph{sample_induced(g->g, k, SeedSpec(seed))};
  });
}

// ---- properties

gl_status gl_property_new(const char* spec, const gl_config* cfg, gl_property** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "out");
    *out = new gl_property{builtin_property(spec, LogThreshold{config_or_default(cfg).log_base})};
  });
}

gl_status gl_property_member(const gl_property* p, const gl_graph* g, int* out) {
  return guarded([&] {
    need(p, "property");
    need(g, "graph");
    need(out, "out");
    require(p->p.kind == PropertyKind::graph, ErrorCode::invalid_argument,
            "property '" + p->p.name + "' is a graphon property");
    *out = p->p.graph_member(g->g) ? 1 : 0;
  });
}

void gl_property_free(gl_property* p) { delete p; }

gl_status gl_test_graph(const gl_graph* g, const gl_property* p, size_t k, size_t trials, uint64_t seed,
                        double* estimate) {
  return guarded([&] {
    need(g, "graph");
    need(p, "property");
    need(estimate, "estimate");
    *estimate = run_tester(g->g, p->p.as_test_property(), k, trials, SeedSpec(seed)).estimate;
  });
}

gl_status gl_test_graphon(const gl_graphon* w, const gl_property* p, size_t k, size_t trials, uint64_t seed,
                          double* estimate) {
  return guarded([&] {
    need(w, "graphon");
    need(p, "property");
    need(estimate, "estimate");
    *estimate = run_tester(w->w, p->p.as_test_property(), k, trials, SeedSpec(seed)).estimate;
  });
}

gl_status gl_edit_distance(const gl_graph* g, const gl_property* p, double* distance) {
  return guarded([&] {
    need(g, "graph");
    need(p, "property");
    need(distance, "distance");
    *distance = edit_distance_to_property(g->g, p->p).distance;
  });
}

gl_status gl_graphon_distance(const gl_graphon* w, const gl_property* p, const gl_config* cfg, gl_interval* out) {
  return guarded([&] {
    need(w, "graphon");
    need(p, "property");
    need(out, "out");
    const auto d = graphon_distance_to_property(w->w, p->p, metric_of(config_or_default(cfg)));
    *out = {d.lower, d.upper};
  });
}

// ---- reports

gl_status gl_report_density(const char* motif_name, const char* subject, int induced, size_t estimate_trials,
                            const gl_config* cfg, char** out) {
  return guarded([&] {
    need(motif_name, "motif");
    need(subject, "subject");
    need(out, "out");
    const Config& c = config_or_default(cfg);
    const SimpleGraph f = load_motif(motif_name);
    const Input x = load_subject(subject);
    DensityValue d;
    std::string kind = induced ? "induced" : "homomorphism";
    if (estimate_trials > 0) {
      require(!induced, ErrorCode::invalid_argument, "Monte Carlo estimates cover homomorphism densities only");
      d = estimate_density(f, as_graphon(x), estimate_trials, SeedSpec(c.seed), c.confidence_delta);
      kind = "homomorphism (Monte Carlo)";
    } else if (const auto* g = std::get_if<SimpleGraph>(&x)) {
      d = induced ? induced_density(f, *g, c.caps) : homomorphism_density(f, *g, c.caps);
    } else {
      const auto& w = std::get<Stepfunction>(x);
      d = induced ? induced_density(f, w, c.caps) : homomorphism_density(f, w, c.caps);
    }
    json j;
    j["motif"] = motif_name;
    j["subject"] = subject;
    j["kind"] = kind;
    j["value"] = d.value;
    j["exact"] = d.exact;
    j["ci_halfwidth"] = d.ci_halfwidth;
    if (estimate_trials > 0) {
      j["trials"] = estimate_trials;
      j["seed"] = c.seed;
    }
    *out = dup_string(render(j, c));
  });
}

gl_status gl_report_cutnorm(const char* a, const char* b, const gl_config* cfg, char** out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    const Config& c = config_or_default(cfg);
    const SignedStepfunction d = as_graphon(load_subject(a)) - as_graphon(load_subject(b));
    const CutNormResult r = cut_norm(d, metric_of(c));
    json j;
    j["a"] = a;
    j["b"] = b;
    j["value"] = r.value;
    j["exact"] = r.exact;
    j["bound"] = r.exact ? "exact" : "lower";
    j["certified_upper"] = r.exact ? r.value : cut_norm_upper_bound(d);
    j["parts"] = d.parts();
    j["witness_s"] = r.witness_s;
    j["witness_t"] = r.witness_t;
    *out = dup_string(render(j, c));
  });
}

gl_status gl_report_delta(const char* a, const char* b, gl_metric metric, const gl_config* cfg, char** out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    const Config& c = config_or_default(cfg);
    const Metric m = metric == GL_METRIC_L1 ? Metric::l1 : Metric::cut;
    const Input sa = load_subject(a), sb = load_subject(b);
    DistanceInterval d;
    const auto* ga = std::get_if<SimpleGraph>(&sa);
    const auto* gb = std::get_if<SimpleGraph>(&sb);
    if (ga && gb) d = delta_distance(*ga, *gb, m, metric_of(c));
    else d = delta_distance(as_graphon(sa), as_graphon(sb), m, metric_of(c));
    json j;
    j["a"] = a;
    j["b"] = b;
    j["metric"] = m == Metric::cut ? "cut" : "l1";
    j["lower"] = d.lower;
    j["upper"] = d.upper;
    j["lower_witness"] = d.lower_witness;
    j["upper_witness"] = d.upper_witness;
    *out = dup_string(render(j, c));
  });
}

gl_status gl_report_test(const char* subject, const char* property, size_t k, size_t trials, const gl_config* cfg,
                         char** out) {
  return guarded([&] {
    need(subject, "subject");
    need(property, "property");
    need(out, "out");
    const Config& c = config_or_default(cfg);
    const PropertySpec spec = builtin_property(property, LogThreshold{c.log_base});
    require(spec.kind == PropertyKind::graph, ErrorCode::invalid_argument,
            "the tester needs a graph property; '" + spec.name + "' is a graphon property");
    const TestProperty tp = spec.as_test_property();
    const Input x = load_subject(subject);
    const SeedSpec seed(c.seed);
    TesterReport r;
    if (const auto* g = std::get_if<SimpleGraph>(&x)) r = run_tester(*g, tp, k, trials, seed, c.confidence_delta);
    else r = run_tester(std::get<Stepfunction>(x), tp, k, trials, seed, c.confidence_delta);
    json j;
    j["subject"] = subject;
    j["property"] = spec.name;
    j["k"] = r.k;
    j["trials"] = r.trials;
    j["seed"] = c.seed;
    j["estimate"] = r.estimate;
    j["ci"] = {std::max(0.0, r.estimate - r.ci_halfwidth), std::min(1.0, r.estimate + r.ci_halfwidth)};
    j["ci_halfwidth"] = r.ci_halfwidth;
    j["accepted"] = r.accepted;
    j["verdict"] = verdict_name(r.verdict);
    json w = json::object();
    w["first_accepted_trial"] = r.first_accepted ? json(*r.first_accepted) : json(nullptr);
    w["first_rejected_trial"] = r.first_rejected ? json(*r.first_rejected) : json(nullptr);
    j["witnesses"] = w;
    *out = dup_string(render(j, c));
  });
}

gl_status gl_report_distance_to_property(const char* subject, const char* property, size_t k, const gl_config* cfg,
                                         char** out) {
  return guarded([&] {
    need(subject, "subject");
    need(property, "property");
    need(out, "out");
    const Config& c = config_or_default(cfg);
    const PropertySpec spec = builtin_property(property, LogThreshold{c.log_base});
    const Input x = load_subject(subject);
    json j;
    j["subject"] = subject;
    j["property"] = spec.name;
    const auto* g = std::get_if<SimpleGraph>(&x);
    if (spec.kind == PropertyKind::graph && g) {
      const EditDistance d = edit_distance_to_property(*g, spec);
      j["kind"] = "edit distance";
      j["distance"] = d.distance;
      j["edits"] = d.edits;
      j["witness_edges"] = edge_list(d.witness);
    } else if (spec.kind == PropertyKind::graphon) {
      const DistanceInterval d = graphon_distance_to_property(as_graphon(x), spec, metric_of(c));
      j["kind"] = "graphon distance";
      j["lower"] = d.lower;
      j["upper"] = d.upper;
      j["witness"] = d.lower_witness;
    } else {
      const std::size_t kk = k == 0 ? 6 : k;
      const std::size_t trials = c.trials == 0 ? 200 : c.trials;
      const DensityValue d = closure_score(std::get<Stepfunction>(x), spec, kk, trials, SeedSpec(c.seed));
      j["kind"] = "closure score";
      j["k"] = kk;
      j["trials"] = trials;
      j["seed"] = c.seed;
      j["estimate"] = d.value;
      j["ci_halfwidth"] = d.ci_halfwidth;
    }
    *out = dup_string(render(j, c));
  });
}

gl_status gl_property_catalog(const gl_config* cfg, char** out) {
  return guarded([&] {
    need(out, "out");
    json rows = json::array();
    for (const auto& p : property_catalog())
      rows.push_back({{"syntax", p.syntax},
                      {"kind", p.kind == PropertyKind::graph ? "graph" : "graphon"},
                      {"description", p.description}});
    *out = dup_string(render_rows(rows, config_or_default(cfg)));
  });
}

gl_status gl_experiment_catalog(const gl_config* cfg, char** out) {
  return guarded([&] {
    need(out, "out");
    json rows = json::array();
    for (const auto& e : experiment_catalog()) rows.push_back({{"name", e.name}, {"summary", e.summary}});
    *out = dup_string(render_rows(rows, config_or_default(cfg)));
  });
}

gl_status gl_verify(const char* names, const gl_config* cfg, int timing, char** out, int* pass) {
  return guarded([&] {
    need(names, "names");
    need(out, "out");
    const Config& c = config_or_default(cfg);
    std::vector<std::string> list;
    std::stringstream ss(names);
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) list.push_back(item);
    require(!list.empty(), ErrorCode::invalid_argument, "no experiment named");
    const auto reports = run_experiments(list, c);
    *out = dup_string(c.format == OutputFormat::json ? reports_to_json(reports, c, timing != 0)
                                                      : reports_to_csv(reports, timing != 0));
    if (pass) *pass = all_pass(reports) ? 1 : 0;
  });
}

}  // extern "C"
