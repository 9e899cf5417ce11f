// graphlim command-line front end. Talks to the library only through the C
// API in graphlim.h.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "graphlim.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

// A failed C API call, carrying the library's message.
struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(gl_status s) {
  if (s != GL_OK) throw ApiError(std::string(gl_status_name(s)) + ": " + gl_last_error());
}

struct ConfigDeleter {
  void operator()(gl_config* c) const { gl_config_free(c); }
};
struct GraphDeleter {
  void operator()(gl_graph* g) const { gl_graph_free(g); }
};
struct GraphonDeleter {
  void operator()(gl_graphon* w) const { gl_graphon_free(w); }
};
using ConfigPtr = std::unique_ptr<gl_config, ConfigDeleter>;
using GraphPtr = std::unique_ptr<gl_graph, GraphDeleter>;
using GraphonPtr = std::unique_ptr<gl_graphon, GraphonDeleter>;

// Takes ownership of a string allocated by the library.
std::string take(char* s) {
  std::string out(s);
  gl_string_free(s);
  return out;
}

std::string shortest(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::size_t> exact_cap;
  std::optional<double> confidence_delta;
  std::optional<double> log_base;
  std::string format;  // empty: the command's default
  std::string out;
  std::string config_path;
  unsigned threads = 0;
};

ConfigPtr make_config(const Globals& g, const std::string& format) {
  gl_config* raw = nullptr;
  if (g.config_path.empty()) check(gl_config_new(&raw));
  else check(gl_config_load(g.config_path.c_str(), &raw));
  ConfigPtr c(raw);
  if (g.seed) check(gl_config_set_seed(c.get(), *g.seed));
  if (g.trials) check(gl_config_set_trials(c.get(), *g.trials));
  if (g.exact_cap) check(gl_config_set_exact_cap(c.get(), *g.exact_cap));
  if (g.confidence_delta) check(gl_config_set_confidence_delta(c.get(), *g.confidence_delta));
  if (g.log_base) check(gl_config_set_log_base(c.get(), *g.log_base));
  if (format == "json" || format == "csv") check(gl_config_set_format(c.get(), format.c_str()));
  return c;
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ApiError("cannot open '" + g.out + "' for writing");
  f << text;
  if (!f.flush()) throw ApiError("write to '" + g.out + "' failed");
}

std::string with_newline(std::string s) {
  if (s.empty() || s.back() != '\n') s += '\n';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph limits toolkit: densities, cut distances, W-random sampling, testers and checks."};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(gl_version()));

  Globals g;
  app.add_option("--seed", g.seed, "Root seed (u64)");
  app.add_option("--trials", g.trials, "Trial count (commands that sample)");
  app.add_option("--exact-cap", g.exact_cap, "Largest part count for exact cut norms")->check(CLI::Range(0, 30));
  app.add_option("--confidence-delta", g.confidence_delta,
                 "Failure probability of Hoeffding intervals (0.05 gives 95%)");
  app.add_option("--log-base", g.log_base, "Log base of 1/log n thresholds (0: natural)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--threads", g.threads, "Cap on worker threads (0: all cores); results do not change");

  // density
  auto* density = app.add_subcommand("density", "Homomorphism or induced density t(F, X)");
  std::string motif, subject;
  bool induced = false;
  std::size_t estimate = 0;
  density->add_option("--motif", motif, "Motif name (K3, C4, ...) or graph file")->required();
  auto* subj_opt = density->add_option("--graphon,--graph,--subject", subject,
                                       "Graphon literal, graphon .json file or graph file");
  subj_opt->required();
  density->add_flag("--induced", induced, "Induced density t_ind");
  density->add_option("--estimate", estimate, "Monte Carlo estimate from this many samples instead of exact");

  // cutnorm
  auto* cutnorm = app.add_subcommand("cutnorm", "Cut norm ||A - B|| on the common refinement");
  std::string a, b;
  cutnorm->add_option("--a", a, "First graph or graphon")->required();
  cutnorm->add_option("--b", b, "Second graph or graphon")->required();

  // dist
  auto* dist = app.add_subcommand("dist", "Interval for the unlabeled distance delta");
  std::string metric = "cut";
  dist->add_option("--a", a, "First graph or graphon")->required();
  dist->add_option("--b", b, "Second graph or graphon")->required();
  dist->add_option("--metric", metric, "cut or l1")->check(CLI::IsMember({"cut", "l1"}));
  dist->add_option("--exact-cap", g.exact_cap, "Largest part count for exact cut norms")->check(CLI::Range(0, 30));

  // sample
  auto* sample = app.add_subcommand("sample", "Sample a graph; writes graph text");
  std::string kind = "gnw", source;
  std::size_t n = 0;
  sample->add_option("--kind", kind, "gnw, gprime, induced or weighted")
      ->check(CLI::IsMember({"gnw", "gprime", "induced", "weighted"}));
  sample->add_option("--n", n, "Node count (subset size for induced)")->required();
  sample->add_option("--graphon,--graph,--from", source, "Graphon literal (gnw, gprime, weighted) or graph file (induced)")
      ->required();

  // test
  auto* test = app.add_subcommand("test", "Run the oblivious tester");
  std::string property;
  std::size_t k = 0;
  test->add_option("--subject", subject, "Graph file or graphon")->required();
  test->add_option("--property", property, "Test property (see `properties --list`)")->required();
  test->add_option("--k", k, "Sample size")->required();
  test->add_option("--trials", g.trials, "Number of samples (default 200)");

  // dist-to-property
  auto* dtp = app.add_subcommand("dist-to-property", "Distance from a graph or graphon to a property");
  dtp->add_option("--subject", subject, "Graph file or graphon")->required();
  dtp->add_option("--property", property, "Property (see `properties --list`)")->required();
  dtp->add_option("--k", k, "Sample size for the closure score of a graphon against a graph property");

  // verify
  auto* verify = app.add_subcommand("verify", "Run numerical checks; exit 1 when an assertion fails");
  std::string experiment = "all";
  std::vector<std::string> sets;
  bool timing = false, list_experiments = false;
  verify->add_option("--experiment", experiment, "Experiment name, comma-separated names, or all");
  verify->add_option("--set", sets, "Parameter override experiment.parameter=value (repeatable)");
  verify->add_flag("--timing", timing, "Include runtimes (reports are then not byte-reproducible)");
  verify->add_flag("--list", list_experiments, "List experiments and exit");

  // properties
  auto* properties = app.add_subcommand("properties", "List built-in properties");
  bool list_properties = false;
  properties->add_flag("--list", list_properties, "List properties (the default)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "graphlim: " << e.what() << "\n" << "Run with --help for usage.\n";
    return kExitUsage;
  }

  gl_set_max_threads(g.threads);
  const std::string text_default = g.format.empty() ? "text" : g.format;
  const std::string json_default = g.format.empty() || g.format == "text" ? "json" : g.format;

  try {
    if (density->parsed()) {
      ConfigPtr c = make_config(g, text_default == "text" ? "json" : text_default);
      const std::string report =
          take([&] { char* s = nullptr; check(gl_report_density(motif.c_str(), subject.c_str(), induced, estimate, c.get(), &s)); return s; }());
      if (text_default == "text") {
        const auto j = nlohmann::json::parse(report);
        std::string line = shortest(j["value"].get<double>());
        if (!j["exact"].get<bool>()) line += " +/- " + shortest(j["ci_halfwidth"].get<double>());
        emit(g, line + "\n");
      } else {
        emit(g, report);
      }
    } else if (cutnorm->parsed()) {
      ConfigPtr c = make_config(g, text_default == "text" ? "json" : text_default);
      const std::string report =
          take([&] { char* s = nullptr; check(gl_report_cutnorm(a.c_str(), b.c_str(), c.get(), &s)); return s; }());
      if (text_default == "text") {
        const auto j = nlohmann::json::parse(report);
        if (j["exact"].get<bool>())
          emit(g, shortest(j["value"].get<double>()) + "\n");
        else  // heuristic lower bound and certified upper bound
          emit(g, "[" + shortest(j["value"].get<double>()) + ", " + shortest(j["certified_upper"].get<double>()) +
                      "]\n");
      } else {
        emit(g, report);
      }
    } else if (dist->parsed()) {
      ConfigPtr c = make_config(g, text_default == "text" ? "json" : text_default);
      const gl_metric m = metric == "l1" ? GL_METRIC_L1 : GL_METRIC_CUT;
      const std::string report =
          take([&] { char* s = nullptr; check(gl_report_delta(a.c_str(), b.c_str(), m, c.get(), &s)); return s; }());
      if (text_default == "text") {
        const auto j = nlohmann::json::parse(report);
        emit(g, "[" + shortest(j["lower"].get<double>()) + ", " + shortest(j["upper"].get<double>()) + "]\n");
      } else {
        emit(g, report);
      }
    } else if (sample->parsed()) {
      ConfigPtr c = make_config(g, "json");
      const std::uint64_t seed = g.seed.value_or(0);
      gl_graph* raw = nullptr;
      if (kind == "induced") {
        gl_graph* src = nullptr;
        check(gl_graph_load(source.c_str(), &src));
        GraphPtr from(src);
        check(gl_sample_induced(from.get(), n, seed, &raw));
      } else {
        gl_graphon* w = nullptr;
        check(gl_graphon_from_literal(source.find(':') == std::string::npos ? ("file:" + source).c_str()
                                                                           : source.c_str(),
                                      &w));
        GraphonPtr from(w);
        check(gl_sample_graphon(from.get(), kind.c_str(), n, seed, &raw));
      }
      GraphPtr out(raw);
      emit(g, take([&] { char* s = nullptr; check(gl_graph_to_text(out.get(), &s)); return s; }()));
    } else if (test->parsed()) {
      ConfigPtr c = make_config(g, json_default);
      const std::size_t trials = g.trials.value_or(200);
      emit(g, take([&] {
             char* s = nullptr;
             check(gl_report_test(subject.c_str(), property.c_str(), k, trials, c.get(), &s));
             return s;
           }()));
    } else if (dtp->parsed()) {
      ConfigPtr c = make_config(g, json_default);
      emit(g, take([&] {
             char* s = nullptr;
             check(gl_report_distance_to_property(subject.c_str(), property.c_str(), k, c.get(), &s));
             return s;
           }()));
    } else if (verify->parsed()) {
      ConfigPtr c = make_config(g, json_default);
      if (list_experiments) {
        emit(g, take([&] { char* s = nullptr; check(gl_experiment_catalog(c.get(), &s)); return s; }()));
        return kExitOk;
      }
      for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected experiment.parameter=value, got " + kv);
        double value = 0;
        const std::string rhs = kv.substr(eq + 1);
        auto [ptr, ec] = std::from_chars(rhs.data(), rhs.data() + rhs.size(), value);
        if (ec != std::errc() || ptr != rhs.data() + rhs.size())
          throw CLI::ValidationError("--set", "not a number: " + rhs);
        check(gl_config_set_override(c.get(), kv.substr(0, eq).c_str(), value));
      }
      int pass = 0;
      emit(g, with_newline(take([&] {
             char* s = nullptr;
             check(gl_verify(experiment.c_str(), c.get(), timing ? 1 : 0, &s, &pass));
             return s;
           }())));
      return pass ? kExitOk : kExitAssertion;
    } else if (properties->parsed()) {
      ConfigPtr c = make_config(g, json_default);
      emit(g, take([&] { char* s = nullptr; check(gl_property_catalog(c.get(), &s)); return s; }()));
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "graphlim: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "graphlim: error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
