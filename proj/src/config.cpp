#include "graphlim/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "graphlim/error.hpp"

namespace graphlim {

namespace {

using json = nlohmann::ordered_json;

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::parse, "config key '" + key + "' has the wrong type");
  }
}

std::size_t get_count(const json& j, const std::string& key) {
  require(j.is_number_unsigned() || (j.is_number_integer() && j.get<long long>() >= 0), ErrorCode::parse,
          "config key '" + key + "' must be a non-negative integer");
  return j.get<std::size_t>();
}

double get_real(const json& j, const std::string& key) {
  require(j.is_number(), ErrorCode::parse, "config key '" + key + "' must be a number");
  const double x = j.get<double>();
  require(std::isfinite(x), ErrorCode::parse, "config key '" + key + "' must be finite");
  return x;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  fail(ErrorCode::parse, "unknown format '" + name + "' (json or csv)");
}

const char* format_name(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Config parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("config: ") + e.what());
  }
  require(j.is_object(), ErrorCode::parse, "config must be a JSON object");
  Config c;
  for (const auto& [key, v] : j.items()) {
    if (key == "seed") c.seed = get_as<std::uint64_t>(v, key);
    else if (key == "trials") c.trials = get_count(v, key);
    else if (key == "exact_cap") c.metric.exact_cap = get_count(v, key);
    else if (key == "heuristic_restarts") c.metric.heuristic_restarts = get_count(v, key);
    else if (key == "exhaustive_parts") c.metric.exhaustive_parts = get_count(v, key);
    else if (key == "anneal_restarts") c.metric.anneal_restarts = get_count(v, key);
    else if (key == "anneal_steps") c.metric.anneal_steps = get_count(v, key);
    else if (key == "anneal_t0") c.metric.anneal_t0 = get_real(v, key);
    else if (key == "anneal_cooling") c.metric.anneal_cooling = get_real(v, key);
    else if (key == "motif_cap_graph") c.caps.graph = get_count(v, key);
    else if (key == "motif_cap_stepfunction") c.caps.stepfunction = get_count(v, key);
    else if (key == "confidence_delta") c.confidence_delta = get_real(v, key);
    else if (key == "sigma_margin") c.sigma_margin = get_real(v, key);
    else if (key == "tolerance") c.tolerance = get_real(v, key);
    else if (key == "liminf_tolerance") c.liminf_tolerance = get_real(v, key);
    else if (key == "log_base") c.log_base = get_real(v, key);
    else if (key == "format") c.format = parse_format(get_as<std::string>(v, key));
    else if (key == "overrides") {
      require(v.is_object(), ErrorCode::parse, "config key 'overrides' must be an object");
      for (const auto& [name, x] : v.items()) {
        require(name.find('.') != std::string::npos, ErrorCode::parse,
                "override '" + name + "' must be named experiment.parameter");
        c.overrides[name] = get_real(x, "overrides." + name);
      }
    } else {
      fail(ErrorCode::parse, "unknown config key '" + key + "'");
    }
  }
  require(c.confidence_delta > 0 && c.confidence_delta < 1, ErrorCode::parse, "confidence_delta must be in (0,1)");
  require(c.metric.exact_cap <= 30, ErrorCode::parse, "exact_cap above 30 is not supported");
  return c;
}

Config load_config_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::io, "cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

std::string config_to_json(const Config& c) {
  json j;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["exact_cap"] = c.metric.exact_cap;
  j["heuristic_restarts"] = c.metric.heuristic_restarts;
  j["exhaustive_parts"] = c.metric.exhaustive_parts;
  j["anneal_restarts"] = c.metric.anneal_restarts;
  j["anneal_steps"] = c.metric.anneal_steps;
  j["anneal_t0"] = c.metric.anneal_t0;
  j["anneal_cooling"] = c.metric.anneal_cooling;
  j["motif_cap_graph"] = c.caps.graph;
  j["motif_cap_stepfunction"] = c.caps.stepfunction;
  j["confidence_delta"] = c.confidence_delta;
  j["sigma_margin"] = c.sigma_margin;
  j["tolerance"] = c.tolerance;
  j["liminf_tolerance"] = c.liminf_tolerance;
  j["log_base"] = c.log_base;
  j["format"] = format_name(c.format);
  j["overrides"] = json::object();
  for (const auto& [k, v] : c.overrides) j["overrides"][k] = v;
  return j.dump(2);
}

}  // namespace graphlim
