#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "graphlim/density.hpp"
#include "graphlim/metrics.hpp"

namespace graphlim {

enum class OutputFormat { json, csv };

// Run configuration shared by the CLI and the verify harness. Every field
// has a default; the JSON form rejects unknown keys.
struct Config {
  std::uint64_t seed = 0;
  std::size_t trials = 0;        // 0: each command's own default
  MetricConfig metric;
  MotifCaps caps;
  double confidence_delta = 0.05;  // Hoeffding intervals are (1 - delta)
  double sigma_margin = 5;         // statistical assertions
  double tolerance = 1e-9;         // exact identities in floating point
  double liminf_tolerance = 0.02;  // slack for liminf proxies
  double log_base = 0;             // test thresholds 1/log n; <= 0 is natural log
  OutputFormat format = OutputFormat::json;
  // Per-experiment parameters, keyed "experiment.parameter".
  std::map<std::string, double> overrides;
};

Config parse_config_json(const std::string& text);
Config load_config_file(const std::string& path);
std::string config_to_json(const Config& cfg);

OutputFormat parse_format(const std::string& name);
const char* format_name(OutputFormat f);

// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace graphlim
