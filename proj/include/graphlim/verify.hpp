#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphlim/config.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

// One checked inequality. `relation` is one of "<=", "<", ">=", ">", "==";
// pass means `measured relation bound` held.
struct Assertion {
  std::string description;
  double measured = 0;
  std::string relation;
  double bound = 0;
  bool pass = false;
  std::string reference;  // the statement being exercised
};

// A reported quantity that is not asserted, e.g. a bound that exceeds 1 at
// the configured scale (note "vacuous-at-scale").
struct Record {
  std::string name;
  double value = 0;
  std::string note;
};

struct ExperimentReport {
  std::string name;
  SeedSpec seed;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<Assertion> assertions;
  std::vector<Record> records;
  bool pass = false;
  double runtime_seconds = 0;
};

struct ExperimentInfo {
  std::string name;
  std::string summary;
};

const std::vector<ExperimentInfo>& experiment_catalog();

// Default per-experiment seed: (cfg.seed, [FNV-1a of the name]).
SeedSpec experiment_seed(const Config& cfg, const std::string& name);

// Deterministic for a fixed (name, cfg, seed). Parameters are read from
// cfg.overrides under "name.parameter"; an override the experiment never
// reads is an error, as is an unknown name.
ExperimentReport run_experiment(const std::string& name, const Config& cfg, const SeedSpec& seed);
ExperimentReport run_experiment(const std::string& name, const Config& cfg);

// "all" expands to the whole catalog. Experiments run in parallel; the
// output order follows the request.
std::vector<ExperimentReport> run_experiments(const std::vector<std::string>& names, const Config& cfg);

bool all_pass(const std::vector<ExperimentReport>& reports);

// Schema "graphlim.verify/1". Runtimes are included only when `timing` is
// set, so that reports stay byte-identical across runs.
std::string reports_to_json(const std::vector<ExperimentReport>& reports, const Config& cfg, bool timing = false);
// One row per assertion and per record.
std::string reports_to_csv(const std::vector<ExperimentReport>& reports, bool timing = false);

}  // namespace graphlim
