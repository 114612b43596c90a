#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "liftlab/json.hpp"
#include "liftlab/report.hpp"

namespace liftlab {

struct SearchOptions {
  std::string class_name;
  std::size_t dim_lo = 2;
  std::size_t dim_hi = 4;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::vector<std::string> checks;  // empty: every check of the class
  double tol = kDefaultTolerance;
};

struct Violation {
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // replay with the same class and dims
  Json instance;
  std::string check;
};

struct SearchOutcome {
  SearchOptions options;
  std::vector<std::string> checks;  // resolved list, in class order
  std::vector<Violation> violations;
  std::map<std::string, std::size_t> passes;  // per check
  std::map<std::string, double> stats;        // class telemetry (rejects, refutations, ...)
};

std::vector<std::string> search_classes();
// Check names of a class, in evaluation order. Throws UnknownClass.
std::vector<std::string> class_checks(const std::string& class_name);

// Per-trial seeds are derive_seed(seed, trial); results are ordered by trial.
SearchOutcome search(const SearchOptions& opt);
SearchOutcome search_serial(const SearchOptions& opt);

// Outcome of one trial, as used by search; exposed for replay.
struct TrialResult {
  std::size_t dim = 0;
  Json instance;
  std::vector<std::pair<std::string, bool>> outcomes;
  std::map<std::string, double> stats;
};
TrialResult run_trial(const SearchOptions& opt, std::uint64_t trial_seed);

Json to_json(const SearchOutcome& o);

}  // namespace liftlab
