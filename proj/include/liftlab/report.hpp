#pragma once

#include <string>
#include <vector>

#include "liftlab/json.hpp"

namespace liftlab {

enum class Verdict { Pass, Fail, Inconclusive };
const char* to_string(Verdict v);

struct Check {
  std::string name;
  Verdict verdict = Verdict::Inconclusive;
  double residual = 0.0;
  double tol = 0.0;
  std::string anchor;  // the condition being tested, as a formula
};

// Ordered list of checks; overall is PASS only when every check passes.
class ConditionReport {
 public:
  // Pass iff residual <= tol.
  Check& add_bound(std::string name, double residual, double tol, std::string anchor);
  Check& add(std::string name, bool pass, double residual, double tol, std::string anchor);
  Check& add_inconclusive(std::string name, double residual, double tol, std::string anchor);
  void append(const ConditionReport& other, const std::string& prefix = "");

  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& name) const;
  bool passed(const std::string& name) const;
  Verdict overall() const;

 private:
  std::vector<Check> checks_;
};

// {"overall": ..., "checks": [{"name", "verdict", "residual", "tol", "anchor"}]}
Json to_json(const ConditionReport& r);
ConditionReport condition_report_from_json(const Json& j);

// Non-finite doubles become null so every report stays valid JSON.
Json number_or_null(double x);

}  // namespace liftlab

namespace liftlab {

// Relative tolerance of each verification check.
inline constexpr double kDefaultTolerance = 1e-9;
// Smallest acceptable eigenvalue of S*S for left invertibility.
inline constexpr double kLeftInvertibilityMargin = 1e-6;
// Largest principal-angle sine at which two subspaces count as equal.
inline constexpr double kAngleTolerance = 1e-8;

}  // namespace liftlab
