#include "liftlab/report.hpp"

#include <cmath>
#include <limits>

#include "liftlab/error.hpp"

namespace liftlab {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

namespace {

Verdict verdict_from_string(const std::string& s) {
  if (s == "PASS") return Verdict::Pass;
  if (s == "FAIL") return Verdict::Fail;
  if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
  throw ParseError("unknown verdict '" + s + "'");
}

}  // namespace

Check& ConditionReport::add_bound(std::string name, double residual, double tol, std::string anchor) {
  return add(std::move(name), residual <= tol, residual, tol, std::move(anchor));
}

Check& ConditionReport::add(std::string name, bool pass, double residual, double tol,
                            std::string anchor) {
  checks_.push_back({std::move(name), pass ? Verdict::Pass : Verdict::Fail, residual, tol,
                     std::move(anchor)});
  return checks_.back();
}

Check& ConditionReport::add_inconclusive(std::string name, double residual, double tol,
                                         std::string anchor) {
  checks_.push_back({std::move(name), Verdict::Inconclusive, residual, tol, std::move(anchor)});
  return checks_.back();
}

void ConditionReport::append(const ConditionReport& other, const std::string& prefix) {
  for (Check c : other.checks_) {
    c.name = prefix + c.name;
    checks_.push_back(std::move(c));
  }
}

const Check* ConditionReport::find(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

bool ConditionReport::passed(const std::string& name) const {
  const Check* c = find(name);
  return c != nullptr && c->verdict == Verdict::Pass;
}

Verdict ConditionReport::overall() const {
  bool inconclusive = false;
  for (const auto& c : checks_) {
    if (c.verdict == Verdict::Fail) return Verdict::Fail;
    if (c.verdict == Verdict::Inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::Inconclusive : Verdict::Pass;
}

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json to_json(const ConditionReport& r) {
  Json j;
  j["overall"] = to_string(r.overall());
  Json checks = Json::array();
  for (const auto& c : r.checks()) {
    Json e;
    e["name"] = c.name;
    e["verdict"] = to_string(c.verdict);
    e["residual"] = number_or_null(c.residual);
    e["tol"] = number_or_null(c.tol);
    e["anchor"] = c.anchor;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

ConditionReport condition_report_from_json(const Json& j) {
  ConditionReport r;
  try {
    for (const auto& e : j.at("checks")) {
      const auto num = [](const Json& x) {
        return x.is_null() ? std::numeric_limits<double>::infinity() : x.get<double>();
      };
      Check& c = r.add_inconclusive(e.at("name").get<std::string>(), num(e.at("residual")),
                                    num(e.at("tol")), e.at("anchor").get<std::string>());
      c.verdict = verdict_from_string(e.at("verdict").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("condition report: ") + e.what());
  }
  return r;
}

}  // namespace liftlab
