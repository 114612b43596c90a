#include "liftlab/sampler/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "liftlab/error.hpp"
#include "liftlab/liftings/construct.hpp"
#include "liftlab/linalg/spectral.hpp"
#include "liftlab/sampler/generators.hpp"
#include "liftlab/sampler/rng.hpp"
#include "liftlab/verify/checks.hpp"
#include "liftlab/verify/predicates.hpp"

namespace liftlab {

namespace {

using CheckFn = std::function<bool()>;
using CheckList = std::vector<std::pair<std::string, CheckFn>>;

struct Instance {
  Json json;
  CheckList checks;
  std::map<std::string, double> stats;
};

constexpr std::size_t kProbes = 8;
constexpr std::size_t kProbeGrade = 6;
constexpr std::size_t kRetries = 5;

bool suite_ok(const LiftingOperator& s, std::uint64_t seed, double tol) {
  return claimed_checks_pass(verify_lifting_suite(s, {kProbes, kProbeGrade, seed, tol}), s.kind());
}

bool all_pass(const ConditionReport& r, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (!r.passed(n)) return false;
  return true;
}

// Both biconditionals co-occur; the individual conditions may fail.
bool structure_agrees(const LiftingOperator& s, double tol) {
  return all_pass(check_left_invertible_structure(s, tol),
                  {"quasi_isometry_criterion_agrees", "paired_conditions_agree"});
}

Instance quasicontraction_instance(std::size_t dim, std::uint64_t seed, double tol) {
  Instance in;
  QuasicontractionSample q;
  std::size_t retries = 0;
  for (;; ++retries) {
    try {
      q = gen_quasicontraction(dim, derive_seed(seed, retries));
      break;
    } catch (const Exhausted&) {
      if (retries + 1 >= kRetries) throw;
    }
  }
  in.stats = {{"proposals", static_cast<double>(q.proposals)},
              {"rejects", static_cast<double>(q.rejects)},
              {"retries", static_cast<double>(retries)}};
  in.json = to_json(q.t);
  const Matrix t = q.t;
  auto lifting = std::make_shared<LiftingOperator>(build_quasicontraction_lifting(t, 0.0, tol));
  in.checks = {
      {"generator", [t] { return is_quasicontraction(t, 1e-12).holds; }},
      {"suite", [lifting, seed, tol] { return suite_ok(*lifting, seed, tol); }},
      {"half_margin", [lifting] { return gram_min_eigenvalue(lifting->gram_blocks()) >= 0.5 - 1e-9; }},
      {"structure", [lifting, tol] { return structure_agrees(*lifting, tol); }},
  };
  return in;
}

Instance quasi_isometry_instance(std::size_t dim, std::uint64_t seed, double tol, bool partial) {
  Rng rng(seed);
  const std::size_t k = rng.uniform_index(1, dim);
  const std::uint64_t s = derive_seed(seed, 1);
  const Matrix q = partial ? gen_partial_isometry(dim, k, s) : gen_quasi_isometry(dim, k, s);
  Instance in;
  in.json = to_json(q);
  auto lifting = std::make_shared<LiftingOperator>(build_left_invertible_lifting(q, tol));
  in.checks = {
      {"generator", [q] { return is_quasi_isometry(q, 1e-12).holds; }},
      {"suite", [lifting, seed, tol] { return suite_ok(*lifting, seed, tol); }},
  };
  if (partial) {
    in.checks.emplace_back("kernel_gap", [lifting, tol] { return kernel_gap(*lifting, kProbeGrade, tol).agree; });
  } else {
    in.checks.emplace_back("structure", [lifting, tol] { return structure_agrees(*lifting, tol); });
  }
  return in;
}

Instance strict_similarity_instance(std::size_t dim, std::uint64_t seed, double tol) {
  Rng rng(seed);
  const double target = 0.2 + 0.7 * rng.uniform();
  const StrictSimilarity inst = gen_strict_similarity(dim, target, derive_seed(seed, 1));
  Instance in;
  in.json = Json{{"t", to_json(inst.t)}, {"a", to_json(inst.a)}, {"target_norm", target}};
  const Matrix t = inst.t, a = inst.a;
  auto lifting = std::make_shared<LiftingOperator>(build_natural_lifting(t, a, tol));
  in.checks = {
      {"trichotomy", [t] { return spectral_radius_trichotomy(t).verdict == RadiusVerdict::LessThanOne; }},
      {"suite", [lifting, seed, tol] { return suite_ok(*lifting, seed, tol); }},
      {"kernel_structure",
       [t, a, tol] {
         return check_kernel_structure(as_operator(t), as_operator(a), tol).report.overall() == Verdict::Pass;
       }},
      {"range_invariance",
       [lifting, tol] { return check_range_invariance(*lifting, tol).passed("sides_agree"); }},
  };
  return in;
}

Instance symmetry_instance(std::size_t dim, std::uint64_t seed, double tol) {
  const std::size_t half = std::max<std::size_t>(1, dim / 2);
  auto r = std::make_shared<Refutation>(refute_symmetry_class(half, 1, seed, tol));
  Instance in;
  in.json = Json{{"t", to_json(r->t)}, {"dim_half", half}};
  in.stats = {{"refutations", static_cast<double>(r->refuted)},
              {"equal_to_gram", static_cast<double>(r->equal_to_gram)}};
  in.checks = {
      {"involution", [r] { return all_pass(r->report, {"involution", "expansive_norm"}); }},
      {"range_condition", [r] { return all_pass(r->report, {"fixed_point", "range_condition_refuted"}); }},
  };
  return in;
}

Instance shifted_host_instance(std::size_t dim, std::uint64_t seed, double tol, bool quasi_isometric) {
  Rng rng(seed);
  const double a = quasi_isometric ? 1.0 : 1.1 + 1.9 * rng.uniform();
  const ShiftedHost host = gen_shifted_host(a, std::max<std::size_t>(dim, 1), derive_seed(seed, 1));
  Instance in;
  in.json = to_json(host);
  const GradedOperator t = host.op();
  const Certificate cert = build_shifted_host_certificate(host);
  if (quasi_isometric) {
    auto natural = std::make_shared<LiftingOperator>(build_natural_lifting(t, cert, tol));
    auto leftinv = std::make_shared<LiftingOperator>(build_left_invertible_lifting(t, tol));
    in.checks = {
        {"range_invariance",
         [natural, tol] { return check_range_invariance(*natural, tol).overall() == Verdict::Pass; }},
        {"suite", [leftinv, seed, tol] { return suite_ok(*leftinv, seed, tol); }},
        {"kernel_gap", [leftinv, tol] { return kernel_gap(*leftinv, kProbeGrade, tol).agree; }},
        {"structure", [leftinv, tol] { return structure_agrees(*leftinv, tol); }},
    };
    return in;
  }
  auto natural = std::make_shared<LiftingOperator>(build_natural_lifting(t, cert, tol));
  const double c = automatic_host_constant(host);
  in.checks = {
      {"certificate", [t, cert, tol] { return check_natural_hypotheses(t, cert.a, tol).overall() == Verdict::Pass; }},
      {"suite", [natural, seed, tol] { return suite_ok(*natural, seed, tol); }},
      {"range_invariance",
       [natural, tol] {
         const ConditionReport r = check_range_invariance(*natural, tol);
         return r.passed("sides_agree") && !r.passed("host_side");
       }},
      {"kernel_structure",
       [t, cert, tol] { return check_kernel_structure(t, cert.a, tol).report.overall() == Verdict::Pass; }},
      {"closed_norms",
       [t, cert, host, c, tol] {
         const ClosedRangeNorms n = check_closed_range_norms(t, cert.a, tol);
         return n.report.overall() == Verdict::Pass && std::abs(n.transformed - host.wt0_norm() / c) <= 1e-10 &&
                std::abs(n.weighted - host.t0_norm() / c) <= 1e-10;
       }},
  };
  return in;
}

Instance make_instance(const std::string& cls, std::size_t dim, std::uint64_t seed, double tol) {
  if (cls == "quasicontraction") return quasicontraction_instance(dim, seed, tol);
  if (cls == "quasi_isometry") return quasi_isometry_instance(dim, seed, tol, false);
  if (cls == "partial_isometry") return quasi_isometry_instance(dim, seed, tol, true);
  if (cls == "strict_similarity") return strict_similarity_instance(dim, seed, tol);
  if (cls == "symmetry_similarity") return symmetry_instance(dim, seed, tol);
  if (cls == "shifted_host") return shifted_host_instance(dim, seed, tol, false);
  if (cls == "shifted_host_qi") return shifted_host_instance(dim, seed, tol, true);
  throw UnknownClass("unknown class " + cls);
}

const std::map<std::string, std::vector<std::string>>& class_table() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"quasicontraction", {"generator", "suite", "half_margin", "structure"}},
      {"quasi_isometry", {"generator", "suite", "structure"}},
      {"partial_isometry", {"generator", "suite", "kernel_gap"}},
      {"strict_similarity", {"trichotomy", "suite", "kernel_structure", "range_invariance"}},
      {"symmetry_similarity", {"involution", "range_condition"}},
      {"shifted_host", {"certificate", "suite", "range_invariance", "kernel_structure", "closed_norms"}},
      {"shifted_host_qi", {"range_invariance", "suite", "kernel_gap", "structure"}},
  };
  return table;
}

std::vector<std::string> resolve_checks(const SearchOptions& opt) {
  const std::vector<std::string> all = class_checks(opt.class_name);
  if (opt.checks.empty()) return all;
  for (const auto& c : opt.checks)
    if (std::find(all.begin(), all.end(), c) == all.end()) {
      throw InputError("class " + opt.class_name + " has no check " + c);
    }
  std::vector<std::string> out;
  for (const auto& c : all)
    if (std::find(opt.checks.begin(), opt.checks.end(), c) != opt.checks.end()) out.push_back(c);
  return out;
}

void validate(const SearchOptions& opt) {
  class_checks(opt.class_name);
  if (opt.trials == 0) throw InputError("search needs at least one trial");
  if (opt.dim_lo < 1 || opt.dim_lo > opt.dim_hi) throw InputError("search needs 1 <= dim_lo <= dim_hi");
}

SearchOutcome collect(const SearchOptions& opt, const std::vector<std::string>& checks,
                      const std::vector<TrialResult>& results) {
  SearchOutcome out;
  out.options = opt;
  out.checks = checks;
  for (const auto& c : checks) out.passes[c] = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const TrialResult& r = results[i];
    for (const auto& [name, ok] : r.outcomes) {
      if (ok) ++out.passes[name];
      else out.violations.push_back({i, derive_seed(opt.seed, i), r.instance, name});
    }
    for (const auto& [k, v] : r.stats) out.stats[k] += v;
  }
  return out;
}

}  // namespace

std::vector<std::string> search_classes() {
  std::vector<std::string> out;
  for (const auto& [k, v] : class_table()) {
    (void)v;
    out.push_back(k);
  }
  return out;
}

std::vector<std::string> class_checks(const std::string& class_name) {
  const auto it = class_table().find(class_name);
  if (it == class_table().end()) throw UnknownClass("unknown class " + class_name);
  return it->second;
}

TrialResult run_trial(const SearchOptions& opt, std::uint64_t trial_seed) {
  const std::vector<std::string> wanted = resolve_checks(opt);
  Rng rng(trial_seed);
  TrialResult r;
  r.dim = rng.uniform_index(opt.dim_lo, opt.dim_hi);
  Instance in = make_instance(opt.class_name, r.dim, derive_seed(trial_seed, 0), opt.tol);
  r.instance = std::move(in.json);
  r.stats = std::move(in.stats);
  for (auto& [name, fn] : in.checks) {
    if (std::find(wanted.begin(), wanted.end(), name) == wanted.end()) continue;
    bool ok = false;
    try {
      ok = fn();
    } catch (const Error&) {
      ok = false;
    }
    r.outcomes.emplace_back(name, ok);
  }
  return r;
}

SearchOutcome search(const SearchOptions& opt) {
  validate(opt);
  const std::vector<std::string> checks = resolve_checks(opt);
  std::vector<TrialResult> results(opt.trials);
  const long n = static_cast<long>(opt.trials);
  std::vector<std::string> errors(opt.trials);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      results[k] = run_trial(opt, derive_seed(opt.seed, k));
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k)
    if (!errors[k].empty()) {
      // Rethrow on the calling thread with the same classification as the serial path.
      run_trial(opt, derive_seed(opt.seed, k));
    }
  return collect(opt, checks, results);
}

SearchOutcome search_serial(const SearchOptions& opt) {
  validate(opt);
  const std::vector<std::string> checks = resolve_checks(opt);
  std::vector<TrialResult> results;
  results.reserve(opt.trials);
  for (std::size_t i = 0; i < opt.trials; ++i) results.push_back(run_trial(opt, derive_seed(opt.seed, i)));
  return collect(opt, checks, results);
}

Json to_json(const SearchOutcome& o) {
  Json violations = Json::array();
  for (const auto& v : o.violations) {
    violations.push_back({{"trial", v.trial}, {"seed", v.seed}, {"check", v.check}, {"instance", v.instance}});
  }
  Json passes = Json::object();
  for (const auto& c : o.checks) passes[c] = o.passes.at(c);
  Json stats = Json::object();
  for (const auto& [k, v] : o.stats) stats[k] = number_or_null(v);
  return Json{{"class", o.options.class_name},
              {"dims", {o.options.dim_lo, o.options.dim_hi}},
              {"trials", o.options.trials},
              {"seed", o.options.seed},
              {"rng", std::string(kRngName)},
              {"checks", o.checks},
              {"passes", passes},
              {"violations", violations},
              {"stats", stats}};
}

}  // namespace liftlab
