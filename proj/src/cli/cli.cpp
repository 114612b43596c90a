#include "liftlab/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>

#include "liftlab/error.hpp"
#include "liftlab/json.hpp"
#include "liftlab/liftings/construct.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/spectral.hpp"
#include "liftlab/linalg/subspace.hpp"
#include "liftlab/sampler/generators.hpp"
#include "liftlab/sampler/search.hpp"
#include "liftlab/verify/checks.hpp"
#include "liftlab/verify/predicates.hpp"

namespace liftlab {

namespace {

// State shared between a command and the error handler, so failures still
// produce a report with the command's config.
struct Session {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
  double tol = kDefaultTolerance;
  std::string out_path;
  Json report;
};

double tolerance_from_env() {
  const char* env = std::getenv("LIFTLAB_TOL");
  if (!env || !*env) return kDefaultTolerance;
  double x = 0.0;
  const char* end = env + std::char_traits<char>::length(env);
  const auto [ptr, ec] = std::from_chars(env, end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x) || x <= 0.0) {
    throw InputError(std::string("LIFTLAB_TOL must be a positive number, got '") + env + "'");
  }
  return x;
}

Json tolerances(double tol) {
  return Json{{"default", tol},
              {"left_invertibility_margin", kLeftInvertibilityMargin},
              {"angle", kAngleTolerance},
              {"lifting_identity", 1e-12},
              {"fiber_isometry", 1e-12},
              {"hilbert_invariance", 1e-10}};
}

void start(Session& s, const std::string& command, Json config) {
  config["tolerances"] = tolerances(s.tol);
  s.report = Json{{"tool", "liftlab"}, {"version", std::string(kToolVersion)}, {"command", command},
                  {"config", std::move(config)}};
}

void emit(Session& s) {
  const std::string text = dump(s.report);
  if (s.out_path.empty() || s.out_path == "-") {
    s.out << text;
    return;
  }
  std::ofstream f(s.out_path, std::ios::binary);
  if (!f) throw InputError("cannot write " + s.out_path);
  f << text;
}

Json read_input(Session& s, const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(s.in), std::istreambuf_iterator<char>());
  } else {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
  }
  return parse_json_text(text);
}

bool is_host_json(const Json& j) { return j.is_object() && j.contains("a") && j.contains("t0"); }

Json nullable(const std::optional<std::string>& s) { return s ? Json(*s) : Json(nullptr); }

const char* status(bool ok) { return ok ? "PASS" : "FAIL"; }

// Certificate for a plain matrix: the given file or the Lyapunov series.
Certificate matrix_certificate(Session& s, const Matrix& t, const std::optional<std::string>& cert) {
  if (cert) return {as_operator(matrix_from_json(read_input(s, *cert))), CertificateSource::User};
  std::optional<Certificate> c = lyapunov_certificate(t);
  if (!c) {
    throw HypothesesFailed("T*AT <= A",
                           "no certificate given and the Lyapunov series did not certify r(T) < 1");
  }
  return *c;
}

Certificate host_certificate(Session& s, const ShiftedHost& host, const std::optional<std::string>& cert) {
  std::optional<double> c;
  if (cert) {
    const Json j = read_input(s, *cert);
    if (!j.is_object() || !j.contains("c")) throw ParseError("host certificate file needs a field c");
    c = finite_number(j["c"], "c");
  }
  return build_shifted_host_certificate(host, c);
}

struct LiftArgs {
  std::string kind;
  std::string input;
  std::optional<std::string> cert;
  std::size_t probes = 16;
  std::size_t grade = 6;
  std::uint64_t seed = 0;
  double margin = 0.0;
};

int cmd_lift(Session& s, const LiftArgs& a) {
  start(s, "lift", Json{{"kind", a.kind}, {"input", a.input}, {"cert", nullable(a.cert)},
                        {"probes", a.probes}, {"grade", a.grade}, {"seed", a.seed}, {"d_margin", a.margin}});
  const Json input = read_input(s, a.input);
  std::optional<LiftingOperator> lifting;
  std::string source = "NONE";
  if (is_host_json(input)) {
    const ShiftedHost host = shifted_host_from_json(input);
    const GradedOperator t = host.op();
    if (a.kind == "quasicontraction") throw WrongKind("the quasicontraction lifting needs a matrix input");
    if (a.kind == "leftinv" && is_quasi_isometry(t, s.tol).holds) {
      lifting = build_left_invertible_lifting(t, s.tol);
    } else {
      const Certificate cert = host_certificate(s, host, a.cert);
      source = to_string(cert.source);
      LiftingOperator natural = build_natural_lifting(t, cert, s.tol);
      if (a.kind == "natural") {
        lifting = std::move(natural);
      } else {
        lifting = build_left_invertible_lifting(t, InnerLifting{natural.op(), natural.embedding()}, s.tol);
      }
    }
  } else {
    const Matrix t = matrix_from_json(input);
    if (a.kind == "quasicontraction") {
      lifting = build_quasicontraction_lifting(t, a.margin, s.tol);
    } else if (a.kind == "leftinv" && is_quasi_isometry(t, s.tol).holds) {
      lifting = build_left_invertible_lifting(t, s.tol);
    } else {
      const Certificate cert = matrix_certificate(s, t, a.cert);
      source = to_string(cert.source);
      const Matrix am = as_matrix(cert.a);
      if (a.kind == "natural") {
        lifting = build_natural_lifting(as_operator(t), Certificate{cert.a, cert.source}, s.tol);
      } else {
        lifting = build_left_invertible_lifting(as_operator(t), build_auxiliary_lifting(t, am, s.tol), s.tol);
      }
    }
  }
  s.report["config"]["certificate_source"] = source;
  const ConditionReport suite = verify_lifting_suite(*lifting, {a.probes, a.grade, a.seed, s.tol});
  const bool ok = claimed_checks_pass(suite, lifting->kind());
  s.report["lifting"] = to_json(*lifting);
  s.report["report"] = to_json(suite);
  s.report["claimed"] = claimed_checks(lifting->kind());
  s.report["status"] = status(ok);
  emit(s);
  return ok ? kExitPass : kExitPropertyFailure;
}

struct VerifyArgs {
  std::string input;
  std::vector<std::string> checks;
  std::optional<std::size_t> probes, grade;
  std::optional<std::uint64_t> seed;
};

const std::vector<std::string> kExtraChecks{"range_invariance", "structure", "kernel_gap"};

template <class T>
T config_or(const Json& wrapped, const char* key, std::optional<T> flag, T fallback) {
  if (flag) return *flag;
  if (wrapped.is_object() && wrapped.contains("config") && wrapped["config"].contains(key)) {
    return wrapped["config"][key].get<T>();
  }
  return fallback;
}

int cmd_verify(Session& s, const VerifyArgs& a) {
  start(s, "verify", Json{{"input", a.input}});
  const Json input = read_input(s, a.input);
  const bool wrapped = input.is_object() && input.contains("lifting");
  const LiftingOperator lifting = lifting_from_json(wrapped ? input["lifting"] : input);
  const Json none;
  const Json& cfg = wrapped ? input : none;
  SuiteOptions opt;
  opt.tol = s.tol;
  opt.probes = config_or<std::size_t>(cfg, "probes", a.probes, opt.probes);
  opt.probe_grade = config_or<std::size_t>(cfg, "grade", a.grade, opt.probe_grade);
  opt.seed = config_or<std::uint64_t>(cfg, "seed", a.seed, 0);

  const std::vector<std::string> suite_names = claimed_checks(lifting.kind());
  std::vector<std::string> selected = a.checks;
  if (selected.empty()) selected = suite_names;
  const ConditionReport suite = verify_lifting_suite(lifting, opt);
  for (const auto& name : selected) {
    const bool extra = std::find(kExtraChecks.begin(), kExtraChecks.end(), name) != kExtraChecks.end();
    if (!extra && !suite.find(name)) throw InputError("unknown check " + name);
  }
  s.report["config"]["probes"] = opt.probes;
  s.report["config"]["grade"] = opt.probe_grade;
  s.report["config"]["seed"] = opt.seed;
  s.report["config"]["checks"] = selected;
  s.report["kind"] = to_string(lifting.kind());
  s.report["report"] = to_json(suite);

  bool ok = true;
  Json results = Json::object();
  for (const auto& name : selected) {
    bool pass = false;
    if (name == "range_invariance") {
      const ConditionReport r = check_range_invariance(lifting, s.tol);
      s.report["range_invariance"] = to_json(r);
      pass = r.passed("sides_agree");
    } else if (name == "structure") {
      const ConditionReport r = check_left_invertible_structure(lifting, s.tol);
      s.report["structure"] = to_json(r);
      pass = r.passed("quasi_isometry_criterion_agrees") && r.passed("paired_conditions_agree");
    } else if (name == "kernel_gap") {
      const KernelGap g = kernel_gap(lifting, opt.probe_grade, s.tol);
      s.report["kernel_gap"] = Json{{"grades", g.grades},
                                    {"dim_first", g.first.dim()},
                                    {"dim_second", g.second.dim()},
                                    {"max_sine", g.max_sine},
                                    {"kernel_condition_residual", g.kernel_condition_residual},
                                    {"agree", g.agree}};
      pass = g.agree;
    } else {
      pass = suite.passed(name);
    }
    results[name] = status(pass);
    ok = ok && pass;
  }
  s.report["selected"] = results;
  s.report["status"] = status(ok);
  emit(s);
  return ok ? kExitPass : kExitPropertyFailure;
}

struct SearchArgs {
  std::string cls;
  std::string dims = "2:4";
  std::size_t trials = 10;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> checks;
};

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  auto number = [&](std::string_view part) {
    std::size_t x = 0;
    const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), x);
    if (ec != std::errc() || ptr != part.data() + part.size()) throw InputError("bad --dims value " + text);
    return x;
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const std::size_t d = number(text);
    return {d, d};
  }
  return {number(std::string_view(text).substr(0, colon)), number(std::string_view(text).substr(colon + 1))};
}

std::uint64_t require_seed(const std::optional<std::uint64_t>& seed, const char* command) {
  if (!seed) throw InputError(std::string(command) + " samples random instances and needs --seed");
  return *seed;
}

int cmd_search(Session& s, const SearchArgs& a) {
  start(s, "search", Json{{"class", a.cls}, {"dims", a.dims}, {"trials", a.trials},
                          {"seed", a.seed ? Json(*a.seed) : Json(nullptr)}, {"checks", a.checks}});
  SearchOptions opt;
  opt.class_name = a.cls;
  std::tie(opt.dim_lo, opt.dim_hi) = parse_dims(a.dims);
  opt.trials = a.trials;
  opt.seed = require_seed(a.seed, "search");
  opt.checks = a.checks;
  opt.tol = s.tol;
  const SearchOutcome o = search(opt);
  s.report["outcome"] = to_json(o);
  const bool ok = o.violations.empty();
  s.report["status"] = status(ok);
  emit(s);
  return ok ? kExitPass : kExitPropertyFailure;
}

struct ExampleArgs {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::size_t dim_half = 1;
  std::size_t samples = 100;
  double a = 2.0;
  std::size_t m = 1;
  std::optional<double> c;
  std::size_t dim = 4;
  double target_norm = 0.8;
  std::size_t probes = 16;
  std::size_t grade = 6;
};

Json closed_form_entry(double got, double want) {
  return Json{{"value", got}, {"closed_form", want}, {"error", std::abs(got - want)},
              {"verdict", status(std::abs(got - want) <= 1e-10)}};
}

int example_symmetry(Session& s, const ExampleArgs& a, std::uint64_t seed) {
  const Refutation r = refute_symmetry_class(a.dim_half, a.samples, seed, s.tol);
  s.report["t"] = to_json(r.t);
  s.report["refutation"] = to_json(r.report);
  s.report["samples"] = r.samples;
  s.report["refuted"] = r.refuted;
  s.report["equal_to_gram"] = r.equal_to_gram;

  // The averaged certificate of B = diag(I, 0) is diag(I, 4I); the natural hypotheses fail on their range clause.
  const std::size_t n = r.t.rows();
  std::vector<double> diag(n, 4.0);
  std::fill(diag.begin(), diag.begin() + static_cast<long>(a.dim_half), 1.0);
  const Matrix am = Matrix::diagonal(std::span<const double>(diag));
  s.report["certificate"] = to_json(am);
  s.report["natural_hypotheses"] = to_json(check_natural_hypotheses(r.t, am, s.tol));
  const LiftingOperator li =
      build_left_invertible_lifting(as_operator(r.t), build_auxiliary_lifting(r.t, am, s.tol), s.tol);
  const ConditionReport suite = verify_lifting_suite(li, {a.probes, a.grade, seed, s.tol});
  s.report["left_invertible_suite"] = to_json(suite);
  const bool ok = r.report.overall() == Verdict::Pass && claimed_checks_pass(suite, li.kind()) &&
                  !suite.passed("hilbert_invariance");
  s.report["status"] = status(ok);
  emit(s);
  return ok ? kExitPass : kExitPropertyFailure;
}

int example_shifted_host(Session& s, const ExampleArgs& a, std::uint64_t seed) {
  const ShiftedHost host = gen_shifted_host(a.a, a.m, seed);
  const Certificate cert = build_shifted_host_certificate(host, a.c);
  const double c = a.c ? *a.c : automatic_host_constant(host);
  const GradedOperator t = host.op();
  s.report["host"] = to_json(host);
  s.report["c"] = c;
  const ConditionReport hyp = check_natural_hypotheses(t, cert.a, s.tol);
  s.report["natural_hypotheses"] = to_json(hyp);
  const LiftingOperator nat = build_natural_lifting(t, cert, s.tol);
  const ConditionReport suite = verify_lifting_suite(nat, {a.probes, a.grade, seed, s.tol});
  s.report["suite"] = to_json(suite);
  const ConditionReport ri = check_range_invariance(nat, s.tol);
  s.report["range_invariance"] = to_json(ri);
  const KernelStructure ks = check_kernel_structure(t, cert.a, s.tol);
  s.report["kernel_structure"] = to_json(ks.report);
  const ClosedRangeNorms norms = check_closed_range_norms(t, cert.a, s.tol);
  s.report["closed_range_norms"] = Json{{"report", to_json(norms.report)},
                                        {"transformed", closed_form_entry(norms.transformed, host.wt0_norm() / c)},
                                        {"weighted", closed_form_entry(norms.weighted, host.t0_norm() / c)}};
  const bool ok = hyp.overall() == Verdict::Pass && claimed_checks_pass(suite, nat.kind()) &&
                  ri.passed("sides_agree") && ks.report.overall() == Verdict::Pass &&
                  norms.report.overall() == Verdict::Pass &&
                  std::abs(norms.transformed - host.wt0_norm() / c) <= 1e-10 &&
                  std::abs(norms.weighted - host.t0_norm() / c) <= 1e-10;
  s.report["status"] = status(ok);
  emit(s);
  return ok ? kExitPass : kExitPropertyFailure;
}

int example_strict_similarity(Session& s, const ExampleArgs& a, std::uint64_t seed) {
  const StrictSimilarity inst = gen_strict_similarity(a.dim, a.target_norm, seed);
  const std::size_t n = inst.t.rows();
  s.report["t"] = to_json(inst.t);
  s.report["a"] = to_json(inst.a);
  const TrichotomyResult tri = spectral_radius_trichotomy(inst.t);
  s.report["spectral_radius"] = to_string(tri.verdict);
  const Matrix r = hermitian_part(inst.a - inst.t.adjoint() * inst.a * inst.t);
  const Matrix p = hermitian_part(inst.a - inst.t.adjoint() * inst.t);
  const double scale = std::max(1.0, spectral_norm(inst.a));
  const std::size_t rank_r = rank(r, rank_tolerance_for_scale(r, scale));
  const std::size_t rank_p = rank(p, rank_tolerance_for_scale(p, scale));
  s.report["full_range"] = Json{{"transform_defect", Json{{"rank", rank_r}, {"verdict", status(rank_r == n)}}},
                                {"gram_defect", Json{{"rank", rank_p}, {"verdict", status(rank_p == n)}}}};
  const LiftingOperator nat = build_natural_lifting(inst.t, inst.a, s.tol);
  const ConditionReport suite = verify_lifting_suite(nat, {a.probes, a.grade, seed, s.tol});
  s.report["suite"] = to_json(suite);
  const bool ok = tri.verdict == RadiusVerdict::LessThanOne && rank_r == n && rank_p == n &&
                  claimed_checks_pass(suite, nat.kind());
  s.report["status"] = status(ok);
  emit(s);
  return ok ? kExitPass : kExitPropertyFailure;
}

int cmd_example(Session& s, const ExampleArgs& a) {
  Json config{{"name", a.name}, {"seed", a.seed ? Json(*a.seed) : Json(nullptr)}, {"probes", a.probes},
              {"grade", a.grade}};
  if (a.name == "ex35") {
    config["dim_half"] = a.dim_half;
    config["samples"] = a.samples;
  } else if (a.name == "thm37") {
    config["a"] = a.a;
    config["m"] = a.m;
    config["c"] = a.c ? Json(*a.c) : Json(nullptr);
  } else {
    config["dim"] = a.dim;
    config["target_norm"] = a.target_norm;
  }
  start(s, "example", std::move(config));
  const std::uint64_t seed = require_seed(a.seed, "example");
  if (a.name == "ex35") return example_symmetry(s, a, seed);
  if (a.name == "thm37") return example_shifted_host(s, a, seed);
  return example_strict_similarity(s, a, seed);
}

struct SpectralArgs {
  std::string input;
  std::size_t max_terms = kDefaultMaxTerms;
};

int cmd_spectral(Session& s, const SpectralArgs& a) {
  start(s, "spectral", Json{{"input", a.input}, {"max_terms", a.max_terms}});
  const Matrix t = matrix_from_json(read_input(s, a.input));
  const TrichotomyResult r = spectral_radius_trichotomy(t, a.max_terms);
  s.report["verdict"] = to_string(r.verdict);
  s.report["terms"] = r.terms;
  s.report["last_increment"] = number_or_null(r.last_increment);
  s.report["partial_sum_norm"] = number_or_null(r.partial_sum_norm);
  s.report["power_norm"] = number_or_null(r.power_norm);
  s.report["lyapunov_residual"] = number_or_null(r.lyapunov_residual);
  s.report["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
  emit(s);
  return r.verdict == RadiusVerdict::Inconclusive ? kExitHypotheses : kExitPass;
}

void report_error(Session& s, const char* type, const std::string& message, const std::string& condition) {
  s.err << "liftlab: " << message << "\n";
  if (s.report.is_null()) return;
  s.report["error"] = Json{{"type", type}, {"condition", condition}, {"message", message}};
  s.report["status"] = "ERROR";
  try {
    emit(s);
  } catch (const std::exception&) {
  }
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::size_t start = 0;
    while (start <= item.size()) {
      const std::size_t comma = item.find(',', start);
      const std::string part = item.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!part.empty()) out.push_back(part);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Session s{in, out, err};
  CLI::App app{"Isometric and quasi-isometric liftings of Hilbert space operators", "liftlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));
  std::string out_path;

  LiftArgs lift;
  CLI::App* lift_cmd = app.add_subcommand("lift", "Build a lifting and verify it");
  lift_cmd->add_option("kind", lift.kind, "natural, quasicontraction or leftinv")
      ->required()
      ->check(CLI::IsMember({"natural", "quasicontraction", "leftinv"}));
  lift_cmd->add_option("--input", lift.input, "T as matrix or shifted host JSON ('-' for stdin)")->required();
  lift_cmd->add_option("--cert", lift.cert, "certificate A (matrix JSON, or {\"c\": x} for a host)");
  lift_cmd->add_option("--probes", lift.probes, "random probes per check");
  lift_cmd->add_option("--grade", lift.grade, "probe grade");
  lift_cmd->add_option("--seed", lift.seed, "probe seed");
  lift_cmd->add_option("--d-margin", lift.margin, "extra margin in d^2 (quasicontraction)");
  lift_cmd->add_option("--out", out_path, "output file");

  VerifyArgs verify;
  std::vector<std::string> verify_checks;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Re-run the checks on a stored lifting");
  verify_cmd->add_option("--input", verify.input, "lifting JSON or a lift report ('-' for stdin)")->required();
  verify_cmd->add_option("--checks", verify_checks, "comma separated check names");
  verify_cmd->add_option("--probes", verify.probes, "random probes per check");
  verify_cmd->add_option("--grade", verify.grade, "probe grade");
  verify_cmd->add_option("--seed", verify.seed, "probe seed");
  verify_cmd->add_option("--out", out_path, "output file");

  SearchArgs srch;
  std::vector<std::string> search_checks;
  CLI::App* search_cmd = app.add_subcommand("search", "Seeded batch search for violations");
  search_cmd->add_option("--class", srch.cls, "operator class")->required();
  search_cmd->add_option("--dims", srch.dims, "dimension range lo:hi");
  search_cmd->add_option("--trials", srch.trials, "number of trials");
  search_cmd->add_option("--seed", srch.seed, "base seed (required)");
  search_cmd->add_option("--checks", search_checks, "comma separated check names");
  search_cmd->add_option("--out", out_path, "output file");

  ExampleArgs ex;
  CLI::App* example_cmd = app.add_subcommand("example", "Reproduce a worked example");
  example_cmd->add_option("name", ex.name, "ex35, thm37 or cor28")
      ->required()
      ->check(CLI::IsMember({"ex35", "thm37", "cor28"}));
  example_cmd->add_option("--seed", ex.seed, "seed (required)");
  example_cmd->add_option("--dim-half", ex.dim_half, "half dimension (symmetry)");
  example_cmd->add_option("--samples", ex.samples, "sampled certificates (symmetry)");
  example_cmd->add_option("--a", ex.a, "first shift weight (shifted host)");
  example_cmd->add_option("--m", ex.m, "tail dimension (shifted host)");
  example_cmd->add_option("--c", ex.c, "certificate constant c (shifted host)");
  example_cmd->add_option("--dim", ex.dim, "dimension (strict similarity)");
  example_cmd->add_option("--target-norm", ex.target_norm, "norm of the similar contraction (strict similarity)");
  example_cmd->add_option("--probes", ex.probes, "random probes per check");
  example_cmd->add_option("--grade", ex.grade, "probe grade");
  example_cmd->add_option("--out", out_path, "output file");

  SpectralArgs spec;
  CLI::App* spectral_cmd = app.add_subcommand("spectral", "Decide r(T) < 1 by the Lyapunov series");
  spectral_cmd->add_option("--input", spec.input, "matrix JSON ('-' for stdin)")->required();
  spectral_cmd->add_option("--max-terms", spec.max_terms, "series budget");
  spectral_cmd->add_option("--out", out_path, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitInputError;
  }
  s.out_path = out_path;

  try {
    s.tol = tolerance_from_env();
    if (*lift_cmd) return cmd_lift(s, lift);
    if (*verify_cmd) {
      verify.checks = split_list(verify_checks);
      return cmd_verify(s, verify);
    }
    if (*search_cmd) {
      srch.checks = split_list(search_checks);
      return cmd_search(s, srch);
    }
    if (*example_cmd) return cmd_example(s, ex);
    if (*spectral_cmd) return cmd_spectral(s, spec);
  } catch (const HypothesesFailed& e) {
    report_error(s, "HypothesesFailed", std::string("hypotheses failed [") + e.condition() + "]: " + e.what(),
                 e.condition());
    return kExitHypotheses;
  } catch (const Exhausted& e) {
    report_error(s, "Exhausted", e.what(), "");
    return kExitHypotheses;
  } catch (const InputError& e) {
    report_error(s, "InputError", e.what(), "");
    return kExitInputError;
  } catch (const Unsupported& e) {
    report_error(s, "Unsupported", e.what(), "");
    return kExitInputError;
  } catch (const std::exception& e) {
    report_error(s, "Error", e.what(), "");
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace liftlab
