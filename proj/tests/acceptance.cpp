// One line per acceptance criterion; exits non-zero if any fails.
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "liftlab/cli/cli.hpp"
#include "liftlab/error.hpp"
#include "liftlab/liftings/construct.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/sampler/generators.hpp"
#include "liftlab/sampler/rng.hpp"
#include "liftlab/verify/checks.hpp"
#include "liftlab/verify/predicates.hpp"

using namespace liftlab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

double residual(const ConditionReport& r, const char* name) {
  const Check* c = r.find(name);
  return c ? c->residual : INFINITY;
}

Outcome symmetry_refutation() {
  Outcome o;
  const Refutation r = refute_symmetry_class(1, 100, 7);
  const double tn = spectral_norm(r.t);
  require(o, residual(r.report, "involution") <= 1e-12, "T^2 != I");
  require(o, std::abs(tn - 2.0) <= 1e-12, "||T|| != 2");
  require(o, r.report.passed("fixed_point"), "A - T*AT not within 1e-10 ||A||");
  require(o, r.samples == 100 && r.refuted + r.equal_to_gram == 100, "a sampled certificate met the range condition");
  std::ostringstream d;
  d << r.refuted << "/" << (r.samples - r.equal_to_gram) << " refuted, max fixed-point residual "
    << residual(r.report, "fixed_point");
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome natural_round_trip() {
  Outcome o;
  double qi = 0.0, lift = 0.0, hilbert = 0.0, lo = INFINITY;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::uint64_t seed = derive_seed(2024, i);
    const std::size_t dim = 2 + i % 5;
    const StrictSimilarity inst = gen_strict_similarity(dim, 0.3 + 0.012 * static_cast<double>(i), seed);
    const LiftingOperator s = build_natural_lifting(inst.t, inst.a);
    const ConditionReport r = verify_lifting_suite(s, {16, 6, seed});
    require(o, r.overall() == Verdict::Pass, "suite failed on instance " + std::to_string(i));
    qi = std::max(qi, residual(r, "quasi_isometry"));
    lift = std::max(lift, residual(r, "lifting_identity"));
    hilbert = std::max(hilbert, residual(r, "hilbert_invariance"));
    lo = std::min(lo, gram_min_eigenvalue(s.gram_blocks()));
  }
  require(o, qi <= 1e-9 && lift <= 1e-12 && hilbert <= 1e-10 && lo >= 1e-6, "threshold exceeded");
  std::ostringstream d;
  d << "max qi " << qi << ", max lifting " << lift << ", max leak " << hilbert << ", min gram " << lo;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome half_bound() {
  Outcome o;
  const LiftingOperator s = build_quasicontraction_lifting(Matrix{{1.0, 1.0}, {0.0, 0.0}});
  require(o, std::abs(s.block("D")(0, 0).real() - std::sqrt(1.5)) <= 1e-14, "D != sqrt(1.5)");
  Matrix h;
  for (const auto& b : s.gram_blocks())
    if (b.name == "H") h = as_matrix(b.block);
  const std::vector<double> ev = hermitian_eig(h).values;
  require(o, ev.size() == 2 && std::abs(ev[0] - 0.5) <= 1e-12 && std::abs(ev[1] - 3.0) <= 1e-12,
          "H block eigenvalues are not {0.5, 3}");
  double lo = INFINITY, fiber = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Matrix t = gen_quasicontraction(2 + i % 5, derive_seed(25, i)).t;
    const LiftingOperator q = build_quasicontraction_lifting(t);
    lo = std::min(lo, gram_min_eigenvalue(q.gram_blocks()));
    const ConditionReport r = verify_lifting_suite(q, {8, 4, i});
    fiber = std::max(fiber, residual(r, "fiber_isometry"));
  }
  require(o, lo >= 0.5 - 1e-9, "gram min eigenvalue below 1/2");
  require(o, fiber <= 1e-12, "fiber probe not norm preserving");
  std::ostringstream d;
  d << "eigenvalues {" << ev[0] << ", " << ev[1] << "}, min gram " << lo << ", max fiber defect " << fiber;
  if (o.pass) o.detail = d.str();
  return o;
}

Outcome range_invariance_biconditional() {
  Outcome o;
  int disagreements = 0, qi_pass = 0, expansive_fail = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const bool qi = i < 50;
    const double a = qi ? 1.0 : 1.05 + 0.04 * static_cast<double>(i - 50);
    const ShiftedHost host = gen_shifted_host(a, 1 + i % 3, derive_seed(24, i));
    const LiftingOperator s = build_natural_lifting(host.op(), build_shifted_host_certificate(host));
    const ConditionReport r = check_range_invariance(s);
    const bool l = r.passed("lifting_side"), h = r.passed("host_side");
    if (l != h) ++disagreements;
    if (qi && l && h) ++qi_pass;
    if (!qi && !l && !h) ++expansive_fail;
  }
  require(o, disagreements == 0 && qi_pass == 50 && expansive_fail == 50, "sides disagree or wrong verdict");
  o.detail = std::to_string(qi_pass) + "/50 both pass at a = 1, " + std::to_string(expansive_fail) +
             "/50 both fail at a > 1, " + std::to_string(disagreements) + " disagreements";
  return o;
}

Outcome kernel_structure_coherence() {
  Outcome o;
  double worst = 0.0;
  int agree = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::uint64_t seed = derive_seed(27, i);
    GradedOperator t, a;
    if (i % 2 == 0) {
      const ShiftedHost host = gen_shifted_host(1.0 + 0.08 * static_cast<double>(i), 1 + i % 3, seed);
      t = host.op();
      a = build_shifted_host_certificate(host).a;
    } else {
      const StrictSimilarity inst = gen_strict_similarity(2 + i % 5, 0.85, seed);
      t = as_operator(inst.t);
      a = as_operator(inst.a);
    }
    const KernelStructure ks = check_kernel_structure(t, a);
    require(o, ks.report.passed("kernel_invariant"), "N0 not invariant on instance " + std::to_string(i));
    require(o, ks.report.passed("kernels_equal"), "N0 != N1 on instance " + std::to_string(i));
    worst = std::max(worst, residual(ks.report, "kernels_equal"));
    if (ks.report.passed("statements_agree")) ++agree;
  }
  require(o, agree == 50, "statements disagree");
  if (o.pass) {
    std::ostringstream d;
    d << "50/50 statements agree, max principal sine " << worst;
    o.detail = d.str();
  }
  return o;
}

Outcome kernel_gap_cross_formula() {
  Outcome o;
  double worst = 0.0;
  int agree = 0;
  for (std::uint64_t i = 0; i < 25; ++i) {
    const std::uint64_t seed = derive_seed(34, i);
    LiftingOperator s;
    if (i % 2 == 0) {
      const std::size_t dim = 2 + i % 5;
      s = build_left_invertible_lifting(gen_partial_isometry(dim, 1 + i % dim, seed));
    } else {
      s = build_left_invertible_lifting(gen_shifted_host(1.0, 1 + i % 3, seed).op());
    }
    const KernelGap g = kernel_gap(s, 6);
    worst = std::max(worst, g.max_sine);
    if (g.agree && g.grades >= 6) ++agree;
  }
  require(o, agree == 25, "formulas disagree");
  std::ostringstream d;
  d << agree << "/25 agree, max principal sine " << worst;
  o.detail = o.pass ? d.str() : o.detail + ", " + d.str();
  return o;
}

Outcome shifted_host_pipeline() {
  Outcome o;
  double worst = 0.0, worst_weighted = 0.0;
  for (std::uint64_t i = 0; i < 25; ++i) {
    const ShiftedHost host = gen_shifted_host(1.1 + 0.1 * static_cast<double>(i), 1 + i % 4, derive_seed(37, i));
    const Certificate cert = build_shifted_host_certificate(host);
    const double c = automatic_host_constant(host);
    require(o, check_natural_hypotheses(host.op(), cert.a).passed("defect_ranges_equal"), "ranges differ");
    try {
      build_natural_lifting(host.op(), cert);
    } catch (const Error& e) {
      require(o, false, std::string("natural lifting failed: ") + e.what());
    }
    const ClosedRangeNorms n = check_closed_range_norms(host.op(), cert.a);
    worst = std::max(worst, std::abs(n.transformed - host.wt0_norm() / c));
    worst_weighted = std::max(worst_weighted, std::abs(n.weighted - host.t0_norm() / c));
  }
  require(o, worst <= 1e-10, "restricted norm differs from ||W T0||/c");
  require(o, worst_weighted <= 1e-10, "weighted norm differs from ||T0||/c");
  std::ostringstream d;
  d << "max |norm - ||W T0||/c| " << worst << ", max |weighted - ||T0||/c| " << worst_weighted;
  if (o.pass) o.detail = d.str();
  return o;
}

std::string run_cli_text(const std::vector<std::string>& args, int& code) {
  std::istringstream in;
  std::ostringstream out, err;
  code = run_cli(args, in, out, err);
  return out.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"example", "ex35", "--dim-half", "2", "--samples", "30", "--seed", "8"},
      {"example", "thm37", "--seed", "8", "--a", "2.5", "--m", "2"},
      {"example", "cor28", "--dim", "4", "--seed", "8"},
      {"search", "--class", "quasicontraction", "--dims", "2:5", "--trials", "20", "--seed", "8"},
      {"search", "--class", "shifted_host_qi", "--dims", "1:3", "--trials", "10", "--seed", "8"},
  };
  for (const auto& c : commands) {
    int c1 = 0, c2 = 0;
    const std::string a = run_cli_text(c, c1), b = run_cli_text(c, c2);
    require(o, c1 == c2 && a == b && !a.empty(), "report differs for " + c[0] + " " + c[1]);
  }
  std::vector<LiftingOperator> liftings{
      build_quasicontraction_lifting(gen_quasicontraction(4, 1).t),
      build_left_invertible_lifting(gen_quasi_isometry(4, 2, 1)),
  };
  const StrictSimilarity inst = gen_strict_similarity(3, 0.7, 1);
  liftings.push_back(build_natural_lifting(inst.t, inst.a));
  const ShiftedHost host = gen_shifted_host(2.0, 2, 1);
  liftings.push_back(build_natural_lifting(host.op(), build_shifted_host_certificate(host)));
  for (const auto& s : liftings) {
    const std::string text = dump(to_json(s));
    const LiftingOperator back = lifting_from_json(parse_json_text(text));
    require(o, back == s && dump(to_json(back)) == text, std::string("round trip failed for ") + to_string(s.kind()));
  }
  if (o.pass) o.detail = "5 commands byte-identical, 4 lifting kinds round-trip exactly";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"symmetry example admits no natural certificate", symmetry_refutation},
      {"natural lifting round trip on strict similarities", natural_round_trip},
      {"quasicontraction lifting attains the 1/2 bound", half_bound},
      {"range invariance sides co-occur on shifted hosts", range_invariance_biconditional},
      {"kernel structure statements agree", kernel_structure_coherence},
      {"kernel gap formulas agree", kernel_gap_cross_formula},
      {"shifted host certificate pipeline", shifted_host_pipeline},
      {"determinism and serialization", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
