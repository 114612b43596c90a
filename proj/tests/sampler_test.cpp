#include <gtest/gtest.h>

#include <set>

#include "liftlab/error.hpp"
#include "liftlab/liftings/construct.hpp"
#include "liftlab/linalg/decompose.hpp"
#include "liftlab/linalg/spectral.hpp"
#include "liftlab/sampler/generators.hpp"
#include "liftlab/sampler/rng.hpp"
#include "liftlab/sampler/search.hpp"
#include "liftlab/verify/predicates.hpp"

using namespace liftlab;

TEST(Rng, ReferenceStream) {
  // First output of the reference splitmix64 generator seeded with 0.
  EXPECT_EQ(mix64(0), 0xE220A8397B1DCDAFULL);
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
  EXPECT_EQ(a.counter(), 50u);
  Rng first(42);
  EXPECT_EQ(first.next_u64(), mix64(42 ^ mix64(0)));
}

TEST(Rng, UniformAndNormalMoments) {
  Rng r(7);
  double sum = 0.0, sq = 0.0, csq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double z = r.normal();
    sum += z;
    sq += z * z;
    csq += std::norm(r.complex_normal());
  }
  EXPECT_NEAR(sum / n, 0.0, 0.05);
  EXPECT_NEAR(sq / n, 1.0, 0.05);
  EXPECT_NEAR(csq / n, 1.0, 0.05);
  std::set<std::size_t> seen;
  for (int i = 0; i < 200; ++i) seen.insert(r.uniform_index(3, 5));
  EXPECT_EQ(seen, (std::set<std::size_t>{3, 4, 5}));
}

TEST(Rng, DerivedSeedsDiffer) {
  std::set<std::uint64_t> s;
  for (std::uint64_t i = 0; i < 1000; ++i) s.insert(derive_seed(1, i));
  EXPECT_EQ(s.size(), 1000u);
}

TEST(Generators, UnitaryAndContraction) {
  Rng r(3);
  const Matrix u = random_unitary(r, 5);
  EXPECT_LT(max_abs(u.adjoint() * u - Matrix::identity(5)), 1e-12);
  EXPECT_LT(spectral_norm(random_contraction(r, 4, 3)), 1.0);
}

TEST(Generators, QuasiIsometryBlocks) {
  // V = (1), G = (1).
  const Matrix q = quasi_isometry_from_blocks(Matrix{{1.0}}, Matrix{{1.0}});
  EXPECT_EQ(q, (Matrix{{1.0, 1.0}, {0.0, 0.0}}));
  const Matrix p = quasi_isometry_from_blocks(Matrix{{0.0, 1.0}, {1.0, 0.0}}, Matrix(2, 1));
  EXPECT_LT(max_abs(p * p.adjoint() * p - p), 1e-15);  // partial isometry
  EXPECT_THROW(gen_quasi_isometry(3, 0, 1), InputError);
}

TEST(Generators, HundredQuasiIsometriesPass) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t dim = 2 + seed % 7;
    const Matrix q = gen_quasi_isometry(dim, 1 + seed % dim, seed);
    const PredicateResult r = is_quasi_isometry(q, 1e-12);
    EXPECT_TRUE(r.holds) << seed << " " << r.residual;
  }
}

TEST(Generators, QuasicontractionsAreAccepted) {
  std::size_t proposals = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const QuasicontractionSample s = gen_quasicontraction(2 + seed % 5, seed);
    EXPECT_TRUE(is_quasicontraction(s.t).holds);
    EXPECT_EQ(s.proposals, s.rejects + 1);
    proposals += s.proposals;
  }
  EXPECT_GE(proposals, 60u);
  EXPECT_TRUE(is_quasicontraction(Matrix{{0.0, 2.0}, {0.0, 0.0}}).holds);
}

TEST(Generators, StrictSimilarityIsCertified) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const StrictSimilarity s = gen_strict_similarity(4, 0.7, seed);
    EXPECT_EQ(spectral_radius_trichotomy(s.t).verdict, RadiusVerdict::LessThanOne);
    EXPECT_NEAR(spectral_norm(s.c), 0.7, 1e-12);
    EXPECT_EQ(check_natural_hypotheses(s.t, s.a).overall(), Verdict::Pass);
  }
  EXPECT_THROW(gen_strict_similarity(3, 1.0, 0), InputError);
}

TEST(Generators, ShiftedHostsAreValid) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const ShiftedHost h = gen_shifted_host(1.0 + 0.02 * static_cast<double>(seed), 1 + seed % 4, seed);
    EXPECT_GT(h.t0_norm(), 0.0);
    const GradedOperator t = h.op(), ts = t.adjoint();
    const GradedOperator t1 = ts * t, t2 = ts * ts * t * t, t3 = ts * ts * ts * t * t * t;
    EXPECT_LT(graded_size(t3 - t2), 1e-12 * graded_size(t2));
    const PsdComparison c = graded_psd_compare(t1, t2, 1e-12);
    EXPECT_TRUE(c.order == PsdOrder::Leq || c.order == PsdOrder::Equal);
  }
  EXPECT_NO_THROW(build_shifted_host_certificate(gen_shifted_host(2.0, 1, 5)));
  EXPECT_THROW(gen_shifted_host(0.9, 1, 0), InputError);
}

TEST(Generators, SymmetrySimilarity) {
  const Matrix t = symmetry_similarity(1);
  EXPECT_EQ(t, (Matrix{{0.0, 2.0}, {0.5, 0.0}}));
  const Matrix t3 = symmetry_similarity(3);
  EXPECT_LT(max_abs(t3 * t3 - Matrix::identity(6)), 1e-12);
}

TEST(Generators, SameSeedSameBytes) {
  EXPECT_EQ(to_json(gen_quasi_isometry(5, 2, 77)).dump(), to_json(gen_quasi_isometry(5, 2, 77)).dump());
  EXPECT_EQ(to_json(gen_quasicontraction(4, 77).t).dump(), to_json(gen_quasicontraction(4, 77).t).dump());
  EXPECT_NE(to_json(gen_quasi_isometry(5, 2, 77)).dump(), to_json(gen_quasi_isometry(5, 2, 78)).dump());
}

TEST(Search, EveryClassIsClean) {
  for (const auto& cls : search_classes()) {
    SearchOptions opt;
    opt.class_name = cls;
    opt.dim_lo = 2;
    opt.dim_hi = 4;
    opt.trials = 6;
    opt.seed = 5;
    const SearchOutcome o = search(opt);
    EXPECT_TRUE(o.violations.empty()) << cls << "\n" << to_json(o).dump(2);
    for (const auto& c : o.checks) EXPECT_EQ(o.passes.at(c), 6u) << cls << " " << c;
  }
}

TEST(Search, SymmetryClassRefutesEveryTrial) {
  SearchOptions opt{"symmetry_similarity", 2, 6, 20, 11, {"range_condition"}};
  const SearchOutcome o = search(opt);
  EXPECT_TRUE(o.violations.empty());
  EXPECT_EQ(o.stats.at("refutations") + o.stats.at("equal_to_gram"), 20.0);
  EXPECT_EQ(o.checks, std::vector<std::string>{"range_condition"});
}

TEST(Search, ParallelMatchesSerial) {
  SearchOptions opt{"quasicontraction", 2, 5, 12, 3, {}};
  EXPECT_EQ(to_json(search(opt)).dump(), to_json(search_serial(opt)).dump());
  EXPECT_EQ(to_json(search(opt)).dump(), to_json(search(opt)).dump());
}

TEST(Search, ReplayFromRecordedSeed) {
  SearchOptions opt{"strict_similarity", 2, 4, 4, 9, {}};
  const SearchOutcome o = search(opt);
  const TrialResult r = run_trial(opt, derive_seed(9, 2));
  const Json j = to_json(o);
  EXPECT_EQ(r.outcomes.size(), o.checks.size());
  EXPECT_EQ(j["rng"], "liftlab-ctr64-v1");
  EXPECT_EQ(run_trial(opt, derive_seed(9, 2)).instance.dump(), r.instance.dump());
}

TEST(Search, Errors) {
  EXPECT_THROW(search({"nope", 2, 3, 1, 0, {}}), UnknownClass);
  EXPECT_THROW(search({"quasicontraction", 2, 3, 0, 0, {}}), InputError);
  EXPECT_THROW(search({"quasicontraction", 2, 3, 1, 0, {"bogus"}}), InputError);
  EXPECT_THROW(search({"quasicontraction", 4, 3, 1, 0, {}}), InputError);
}
