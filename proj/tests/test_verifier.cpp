#include <cfloat>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "phaseop/verifier.hpp"

using namespace phaseop;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Domain, Cut) {
  EXPECT_TRUE(in_ln_domain(2.0));
  EXPECT_TRUE(in_ln_domain(cplx(-1.0, 1e-9)));
  EXPECT_FALSE(in_ln_domain(-2.0));
  EXPECT_FALSE(in_ln_domain(0.0));
}

TEST(EigenAction, AlphaOneDefectIsZero) {
  const auto recs = check_eigen_action(20, 40, 1.0);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_TRUE(recs[0].passed);
  EXPECT_EQ(recs[1].residual, 0.0);
  EXPECT_TRUE(recs[1].asserted);
  EXPECT_TRUE(recs[1].passed);
}

TEST(EigenAction, AlphaTwoConsistency) {
  const auto recs = check_eigen_action(40, 60, 2.0);
  EXPECT_LE(recs[0].residual, 1e-10);
  EXPECT_TRUE(recs[0].passed);
  EXPECT_FALSE(recs[1].asserted);
  // |S_40(2) - ln 2| at the auto-selected h, via the scalar oracle
  EXPECT_NEAR(recs[1].residual / 3.9405319121846247e-06, 1.0, 1e-8);
}

TEST(EigenAction, CutIsFlagged) {
  const auto recs = check_eigen_action(20, 40, -2.0);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_FALSE(recs[0].asserted);
  EXPECT_NE(recs[0].note.find("out of domain"), std::string::npos);
}

TEST(EigenAction, TailTooLargeThrows) { EXPECT_THROW(check_eigen_action(10, 10, 3.0), DomainError); }

TEST(EigenResidual, TracksScalarDefect) {
  EXPECT_NEAR(ln_eigen_residual(20, 40, 2.0) / 2.7388523504224477e-05, 1.0, 1e-8);
}

TEST(Commutators, FixturesAndLn) {
  for (const auto& r : check_commutators("z", monomial_sequence({0.0, 1.0}, 0.0), 20)) {
    EXPECT_TRUE(r.passed) << r.name;
  }
  const auto sq = check_commutators("z^2", monomial_sequence({0.0, 0.0, 1.0}, 0.0), 30);
  EXPECT_LE(sq[1].residual, 1e-12);
  const auto ln = check_commutators("ln", ml_coefficients(auto_ml_params(20)), 80);
  for (const auto& r : ln) EXPECT_LE(r.residual, 1e-10) << r.name;
  EXPECT_THROW(check_commutators("z", monomial_sequence({0.0, 1.0}, 0.0), 4), std::invalid_argument);
}

TEST(NumberConjugacy, ResidualsAndTrend) {
  double prev = DBL_MAX;
  for (unsigned p : {10u, 20u, 40u}) {
    const auto recs = check_number_conjugacy(p, 40, 2.0);
    ASSERT_EQ(recs.size(), 5u);
    EXPECT_LT(recs[0].residual, prev);
    prev = recs[0].residual;
    EXPECT_TRUE(recs[1].passed);  // agreement with |2 S'(2) - 1|
    EXPECT_NEAR(recs[2].residual, recs[0].residual, 1e-12);
    EXPECT_LE(recs[3].residual, 1e-12);
    EXPECT_EQ(recs[4].residual, 0.0);
  }
}

TEST(NumberConjugacy, DerivativeDefectOracle) {
  // |2 S_20'(2) - 1| at h = 1.5, independent evaluation
  CheckContext ctx;
  ctx.h = 1.5;
  const auto recs = check_number_conjugacy(20, 40, 2.0, ctx);
  EXPECT_NEAR(recs[0].residual / 2.6208312572388048e-6, 1.0, 1e-8);
}

TEST(PhaseEigenstate, IdentityAndAgreement) {
  const auto recs = check_phase_eigenstate(20, 40, kPi / 3);
  EXPECT_LE(recs[0].residual, 1e-12);
  EXPECT_TRUE(recs[2].passed);
  const auto half = check_phase_eigenstate(20, 40, kPi / 2);
  // |S_20(i) - i pi/2| at the auto-selected h
  EXPECT_NEAR(half[1].residual / 0.68739042375551403, 1.0, 1e-10);
}

TEST(PhaseEigenstate, NearCutWorse) {
  const double far = check_phase_eigenstate(20, 40, kPi / 4)[1].residual;
  const double near = check_phase_eigenstate(20, 40, 3.0, {}, true)[1].residual;
  EXPECT_GT(near, far);
  EXPECT_THROW(check_phase_eigenstate(20, 40, kPi), DomainError);
}

TEST(TimeEvolution, Cases) {
  EXPECT_EQ(check_time_evolution(30, 0.4, 0.0).residual, 0.0);
  EXPECT_LE(check_time_evolution(50, -kPi / 4, kPi / 2).residual, 1e-12);
  EXPECT_THROW(check_time_evolution(50, kPi / 2, kPi), DomainError);
}

TEST(Overlap, CycleAverages) {
  const CheckRecord pi = check_overlap_formula(1000, kPi, 1e-12);
  EXPECT_TRUE(pi.passed);
  EXPECT_NEAR(pi.params["cesaro_mean"][0].get<double>(), 1.0 / (4.0 * kPi), 1e-15);
  const CheckRecord quarter = check_overlap_formula(1000, kPi / 2, 1e-12);
  EXPECT_NEAR(quarter.params["cesaro_mean"][1].get<double>(), 1.0 / (4.0 * kPi), 1e-15);
  EXPECT_THROW(check_overlap_formula(10, 0.0, 1.0), DomainError);
}

TEST(Overlap, GenericDeltaDecreases) {
  const double r2 = check_overlap_formula(100, 1.0, 1.0).residual;
  const double r3 = check_overlap_formula(1000, 1.0, 1.0).residual;
  const double r4 = check_overlap_formula(10000, 1.0, 1.0).residual;
  EXPECT_LT(r3, r2);
  EXPECT_LT(r4, r3);
  EXPECT_LE(r4, 1e-2);
}

TEST(FockExclusion, ZeroDiagonalAndFlatVacuumNorm) {
  const auto recs = check_fock_exclusion(20, {20, 40}, 0);
  EXPECT_EQ(recs[0].residual, 0.0);
  EXPECT_TRUE(recs[0].passed);
  EXPECT_FALSE(recs[1].asserted);
  const auto& s = recs[1].params["series"];
  // Phi is upper triangular, so Phi_D|0> = -i b_0 |0> at every D
  EXPECT_DOUBLE_EQ(s[0]["norm"].get<double>(), s[1]["norm"].get<double>());
}

TEST(IdentityResolution, Cells) {
  EXPECT_TRUE(check_identity_resolution(8, 1.0, 1.0, 32).passed);
  EXPECT_TRUE(check_identity_resolution(16, 1.0, 0.0, 40).passed);
  EXPECT_TRUE(check_identity_resolution(8, 0.5, 1.0, std::nullopt).passed);
  const CheckRecord conj = check_identity_resolution(8, 0.5, 1.0, std::nullopt, BraForm::conjugate_label);
  EXPECT_FALSE(conj.asserted);
  EXPECT_GT(conj.residual, 0.1);
}

TEST(Decreasing, StrictSeries) {
  EXPECT_TRUE(check_decreasing("t", "a", {{1, 3.0}, {2, 2.0}, {3, 1.0}}).passed);
  EXPECT_FALSE(check_decreasing("t", "a", {{1, 3.0}, {2, 3.0}, {3, 1.0}}).passed);
  EXPECT_FALSE(check_decreasing("t", "a", {{1, 1.0}, {2, 2.0}}).passed);
}

TEST(Profile, Names) {
  EXPECT_EQ(parse_profile("fast"), Profile::fast);
  EXPECT_EQ(to_string(Profile::all), "all");
  EXPECT_THROW(parse_profile("slow"), std::invalid_argument);
}

class SuiteTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { report_ = new VerificationReport(run_suite(SuiteConfig{})); }
  static void TearDownTestSuite() { delete report_; }
  static VerificationReport* report_;
};
VerificationReport* SuiteTest::report_ = nullptr;

TEST_F(SuiteTest, DefaultPasses) {
  EXPECT_TRUE(report_->all_passed());
  EXPECT_GE(report_->checks.size(), 12u);
  for (const auto& c : report_->checks) {
    EXPECT_FALSE(c.anchor.empty()) << c.name;
    EXPECT_GE(c.residual, 0.0) << c.name;
    if (c.asserted) EXPECT_TRUE(c.passed) << c.name << " " << c.residual << " " << c.note;
  }
}

TEST_F(SuiteTest, FastSkipsLargeCells) {
  for (const auto& c : report_->checks) {
    if (c.params.contains("D") && c.params["D"].is_number()) {
      // overlap sums are not operator cells
      if (c.name.rfind("overlap", 0) == 0) continue;
      EXPECT_LE(c.params["D"].get<std::size_t>(), 100u) << c.name;
    }
  }
}

TEST_F(SuiteTest, JsonRoundTrip) {
  const nlohmann::json j = to_json(*report_);
  ASSERT_TRUE(j.contains("meta"));
  ASSERT_TRUE(j["checks"].is_array());
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c["name"].is_string());
    EXPECT_TRUE(c["params"].is_object());
    EXPECT_TRUE(c["residual"].is_number());
    EXPECT_TRUE(c["tolerance"].is_number());
    EXPECT_TRUE(c["passed"].is_boolean());
  }
  const VerificationReport back = report_from_json(j);
  EXPECT_EQ(to_json(back).dump(), j.dump());
}

TEST(Suite, ToleranceOverrideFails) {
  SuiteConfig cfg;
  cfg.p_grid = {5, 10};
  cfg.tolerances["number_conjugacy.conjugation"] = 0.0;
  const VerificationReport r = run_suite(cfg);
  EXPECT_FALSE(r.all_passed());
  const CheckRecord* c = r.find("number_conjugacy.conjugation[alpha=2,p=20,D=40]");
  ASSERT_NE(c, nullptr);
  EXPECT_FALSE(c->passed);
  EXPECT_EQ(c->tolerance, 0.0);
}

TEST(Suite, DeterministicOrder) {
  SuiteConfig cfg;
  cfg.p_grid = {5, 10};
  cfg.parallel = false;
  const VerificationReport a = run_suite(cfg);
  cfg.parallel = true;
  const VerificationReport b = run_suite(cfg);
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].name, b.checks[i].name);
    EXPECT_EQ(a.checks[i].residual, b.checks[i].residual);
  }
}
