#include <cfloat>
#include <cmath>

#include <gtest/gtest.h>

#include "phaseop/report.hpp"

using namespace phaseop;

TEST(Settle, ResidualAgainstTolerance) {
  CheckRecord r;
  r.residual = 1e-13;
  r.tolerance = 1e-12;
  settle(r);
  EXPECT_TRUE(r.passed);
  r.tolerance = 0.0;
  settle(r);
  EXPECT_FALSE(r.passed);
}

TEST(Settle, NonFiniteFails) {
  CheckRecord r;
  r.residual = std::nan("");
  r.tolerance = 1.0;
  settle(r);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.residual, DBL_MAX);
  EXPECT_FALSE(r.note.empty());
}

TEST(Report, CountsIgnoreReportOnly) {
  VerificationReport rep;
  CheckRecord a;
  a.name = "a";
  a.passed = true;
  CheckRecord b;
  b.name = "b";
  b.asserted = false;
  rep.checks = {a, b};
  EXPECT_TRUE(rep.all_passed());
  EXPECT_EQ(rep.asserted_count(), 1u);
  rep.checks[0].passed = false;
  EXPECT_EQ(rep.failure_count(), 1u);
  EXPECT_NE(rep.find("b"), nullptr);
  EXPECT_EQ(rep.find("c"), nullptr);
}

TEST(Report, JsonRoundTrip) {
  VerificationReport rep;
  rep.meta = {{"version", "x"}};
  CheckRecord r;
  r.name = "n";
  r.anchor = "identity";
  r.params = {{"p", 3}, {"alpha", {2.0, 0.0}}};
  r.residual = 1.25e-15;
  r.tolerance = 1e-12;
  r.passed = true;
  r.note = "ok";
  rep.checks.push_back(r);
  const VerificationReport back = report_from_json(to_json(rep));
  ASSERT_EQ(back.checks.size(), 1u);
  EXPECT_EQ(back.checks[0].name, "n");
  EXPECT_EQ(back.checks[0].residual, 1.25e-15);
  EXPECT_EQ(back.checks[0].params, r.params);
  EXPECT_EQ(back.meta, rep.meta);
  EXPECT_EQ(to_json(back).dump(), to_json(rep).dump());
  EXPECT_THROW(report_from_json(nlohmann::json::array()), std::invalid_argument);
}
