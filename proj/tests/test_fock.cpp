#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "phaseop/fock.hpp"

using namespace phaseop;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Ladder, AnnihilationEntries) {
  const FockOperator a = ladder_matrix(LadderKind::annihilation, 4);
  EXPECT_EQ(a(0, 1), cplx(1.0));
  EXPECT_NEAR(a(1, 2).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(a(2, 3).real(), std::sqrt(3.0), 1e-15);
  EXPECT_EQ(a(1, 0), cplx(0.0));
  EXPECT_EQ(a(0, 0), cplx(0.0));
}

TEST(Ladder, CreationIsAdjoint) {
  const FockOperator a = ladder_matrix(LadderKind::annihilation, 6);
  const FockOperator ad = ladder_matrix(LadderKind::creation, 6);
  EXPECT_EQ((a.adjoint() - ad).frobenius_norm(), 0.0);
}

TEST(Ladder, CommutatorIsIdentityExceptLastRow) {
  const std::size_t d = 8;
  const FockOperator c =
      commutator(ladder_matrix(LadderKind::annihilation, d), ladder_matrix(LadderKind::creation, d));
  for (std::size_t n = 0; n + 1 < d; ++n) EXPECT_NEAR(c(n, n).real(), 1.0, 1e-14);
  EXPECT_NEAR(c(d - 1, d - 1).real(), -static_cast<double>(d - 1), 1e-13);
}

TEST(Ladder, NumberIsCreationTimesAnnihilation) {
  const std::size_t d = 7;
  const FockOperator n =
      ladder_matrix(LadderKind::creation, d) * ladder_matrix(LadderKind::annihilation, d);
  EXPECT_LT((n - number_matrix(d)).frobenius_norm(), 1e-13);
}

TEST(Ladder, MpMatchesDouble) {
  const MpFockOperator a = ladder_matrix(LadderKind::annihilation, 5, Precision(200));
  EXPECT_LT((to_double(a) - ladder_matrix(LadderKind::annihilation, 5)).frobenius_norm(), 1e-15);
  EXPECT_EQ(a(1, 2).precision(), 200);
}

TEST(Operators, DimensionMismatchThrows) {
  EXPECT_THROW(ladder_matrix(LadderKind::annihilation, 3) * number_matrix(4), DimensionMismatch);
  EXPECT_THROW(number_matrix(3) + number_matrix(2), DimensionMismatch);
  EXPECT_THROW(number_matrix(3).crop(4), DimensionMismatch);
}

TEST(Operators, ExpINumberIsDiagonalPhase) {
  const FockOperator u = exp_i_number(5, 0.3);
  for (std::size_t n = 0; n < 5; ++n) {
    EXPECT_NEAR(std::abs(u(n, n) - std::polar(1.0, 0.3 * n)), 0.0, 1e-15);
  }
}

TEST(ExpScaledCreation, ClosedForm) {
  const cplx z0(0.7, -0.2);
  const FockOperator e = exp_scaled_creation(6, z0);
  // <3|.|1> = (-z0)^2 sqrt(3!/1!) / 2!
  EXPECT_NEAR(std::abs(e(3, 1) - std::pow(-z0, 2) * std::sqrt(6.0) / 2.0), 0.0, 1e-15);
  EXPECT_EQ(e(1, 3), cplx(0.0));
  EXPECT_EQ(e(4, 4), cplx(1.0));
  const MpFockOperator m = exp_scaled_creation(6, mp::Complex(z0, 150), Precision(150));
  EXPECT_LT((to_double(m) - e).frobenius_norm(), 1e-14);
}

TEST(ExpScaledCreation, InverseIsPositiveShift) {
  const cplx z0(1.0);
  const FockOperator p = exp_scaled_creation(10, z0) * exp_scaled_creation(10, -z0);
  EXPECT_LT((p - FockOperator::identity(10)).frobenius_norm(), 1e-12);
}

TEST(Coherent, AmplitudesAndNorm) {
  const FockVector v = coherent_vector(40, cplx(1.0));
  EXPECT_NEAR(v[0].real(), std::exp(-0.5), 1e-15);
  EXPECT_NEAR(v[2].real(), std::exp(-0.5) / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(v.norm(), 1.0, 1e-14);
  const FockVector u = coherent_vector(3, cplx(0.0, 2.0), Normalization::unnormalized);
  EXPECT_NEAR(std::abs(u[2] - cplx(-4.0) / std::sqrt(2.0)), 0.0, 1e-15);
}

TEST(Coherent, IsAnnihilationEigenvector) {
  const cplx alpha(0.6, 0.8);
  const std::size_t d = 30;
  const FockVector v = coherent_vector(d, alpha);
  const FockVector av = ladder_matrix(LadderKind::annihilation, d) * v;
  for (std::size_t n = 0; n + 1 < d; ++n) EXPECT_NEAR(std::abs(av[n] - alpha * v[n]), 0.0, 1e-15);
}

TEST(Coherent, MpAgreesWithDouble) {
  const MpFockVector v = coherent_vector(20, cplx(2.0, -1.0), Normalization::normalized, Precision(256));
  EXPECT_LT((to_double(v) - coherent_vector(20, cplx(2.0, -1.0))).norm(), 1e-14);
}

TEST(Coherent, TailMass) {
  EXPECT_NEAR(coherent_tail_mass(1, 1.0), 1.0 - std::exp(-1.0), 1e-15);
  EXPECT_LT(coherent_tail_mass(40, 2.0), 1e-14);
  EXPECT_GT(coherent_tail_mass(5, 2.0), 1e-2);
  EXPECT_EQ(coherent_tail_mass(3, 0.0), 0.0);
}

TEST(PhaseVector, Components) {
  const FockVector v = phase_vector(4, kPi / 3);
  const double s = 1.0 / std::sqrt(2.0 * kPi);
  EXPECT_NEAR(std::abs(v[0] - cplx(s)), 0.0, 1e-16);
  EXPECT_NEAR(std::abs(v[3] - s * std::polar(1.0, kPi)), 0.0, 1e-15);
}

TEST(PhaseVector, RejectsBoundary) {
  EXPECT_THROW(phase_vector(4, kPi), DomainError);
  EXPECT_THROW(phase_vector(4, -kPi), DomainError);
  EXPECT_THROW(phase_vector(4, 4.0), DomainError);
  EXPECT_NO_THROW(phase_vector(4, 3.14));
}

TEST(DiagonalY, DirectAndInverse) {
  const FockOperator y = diagonal_y(6, YForm::direct);
  const FockOperator yi = diagonal_y(6, YForm::inverse);
  EXPECT_NEAR(y(5, 5).real(), 1.0 / std::sqrt(120.0), 1e-16);
  EXPECT_NEAR(yi(4, 4).real(), std::sqrt(24.0), 1e-14);
  EXPECT_LT((y * yi - FockOperator::identity(6)).frobenius_norm(), 1e-14);
}

TEST(DiagonalY, RangeLimit) {
  const std::size_t max = max_double_y_dim();
  EXPECT_GT(max, 250u);
  EXPECT_NO_THROW(diagonal_y(max, YForm::inverse));
  EXPECT_THROW(diagonal_y(max + 1, YForm::inverse), RangeError);
  // the mp form has no double range limit
  const MpFockOperator big = diagonal_y(max + 10, YForm::inverse, Precision(113));
  EXPECT_TRUE(big(max + 9, max + 9).re.is_finite());
  try {
    diagonal_y(max + 5, YForm::inverse);
  } catch (const RangeError& e) {
    EXPECT_EQ(e.dimension(), max + 5);
  }
}

TEST(JWeight, Entries) {
  const FockOperator j = j_weight(5);
  EXPECT_NEAR(j(4, 4).real(), 24.0 / (2.0 * kPi), 1e-14);
  EXPECT_NEAR(j(0, 0).real(), 1.0 / (2.0 * kPi), 1e-16);
}

TEST(MpOperators, ProductMatchesDouble) {
  const FockOperator a = ladder_matrix(LadderKind::annihilation, 6) + cplx(0.0, 0.5) * number_matrix(6);
  const FockOperator b = exp_scaled_creation(6, cplx(0.3, 0.1));
  const MpFockOperator am = to_mp(a, Precision(128));
  const MpFockOperator bm = to_mp(b, Precision(128));
  EXPECT_LT((to_double(am * bm) - a * b).frobenius_norm(), 1e-14);
  const FockVector v = coherent_vector(6, cplx(0.4));
  EXPECT_LT((to_double(am * to_mp(v, Precision(128))) - a * v).norm(), 1e-15);
}

TEST(MpOperators, ToDoubleRangeError) {
  MpFockOperator m(2, 113);
  m(0, 0) = mp::Complex{mp::exp(mp::Real(1000.0, 113)), mp::Real(0L, 113)};
  EXPECT_THROW(to_double(m), RangeError);
}
