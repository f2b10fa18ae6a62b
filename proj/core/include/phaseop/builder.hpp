#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "phaseop/fock.hpp"
#include "phaseop/ml_expansion.hpp"
#include "phaseop/numerics.hpp"

namespace phaseop {

enum class Variant {
  full,        // dyad indices n, m from 0
  ln7_literal  // row n = 0 and column m = 0 of chi dropped
};

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

struct BuildSpec {
  std::size_t dim = 0;
  std::optional<std::size_t> pad;  // default: sequence degree + 1
  Variant variant = Variant::full;
  Precision precision;
};

/// Resolved sizes and arithmetic width for one build.
///
/// The dyad product chi * e^{-z0 a^dagger} cancels heavily (binomial growth in
/// chi against the alternating exponential). working_bits is the requested
/// precision plus an a-priori log2 bound on that cancellation, including the
/// sqrt(n!/j!) weights a later Y conjugation applies, so the assembled entries
/// keep the requested precision.
struct BuildPlan {
  std::size_t dim = 0;
  std::size_t pad = 0;
  std::size_t padded_dim = 0;
  mp::Bits requested_bits = 0;
  mp::Bits guard_bits = 0;
  mp::Bits working_bits = 0;
};

BuildPlan plan_build(const PolynomialSequence& seq, const BuildSpec& spec);

/// chi at padded dimension: chi_nm = sqrt(m!/n!) sum_k C_k C(n, m-k) z0^{n-m+k}.
MpFockOperator chi_matrix(const PolynomialSequence& seq, const BuildSpec& spec);

/// f(a) = chi e^{-z0 a^dagger}, formed at padded dimension and cropped.
MpFockOperator build_function_operator(const PolynomialSequence& seq, const BuildSpec& spec);

/// Same operator from the explicit per-k dyad sum (k outer, m = k..n+k) with
/// e^{-z0 a^dagger} summed as a series of creation powers.
MpFockOperator build_direct_dyad(const PolynomialSequence& seq, const BuildSpec& spec);

/// Oracle: sum_k C_k (a - z0)^k by Horner in the matrix argument. Ignores the
/// variant (the literal variant is not a polynomial in a).
MpFockOperator build_polynomial_direct(const PolynomialSequence& seq, const BuildSpec& spec);

/// c'_k = (k + 1) c_{k+1} row by row.
PolynomialSequence derivative_sequence(const PolynomialSequence& seq);

/// ln(a) from the star-expansion coefficients.
MpFockOperator build_ln_a(const MLParams& params, const BuildSpec& spec);
MpFockOperator build_ln_a(unsigned p, const BuildSpec& spec);

/// Phi = -i Y^{-1} ln(a) Y. RangeError when sqrt((dim-1)!) leaves double range.
MpFockOperator build_phase_operator(const MLParams& params, const BuildSpec& spec);
MpFockOperator build_phase_operator(unsigned p, const BuildSpec& spec);
/// -i Y^{-1} L Y for an already built L, at L's dimension and precision.
MpFockOperator phase_from_ln_a(const MpFockOperator& ln_a);

enum class BraForm {
  reciprocal,     // <gamma| components gamma^{-m} / sqrt(m!)
  conjugate_label // conj(gamma)^m / sqrt(m!)
};

/// Default node count 2 (D + deg) + 1 with deg = D - 1 for z0 != 0, else 0.
std::size_t default_quadrature_nodes(std::size_t dim, cplx z0);

/// Trapezoid rule on gamma = R e^{i theta} for
///   -i \oint dgamma/gamma |gamma + z0>~ <gamma~| J e^{-z0 a^dagger}.
MpFockOperator identity_resolution_quadrature(std::size_t dim, double radius, cplx z0, std::size_t nodes,
                                              BraForm bra = BraForm::reciprocal, Precision precision = {});

}  // namespace phaseop
