#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "phaseop/fock.hpp"
#include "phaseop/mp_real.hpp"
#include "phaseop/numerics.hpp"

namespace phaseop {

/// Star-expansion parameters for ln z at order p.
///
/// gamma = 2 / h^2 and theta = 1 - exp(-h^2 / 2). Valid parameter sets obey
/// 2 h^2 exp(h^2 / 2) < p.
struct MLParams {
  unsigned p = 0;
  double h = 0.0;
  double gamma = 0.0;
  double theta = 0.0;
};

/// 2 h^2 exp(h^2 / 2)
double h_constraint_value(double h);
bool satisfies_h_constraint(unsigned p, double h);

/// Largest h with 2 h^2 exp(h^2 / 2) <= 0.9 p, by bisection on w = h^2.
double select_h(unsigned p);

/// Throws ConstraintViolation if (p, h) break the bound.
MLParams make_ml_params(unsigned p, double h);
MLParams auto_ml_params(unsigned p);

struct CoefficientRow {
  unsigned l = 0;
  std::vector<mp::Complex> c;  // index k = 0..k_max
};

/// sum_l sum_k c_k^(l) (z - z0)^k plus its l-aggregated form C_k.
struct PolynomialSequence {
  mp::Complex z0;
  std::vector<CoefficientRow> rows;
  std::vector<mp::Complex> aggregated;
  std::string domain_note;
  Precision precision;

  std::size_t k_max() const { return aggregated.empty() ? 0 : aggregated.size() - 1; }
  // Highest k with a nonzero aggregated coefficient (0 for the zero sequence).
  std::size_t degree() const;
  // Rebuild aggregated from rows; the l-sum is carried with 64 extra bits and
  // rounded once.
  void recompute_aggregate();
};

inline constexpr const char* kLnDomainNote = "plane cut along negative real axis, principal branch";

/// c_k^(l) = d_k^(l) (-1)^{k+1} / k with d_k^(l) = (k!/l!) gamma^k theta^l c(l, k),
/// l, k = 1..p, expansion center z0 = 1.
PolynomialSequence ml_coefficients(const MLParams& params, Precision precision = {});

/// sum_k C_k (z - z0)^k by Horner at the sequence precision.
mp::Complex scalar_partial_sum(const PolynomialSequence& seq, const mp::Complex& z);
cplx scalar_partial_sum(const PolynomialSequence& seq, cplx z);

/// Single-row sequence with the given coefficients about z0.
PolynomialSequence monomial_sequence(const std::vector<cplx>& coeffs, cplx z0, Precision precision = {});

/// {p, h, gamma, theta, z0: [re, im], C: [[re, im], ...], domain}
nlohmann::json coefficients_to_json(const PolynomialSequence& seq, const MLParams& params);
/// Reads z0, C and the optional domain note into a single-row sequence.
PolynomialSequence sequence_from_json(const nlohmann::json& doc, Precision precision = {});

}  // namespace phaseop
