#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phaseop/builder.hpp"
#include "phaseop/report.hpp"

namespace phaseop {

/// Per-check numeric context shared by most checks.
struct CheckContext {
  std::optional<std::size_t> pad;  // default: sequence degree + 1
  Variant variant = Variant::full;
  Precision precision;
  // Forced star-expansion h; auto-selected when empty.
  std::optional<double> h;
};

inline constexpr double kCoherentTailGate = 1e-14;

/// ln on the principal branch; the region Omega excludes the cut z <= 0.
bool in_ln_domain(cplx z);

MLParams resolve_params(unsigned p, const CheckContext& ctx);

std::vector<CheckRecord> check_stirling_oracle(unsigned max_l = 12);
CheckRecord check_h_constraint(const std::vector<unsigned>& p_grid, const CheckContext& ctx = {});
CheckRecord check_scalar_convergence(cplx z, const std::vector<unsigned>& p_grid, const CheckContext& ctx = {});

/// Dyad, direct per-k dyad and Horner oracle on the leading D block.
CheckRecord check_two_route(const std::string& label, const PolynomialSequence& seq, std::size_t dim,
                            const CheckContext& ctx = {});

/// name.consistency: ||ln(a)|alpha> - S_p(alpha)|alpha>|| / |||alpha>||
/// name.defect:      |S_p(alpha) - ln alpha|, asserted only at alpha = 1.
std::vector<CheckRecord> check_eigen_action(unsigned p, std::size_t dim, cplx alpha, const CheckContext& ctx = {});

/// ||ln(a)|alpha> - ln(alpha)|alpha>|| / |||alpha>|| on the leading D rows.
double ln_eigen_residual(unsigned p, std::size_t dim, cplx alpha, const CheckContext& ctx = {});

/// [f(a), a] = 0 and [f(a), a^dagger] = f'(a) on the block D - pad - 1.
std::vector<CheckRecord> check_commutators(const std::string& label, const PolynomialSequence& seq,
                                           std::size_t dim, const CheckContext& ctx = {});

/// residual_a, agreement with the derivative defect, residual_b, residual_c,
/// and the zero diagonal / trace of [N, Phi].
std::vector<CheckRecord> check_number_conjugacy(unsigned p, std::size_t dim, cplx alpha,
                                                const CheckContext& ctx = {});

/// Phase-vector identity, eigen-residual of Phi and its agreement with the
/// scalar defect |S_p(e^{i phi}) - i phi|.
std::vector<CheckRecord> check_phase_eigenstate(unsigned p, std::size_t dim, double phi, const CheckContext& ctx = {},
                                                bool near_cut = false);

CheckRecord check_time_evolution(std::size_t dim, double phi, double t);

/// Cesaro mean of the truncated overlaps against (1/4pi)(1 + i cot(delta/2)).
CheckRecord check_overlap_formula(std::size_t dim, double delta, double tolerance);

/// Zero diagonal and trace of [N, Phi_D] over the grid; ||Phi_D|n>|| reported.
std::vector<CheckRecord> check_fock_exclusion(unsigned p, const std::vector<std::size_t>& dim_grid, std::size_t n,
                                              const CheckContext& ctx = {});

CheckRecord check_identity_resolution(std::size_t dim, double radius, cplx z0, std::optional<std::size_t> nodes,
                                      BraForm bra = BraForm::reciprocal, Precision precision = {});

/// Trend over (x, residual) pairs: passes when every step strictly decreases.
/// residual is the last value, tolerance the first.
CheckRecord check_decreasing(const std::string& name, const std::string& anchor,
                             const std::vector<std::pair<double, double>>& series);

enum class Profile { fast, all };

std::string to_string(Profile p);
Profile parse_profile(const std::string& name);

struct SuiteConfig {
  Profile profile = Profile::fast;
  unsigned p = 20;
  std::size_t dim = 40;
  CheckContext ctx;
  cplx z0 = 1.0;
  double radius = 1.0;
  std::optional<std::size_t> quad_nodes;
  std::vector<cplx> alphas{1.0, 2.0, {1.0, 1.0}};
  std::vector<double> phis;  // empty: default grid
  std::vector<unsigned> p_grid{5, 10, 20, 40, 80};
  std::map<std::string, double> tolerances;  // overrides by check name
  bool parallel = true;
};

std::vector<double> default_phi_grid();

/// Runs every check in a fixed order. Errors become failed records.
VerificationReport run_suite(const SuiteConfig& config);

}  // namespace phaseop
