#include "phaseop/builder.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "phaseop/errors.hpp"

namespace phaseop {

std::string to_string(Variant v) { return v == Variant::full ? "full" : "ln7-literal"; }

Variant parse_variant(const std::string& name) {
  if (name == "full") return Variant::full;
  if (name == "ln7-literal") return Variant::ln7_literal;
  throw std::invalid_argument("unknown variant '" + name + "' (expected full or ln7-literal)");
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

std::vector<double> ln_fact_table(std::size_t n) {
  std::vector<double> t(n + 1);
  for (std::size_t k = 0; k <= n; ++k) t[k] = ln_factorial(static_cast<unsigned>(k));
  return t;
}

// Per-k magnitude sum_l |c_k^(l)|, which bounds both the aggregated and the
// row-wise coefficient paths.
std::vector<double> coefficient_magnitudes(const PolynomialSequence& seq) {
  std::vector<double> out(seq.k_max() + 1, 0.0);
  for (const auto& row : seq.rows)
    for (std::size_t k = 0; k < row.c.size() && k < out.size(); ++k) out[k] += std::abs(row.c[k].to_std());
  return out;
}

double cancellation_log_bound(const PolynomialSequence& seq, std::size_t padded) {
  const std::vector<double> lf = ln_fact_table(2 * padded + seq.k_max());
  const std::vector<double> mag = coefficient_magnitudes(seq);
  const std::size_t kmax = seq.k_max();
  const double r = std::abs(seq.z0.to_std());
  const double log_r = r > 0.0 ? std::log(r) : kNegInf;
  auto log_binom = [&](std::size_t n, std::size_t i) { return lf[n] - lf[i] - lf[n - i]; };
  auto log_pow_r = [&](std::size_t e) { return e == 0 ? 0.0 : static_cast<double>(e) * log_r; };

  // max over (n, m, j) of log|chi_nm| + log|E_mj| + max(0, log sqrt(n!/j!))
  double bound = 0.0;
  for (std::size_t n = 0; n < padded; ++n) {
    for (std::size_t m = 0; m < padded && m <= n + kmax; ++m) {
      double lsum = kNegInf;
      const std::size_t k_lo = m > n ? m - n : 0;
      for (std::size_t k = k_lo; k <= std::min(m, kmax); ++k) {
        if (mag[k] == 0.0) continue;
        const std::size_t e = n - m + k;
        if (e > 0 && r == 0.0) continue;
        lsum = log_add(lsum, std::log(mag[k]) + log_binom(n, m - k) + log_pow_r(e));
      }
      if (lsum == kNegInf) continue;
      const double lchi = 0.5 * (lf[m] - lf[n]) + lsum;
      const std::size_t j_lo = r == 0.0 ? m : 0;
      for (std::size_t j = j_lo; j <= m; ++j) {
        const double le = log_pow_r(m - j) + 0.5 * (lf[m] - lf[j]) - lf[m - j];
        const double w = std::max(0.0, 0.5 * (lf[n] - lf[j]));
        bound = std::max(bound, lchi + le + w);
      }
    }
  }
  // Horner intermediates: sum_k |C_k| (1 + |z0|)^k times the creation-ratio growth.
  double lh = kNegInf;
  for (std::size_t k = 0; k <= kmax; ++k)
    if (mag[k] > 0.0) lh = log_add(lh, std::log(mag[k]) + static_cast<double>(k) * std::log1p(r));
  if (lh != kNegInf) {
    for (std::size_t n = 0; n < padded; ++n) {
      const std::size_t top = std::min(padded - 1, n + kmax);
      bound = std::max(bound, lh + 0.5 * (lf[top] - lf[n]));
    }
  }
  return bound;
}

struct Working {
  BuildPlan plan;
  Precision precision;
  std::vector<mp::Complex> coeffs;  // aggregated, widened
  mp::Complex z0;
};

Working prepare(const PolynomialSequence& seq, const BuildSpec& spec) {
  Working w;
  w.plan = plan_build(seq, spec);
  w.precision = Precision(w.plan.working_bits);
  for (const auto& c : seq.aggregated) w.coeffs.push_back(c.rounded_to(w.plan.working_bits));
  w.z0 = seq.z0.rounded_to(w.plan.working_bits);
  return w;
}

bool dropped(Variant v, std::size_t n, std::size_t m) { return v == Variant::ln7_literal && (n == 0 || m == 0); }

MpFockOperator chi_impl(const Working& w, Variant variant) {
  const std::size_t size = w.plan.padded_dim;
  const mp::Bits bits = w.plan.working_bits;
  const std::size_t kmax = w.coeffs.empty() ? 0 : w.coeffs.size() - 1;

  std::vector<mp::Complex> z0_pow;
  z0_pow.reserve(size);
  z0_pow.emplace_back(mp::Real(1L, bits), mp::Real(bits));
  for (std::size_t e = 1; e < size; ++e) z0_pow.push_back(z0_pow.back() * w.z0);

  std::vector<mp::Real> half_ln_fact;
  half_ln_fact.reserve(size);
  for (std::size_t k = 0; k < size; ++k)
    half_ln_fact.push_back(ln_factorial(static_cast<unsigned>(k), w.precision) * mp::Real(0.5, bits));

  MpFockOperator chi(size, bits);
  std::vector<mp::Complex> row;  // C(n, i) z0^{n-i}
  for (std::size_t n = 0; n < size; ++n) {
    row.clear();
    for (std::size_t i = 0; i <= n; ++i)
      row.push_back(mp::Real(binomial(static_cast<unsigned>(n), static_cast<long>(i)), bits) * z0_pow[n - i]);
    for (std::size_t m = 0; m < size && m <= n + kmax; ++m) {
      if (dropped(variant, n, m)) continue;
      mp::Complex acc(bits);
      const std::size_t k_lo = m > n ? m - n : 0;
      for (std::size_t k = k_lo; k <= std::min(m, kmax); ++k) {
        if (w.coeffs[k].is_zero()) continue;
        mp::fma_acc(acc, w.coeffs[k], row[m - k]);
      }
      if (acc.is_zero()) continue;
      acc *= to_value(SignedLogReal::from_log(1, half_ln_fact[m] - half_ln_fact[n]), w.precision);
      chi(n, m) = std::move(acc);
    }
  }
  return chi;
}

// e^{-z0 a^dagger} = sum_r (-z0 a^dagger)^r / r!, exact on the block since
// (a^dagger)^size vanishes there.
MpFockOperator exp_creation_series(std::size_t size, const mp::Complex& z0, mp::Bits bits) {
  MpFockOperator sum = MpFockOperator::identity(size, bits);
  if (z0.is_zero()) return sum;
  std::vector<mp::Real> root;
  for (std::size_t j = 0; j <= size; ++j) root.push_back(mp::sqrt(mp::Real(static_cast<long>(j), bits)));
  MpFockOperator term = MpFockOperator::identity(size, bits);
  for (std::size_t r = 1; r < size; ++r) {
    const mp::Complex scale = -z0 * mp::Complex{mp::Real(1L, bits) / mp::Real(static_cast<long>(r), bits)};
    MpFockOperator next(size, bits);
    for (std::size_t n = 0; n < size; ++n)
      for (std::size_t j = 0; j + 1 < size; ++j) {
        const mp::Complex& x = term(n, j + 1);
        if (x.is_zero()) continue;
        next(n, j) = x * root[j + 1] * scale;
      }
    term = std::move(next);
    sum += term;
  }
  return sum;
}

}  // namespace

BuildPlan plan_build(const PolynomialSequence& seq, const BuildSpec& spec) {
  if (spec.dim == 0) throw std::invalid_argument("build dimension must be positive");
  BuildPlan plan;
  plan.dim = spec.dim;
  plan.pad = spec.pad.value_or(seq.k_max() + 1);
  plan.padded_dim = plan.dim + plan.pad;
  plan.requested_bits = spec.precision.bits();
  const double bound = cancellation_log_bound(seq, plan.padded_dim) / std::numbers::ln2;
  plan.guard_bits = static_cast<mp::Bits>(std::ceil(std::max(bound, 0.0))) +
                    static_cast<mp::Bits>(std::ceil(std::log2(static_cast<double>(plan.padded_dim)))) + 16;
  plan.working_bits = plan.requested_bits + plan.guard_bits;
  return plan;
}

MpFockOperator chi_matrix(const PolynomialSequence& seq, const BuildSpec& spec) {
  return chi_impl(prepare(seq, spec), spec.variant);
}

MpFockOperator build_function_operator(const PolynomialSequence& seq, const BuildSpec& spec) {
  const Working w = prepare(seq, spec);
  const MpFockOperator chi = chi_impl(w, spec.variant);
  const MpFockOperator shift = exp_scaled_creation(w.plan.padded_dim, w.z0, w.precision);
  return (chi * shift).crop(w.plan.dim);
}

MpFockOperator build_direct_dyad(const PolynomialSequence& seq, const BuildSpec& spec) {
  const Working w = prepare(seq, spec);
  const std::size_t size = w.plan.padded_dim;
  const mp::Bits bits = w.plan.working_bits;
  const std::size_t kmax = seq.k_max();

  // Row sums taken here rather than from seq.aggregated.
  std::vector<mp::Complex> c(kmax + 1, mp::Complex(bits));
  for (const auto& r : seq.rows)
    for (std::size_t k = 0; k < r.c.size() && k <= kmax; ++k) c[k] += r.c[k];

  std::vector<mp::Real> fact;
  for (std::size_t n = 0; n < size; ++n) fact.emplace_back(factorial(static_cast<unsigned>(n)), bits);

  // Pascal triangle in working precision.
  std::vector<std::vector<mp::Real>> pascal(size);
  for (std::size_t n = 0; n < size; ++n) {
    pascal[n].assign(n + 1, mp::Real(1L, bits));
    for (std::size_t i = 1; i < n; ++i) pascal[n][i] = pascal[n - 1][i - 1] + pascal[n - 1][i];
  }
  std::vector<mp::Complex> z0_pow;
  z0_pow.emplace_back(mp::Real(1L, bits), mp::Real(bits));
  for (std::size_t e = 1; e < size; ++e) z0_pow.push_back(z0_pow.back() * w.z0);

  MpFockOperator dyads(size, bits);
  for (std::size_t k = 0; k <= kmax; ++k) {
    if (c[k].is_zero()) continue;
    for (std::size_t n = 0; n < size; ++n) {
      for (std::size_t m = k; m <= n + k && m < size; ++m) {
        if (dropped(spec.variant, n, m)) continue;
        const std::size_t i = m - k;
        mp::Complex term = c[k] * z0_pow[n - i];
        if (term.is_zero()) continue;
        term *= pascal[n][i] * mp::sqrt(fact[m] / fact[n]);
        dyads(n, m) += term;
      }
    }
  }
  const MpFockOperator shift = exp_creation_series(size, w.z0, bits);
  return (dyads * shift).crop(w.plan.dim);
}

MpFockOperator build_polynomial_direct(const PolynomialSequence& seq, const BuildSpec& spec) {
  const Working w = prepare(seq, spec);
  const std::size_t size = w.plan.padded_dim;
  const mp::Bits bits = w.plan.working_bits;
  const std::size_t kmax = w.coeffs.empty() ? 0 : w.coeffs.size() - 1;

  std::vector<mp::Real> root;
  for (std::size_t j = 0; j < size; ++j) root.push_back(mp::sqrt(mp::Real(static_cast<long>(j), bits)));

  // P <- P (a - z0) + C_k; P stays upper triangular with bandwidth kmax - k.
  MpFockOperator acc(size, bits);
  for (std::size_t n = 0; n < size; ++n) acc(n, n) = w.coeffs.empty() ? mp::Complex(bits) : w.coeffs[kmax];
  for (std::size_t k = kmax; k-- > 0;) {
    const std::size_t band = kmax - k;
    MpFockOperator next(size, bits);
    for (std::size_t n = 0; n < size; ++n) {
      for (std::size_t j = n; j < size && j <= n + band; ++j) {
        mp::Complex v(bits);
        if (j >= 1 && j - 1 >= n && !acc(n, j - 1).is_zero()) v = acc(n, j - 1) * root[j];
        if (!acc(n, j).is_zero() && !w.z0.is_zero()) v -= acc(n, j) * w.z0;
        if (j == n) v += w.coeffs[k];
        next(n, j) = std::move(v);
      }
    }
    acc = std::move(next);
  }
  return acc.crop(w.plan.dim);
}

PolynomialSequence derivative_sequence(const PolynomialSequence& seq) {
  PolynomialSequence out;
  out.z0 = seq.z0;
  out.domain_note = seq.domain_note;
  out.precision = seq.precision;
  const mp::Bits bits = seq.precision.bits();
  for (const auto& row : seq.rows) {
    CoefficientRow d;
    d.l = row.l;
    if (row.c.size() <= 1) {
      d.c.assign(1, mp::Complex(bits));
    } else {
      for (std::size_t k = 0; k + 1 < row.c.size(); ++k)
        d.c.push_back(row.c[k + 1] * mp::Complex{mp::Real(static_cast<long>(k + 1), bits)});
    }
    out.rows.push_back(std::move(d));
  }
  out.recompute_aggregate();
  return out;
}

MpFockOperator build_ln_a(const MLParams& params, const BuildSpec& spec) {
  return build_function_operator(ml_coefficients(params, spec.precision), spec);
}

MpFockOperator build_ln_a(unsigned p, const BuildSpec& spec) { return build_ln_a(auto_ml_params(p), spec); }

MpFockOperator phase_from_ln_a(const MpFockOperator& ln_a) {
  const std::size_t d = ln_a.dim();
  if (d > max_double_y_dim()) {
    throw RangeError("phase operator at dimension " + std::to_string(d) + " needs sqrt(" + std::to_string(d - 1) +
                         "!) beyond double range (max dimension " + std::to_string(max_double_y_dim()) + ")",
                     d);
  }
  const mp::Bits bits = ln_a.entries().empty() ? Precision::kDefaultBits : ln_a(0, 0).precision();
  const Precision prec(bits);
  std::vector<mp::Real> half_ln_fact;
  for (std::size_t k = 0; k < d; ++k)
    half_ln_fact.push_back(ln_factorial(static_cast<unsigned>(k), prec) * mp::Real(0.5, bits));

  MpFockOperator phi(d, bits);
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t j = 0; j < d; ++j) {
      const mp::Complex& x = ln_a(n, j);
      if (x.is_zero()) continue;
      // (Y^{-1} L Y)_{nj} = sqrt(n!/j!) L_nj, then times -i.
      const mp::Real w = to_value(SignedLogReal::from_log(1, half_ln_fact[n] - half_ln_fact[j]), prec);
      phi(n, j) = mp::Complex{x.im * w, -(x.re * w)};
    }
  }
  return phi;
}

MpFockOperator build_phase_operator(const MLParams& params, const BuildSpec& spec) {
  if (spec.dim > max_double_y_dim()) {
    throw RangeError("phase operator at dimension " + std::to_string(spec.dim) + " needs sqrt(" +
                         std::to_string(spec.dim - 1) + "!) beyond double range (max dimension " +
                         std::to_string(max_double_y_dim()) + ")",
                     spec.dim);
  }
  return phase_from_ln_a(build_ln_a(params, spec));
}

MpFockOperator build_phase_operator(unsigned p, const BuildSpec& spec) {
  return build_phase_operator(auto_ml_params(p), spec);
}

std::size_t default_quadrature_nodes(std::size_t dim, cplx z0) {
  const std::size_t deg = z0 == cplx{} ? 0 : dim - 1;
  return 2 * (dim + deg) + 1;
}

MpFockOperator identity_resolution_quadrature(std::size_t dim, double radius, cplx z0, std::size_t nodes,
                                              BraForm bra, Precision precision) {
  if (nodes < 2) throw std::invalid_argument("quadrature needs at least 2 nodes");
  if (!(radius > 0.0)) throw std::invalid_argument("quadrature radius must be positive");
  if (dim == 0) throw std::invalid_argument("quadrature dimension must be positive");
  const mp::Bits bits = precision.bits() + 64;
  const Precision prec(bits);
  const mp::Real two_pi = mp::Real(2L, bits) * mp::Real::pi(bits);
  const mp::Complex center(z0, bits);
  const mp::Real r(radius, bits);

  std::vector<mp::Real> inv_root;  // 1/sqrt(n)
  for (std::size_t n = 0; n < dim; ++n)
    inv_root.push_back(n == 0 ? mp::Real(1L, bits) : mp::Real(1L, bits) / mp::sqrt(mp::Real(static_cast<long>(n), bits)));
  const MpFockOperator j = j_weight(dim, prec);

  // -i dgamma / gamma = dtheta, trapezoid weight 2 pi / M.
  const mp::Real weight = two_pi / mp::Real(static_cast<long>(nodes), bits);
  MpFockOperator acc(dim, bits);
  std::vector<mp::Complex> ket(dim), bra_j(dim);
  for (std::size_t q = 0; q < nodes; ++q) {
    const mp::Real theta = two_pi * mp::Real(static_cast<long>(q), bits) / mp::Real(static_cast<long>(nodes), bits);
    const mp::Complex gamma = r * mp::expi(theta);
    const mp::Complex shifted = gamma + center;
    const mp::Complex step = bra == BraForm::reciprocal ? mp::Complex{mp::Real(1L, bits)} / gamma : mp::conj(gamma);
    ket[0] = mp::Complex{mp::Real(1L, bits)};
    mp::Complex bra_m{mp::Real(1L, bits)};
    bra_j[0] = bra_m * j(0, 0);
    for (std::size_t n = 1; n < dim; ++n) {
      ket[n] = ket[n - 1] * shifted * inv_root[n];
      bra_m = bra_m * step * inv_root[n];
      bra_j[n] = bra_m * j(n, n);
    }
    for (std::size_t n = 0; n < dim; ++n) {
      const mp::Complex left = ket[n] * weight;
      for (std::size_t m = 0; m < dim; ++m) mp::fma_acc(acc(n, m), left, bra_j[m]);
    }
  }
  const MpFockOperator shift = exp_scaled_creation(dim, center, prec);
  MpFockOperator q = acc * shift;
  MpFockOperator out(dim, precision.bits());
  for (std::size_t n = 0; n < dim; ++n)
    for (std::size_t m = 0; m < dim; ++m) out(n, m) = q(n, m).rounded_to(precision.bits());
  return out;
}

}  // namespace phaseop
