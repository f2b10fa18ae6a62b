#include "phaseop/fock.hpp"

#include <cfloat>
#include <cmath>
#include <iostream>
#include <numbers>

namespace phaseop {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool all_real(const MpFockOperator& op) {
  for (const auto& e : op.entries())
    if (!e.is_real()) return false;
  return true;
}

// C = A B restricted to real parts.
void multiply_real(const MpFockOperator& a, const MpFockOperator& b, MpFockOperator& c) {
  const std::size_t d = a.dim();
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t m = 0; m < d; ++m) {
      const mp::Real& x = a(n, m).re;
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const mp::Real& y = b(m, j).re;
        if (y.is_zero()) continue;
        mp::fma_acc(c(n, j).re, x, y);
      }
    }
  }
}

void multiply_complex(const MpFockOperator& a, const MpFockOperator& b, MpFockOperator& c) {
  const std::size_t d = a.dim();
  for (std::size_t n = 0; n < d; ++n) {
    for (std::size_t m = 0; m < d; ++m) {
      const mp::Complex& x = a(n, m);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const mp::Complex& y = b(m, j);
        if (y.is_zero()) continue;
        mp::fma_acc(c(n, j), x, y);
      }
    }
  }
}

mp::Bits max_precision(const MpFockOperator& op) {
  mp::Bits bits = 53;
  for (const auto& e : op.entries()) bits = std::max(bits, e.precision());
  return bits;
}

mp::Bits max_precision(const MpFockVector& v) {
  mp::Bits bits = 53;
  for (const auto& e : v.amplitudes()) bits = std::max(bits, e.precision());
  return bits;
}

FockOperator diagonal(std::size_t dim, auto&& entry) {
  FockOperator out(dim);
  for (std::size_t n = 0; n < dim; ++n) out(n, n) = entry(n);
  return out;
}

double sqrt_factorial_log(std::size_t k) { return 0.5 * ln_factorial(static_cast<unsigned>(k)); }

void check_y_range(std::size_t dim) {
  if (dim > max_double_y_dim()) {
    throw RangeError("sqrt((D-1)!) exceeds double range at dimension " + std::to_string(dim) +
                         " (limit " + std::to_string(max_double_y_dim()) + ")",
                     dim);
  }
}

}  // namespace

FockOperator operator*(const FockOperator& a, const FockOperator& b) {
  detail::require_same_dim(a.dim(), b.dim(), "operator product");
  const std::size_t d = a.dim();
  FockOperator c(d);
  for (std::size_t n = 0; n < d; ++n)
    for (std::size_t m = 0; m < d; ++m) {
      const cplx x = a(n, m);
      if (x == cplx{}) continue;
      for (std::size_t j = 0; j < d; ++j) c(n, j) += x * b(m, j);
    }
  return c;
}

MpFockOperator operator*(const MpFockOperator& a, const MpFockOperator& b) {
  detail::require_same_dim(a.dim(), b.dim(), "operator product");
  MpFockOperator c(a.dim(), std::max(max_precision(a), max_precision(b)));
  if (all_real(a) && all_real(b)) {
    multiply_real(a, b, c);
  } else {
    multiply_complex(a, b, c);
  }
  return c;
}

FockVector operator*(const FockOperator& a, const FockVector& v) {
  detail::require_same_dim(a.dim(), v.dim(), "operator-vector product");
  FockVector out(v.dim());
  for (std::size_t n = 0; n < v.dim(); ++n) {
    cplx s{};
    for (std::size_t m = 0; m < v.dim(); ++m) s += a(n, m) * v[m];
    out[n] = s;
  }
  return out;
}

MpFockVector operator*(const MpFockOperator& a, const MpFockVector& v) {
  detail::require_same_dim(a.dim(), v.dim(), "operator-vector product");
  const mp::Bits bits = std::max(max_precision(a), max_precision(v));
  MpFockVector out(v.dim(), bits);
  for (std::size_t n = 0; n < v.dim(); ++n) {
    for (std::size_t m = 0; m < v.dim(); ++m) {
      if (a(n, m).is_zero() || v[m].is_zero()) continue;
      mp::fma_acc(out[n], a(n, m), v[m]);
    }
  }
  return out;
}

FockOperator to_double(const MpFockOperator& op) {
  FockOperator out(op.dim());
  for (std::size_t n = 0; n < op.dim(); ++n)
    for (std::size_t m = 0; m < op.dim(); ++m) {
      const cplx z = op(n, m).to_std();
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw RangeError("entry (" + std::to_string(n) + ", " + std::to_string(m) +
                             ") not representable in double at dimension " + std::to_string(op.dim()),
                         op.dim());
      }
      out(n, m) = z;
    }
  return out;
}

FockVector to_double(const MpFockVector& v) {
  FockVector out(v.dim());
  for (std::size_t n = 0; n < v.dim(); ++n) {
    out[n] = v[n].to_std();
    if (!std::isfinite(out[n].real()) || !std::isfinite(out[n].imag())) {
      throw RangeError("amplitude " + std::to_string(n) + " not representable in double", v.dim());
    }
  }
  return out;
}

MpFockOperator to_mp(const FockOperator& op, Precision precision) {
  MpFockOperator out(op.dim(), precision.bits());
  for (std::size_t n = 0; n < op.dim(); ++n)
    for (std::size_t m = 0; m < op.dim(); ++m) out(n, m) = mp::Complex(op(n, m), precision.bits());
  return out;
}

MpFockVector to_mp(const FockVector& v, Precision precision) {
  MpFockVector out(v.dim(), precision.bits());
  for (std::size_t n = 0; n < v.dim(); ++n) out[n] = mp::Complex(v[n], precision.bits());
  return out;
}

FockOperator ladder_matrix(LadderKind kind, std::size_t dim) {
  FockOperator out(dim);
  for (std::size_t n = 0; n + 1 < dim; ++n) {
    const double v = std::sqrt(static_cast<double>(n + 1));
    if (kind == LadderKind::annihilation) {
      out(n, n + 1) = v;
    } else {
      out(n + 1, n) = v;
    }
  }
  return out;
}

MpFockOperator ladder_matrix(LadderKind kind, std::size_t dim, Precision precision) {
  const mp::Bits bits = precision.bits();
  MpFockOperator out(dim, bits);
  for (std::size_t n = 0; n + 1 < dim; ++n) {
    mp::Complex v{mp::sqrt(mp::Real(static_cast<long>(n + 1), bits))};
    if (kind == LadderKind::annihilation) {
      out(n, n + 1) = std::move(v);
    } else {
      out(n + 1, n) = std::move(v);
    }
  }
  return out;
}

FockOperator number_matrix(std::size_t dim) {
  return diagonal(dim, [](std::size_t n) { return cplx(static_cast<double>(n)); });
}

FockOperator exp_i_number(std::size_t dim, double t) {
  return diagonal(dim, [t](std::size_t n) { return std::polar(1.0, static_cast<double>(n) * t); });
}

FockOperator exp_scaled_creation(std::size_t dim, cplx z0) {
  FockOperator out = FockOperator::identity(dim);
  if (z0 == cplx{}) return out;
  const double log_r = std::log(std::abs(z0));
  const double theta = std::arg(-z0);
  for (std::size_t n = 1; n < dim; ++n) {
    for (std::size_t m = 0; m < n; ++m) {
      const std::size_t d = n - m;
      const double log_mag = static_cast<double>(d) * log_r + sqrt_factorial_log(n) - sqrt_factorial_log(m) -
                             ln_factorial(static_cast<unsigned>(d));
      out(n, m) = std::polar(std::exp(log_mag), static_cast<double>(d) * theta);
    }
  }
  return out;
}

MpFockOperator exp_scaled_creation(std::size_t dim, const mp::Complex& z0, Precision precision) {
  const mp::Bits bits = precision.bits();
  MpFockOperator out = MpFockOperator::identity(dim, bits);
  if (z0.is_zero()) return out;
  const mp::Complex minus_z0 = -z0.rounded_to(std::max(bits, z0.precision()));
  // Powers (-z0)^d / d! built incrementally.
  std::vector<mp::Complex> scaled_powers;
  scaled_powers.reserve(dim);
  scaled_powers.emplace_back(mp::Real(1L, bits), mp::Real(bits));
  for (std::size_t d = 1; d < dim; ++d) {
    mp::Complex next = scaled_powers.back() * minus_z0;
    next *= mp::Real(1L, bits) / mp::Real(static_cast<long>(d), bits);
    scaled_powers.push_back(std::move(next));
  }
  std::vector<mp::Real> half_ln_fact;
  half_ln_fact.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k)
    half_ln_fact.push_back(ln_factorial(static_cast<unsigned>(k), precision) * mp::Real(0.5, bits));
  for (std::size_t n = 1; n < dim; ++n) {
    for (std::size_t m = 0; m < n; ++m) {
      // sqrt(n!/m!) carried in the log domain.
      SignedLogReal ratio = SignedLogReal::from_log(1, half_ln_fact[n] - half_ln_fact[m]);
      out(n, m) = scaled_powers[n - m] * to_value(ratio, precision);
    }
  }
  return out;
}

double coherent_tail_mass(std::size_t dim, cplx alpha) {
  const double r2 = std::norm(alpha);
  if (r2 == 0.0) return 0.0;
  // Poisson(r2) tail P(n >= dim), summed from dim upward in log form.
  double log_term = -r2 + static_cast<double>(dim) * std::log(r2) - ln_factorial(static_cast<unsigned>(dim));
  double total = 0.0;
  for (std::size_t n = dim;; ++n) {
    const double term = std::exp(log_term);
    total += term;
    if (static_cast<double>(n) > r2 && term <= 1e-30 * total) break;
    if (n > dim + 100000) break;
    log_term += std::log(r2) - std::log(static_cast<double>(n + 1));
  }
  return std::min(total, 1.0);
}

FockVector coherent_vector(std::size_t dim, cplx alpha, Normalization norm) {
  FockVector out(dim);
  cplx amp = norm == Normalization::normalized ? cplx(std::exp(-0.5 * std::norm(alpha))) : cplx(1.0);
  for (std::size_t n = 0; n < dim; ++n) {
    if (n > 0) amp *= alpha / std::sqrt(static_cast<double>(n));
    out[n] = amp;
  }
  if (const double tail = coherent_tail_mass(dim, alpha); tail > kCoherentTailTolerance) {
    std::cerr << "warning: coherent state alpha=(" << alpha.real() << "," << alpha.imag() << ") at D=" << dim
              << " drops tail mass " << tail << "\n";
  }
  return out;
}

MpFockVector coherent_vector(std::size_t dim, cplx alpha, Normalization norm, Precision precision) {
  const mp::Bits bits = precision.bits();
  MpFockVector out(dim, bits);
  const mp::Complex a(alpha, bits);
  mp::Complex amp(bits);
  if (norm == Normalization::normalized) {
    amp = mp::Complex{mp::exp(mp::norm(a) * mp::Real(-0.5, bits))};
  } else {
    amp = mp::Complex{mp::Real(1L, bits)};
  }
  for (std::size_t n = 0; n < dim; ++n) {
    if (n > 0) {
      amp *= a;
      amp *= mp::Real(1L, bits) / mp::sqrt(mp::Real(static_cast<long>(n), bits));
    }
    out[n] = amp;
  }
  if (const double tail = coherent_tail_mass(dim, alpha); tail > kCoherentTailTolerance) {
    std::cerr << "warning: coherent state alpha=(" << alpha.real() << "," << alpha.imag() << ") at D=" << dim
              << " drops tail mass " << tail << "\n";
  }
  return out;
}

namespace {

void check_phase(double phi) {
  if (!(phi > -std::numbers::pi && phi < std::numbers::pi)) {
    throw DomainError("phase " + std::to_string(phi) + " outside the open interval (-pi, pi)");
  }
}

}  // namespace

FockVector phase_vector(std::size_t dim, double phi) {
  check_phase(phi);
  FockVector out(dim);
  const double scale = 1.0 / std::sqrt(kTwoPi);
  for (std::size_t n = 0; n < dim; ++n) out[n] = std::polar(scale, static_cast<double>(n) * phi);
  return out;
}

MpFockVector phase_vector(std::size_t dim, double phi, Precision precision) {
  check_phase(phi);
  const mp::Bits bits = precision.bits();
  MpFockVector out(dim, bits);
  const mp::Real scale = mp::Real(1L, bits) / mp::sqrt(mp::Real(2L, bits) * mp::Real::pi(bits));
  const mp::Real p(phi, bits);
  for (std::size_t n = 0; n < dim; ++n) {
    out[n] = scale * mp::expi(p * mp::Real(static_cast<long>(n), bits));
  }
  return out;
}

std::size_t max_double_y_dim() {
  static const std::size_t limit = [] {
    const double cap = std::log(DBL_MAX);
    std::size_t d = 1;
    while (sqrt_factorial_log(d) < cap) ++d;
    return d;  // sqrt((d-1)!) finite, sqrt(d!) not
  }();
  return limit;
}

FockOperator diagonal_y(std::size_t dim, YForm form) {
  check_y_range(dim);
  const double sgn = form == YForm::direct ? -1.0 : 1.0;
  return diagonal(dim, [sgn](std::size_t k) { return cplx(std::exp(sgn * sqrt_factorial_log(k))); });
}

MpFockOperator diagonal_y(std::size_t dim, YForm form, Precision precision) {
  const mp::Bits bits = precision.bits();
  MpFockOperator out(dim, bits);
  mp::Real fact(1L, bits);
  for (std::size_t k = 0; k < dim; ++k) {
    if (k > 0) fact *= mp::Real(static_cast<long>(k), bits);
    mp::Real s = mp::sqrt(fact);
    if (!s.is_finite()) throw RangeError("sqrt(k!) overflow at k = " + std::to_string(k), dim);
    out(k, k) = mp::Complex{form == YForm::direct ? mp::Real(1L, bits) / s : s};
  }
  return out;
}

FockOperator j_weight(std::size_t dim) {
  FockOperator out(dim);
  double fact = 1.0;
  for (std::size_t n = 0; n < dim; ++n) {
    if (n > 0) fact *= static_cast<double>(n);
    const double v = fact / kTwoPi;
    if (!std::isfinite(v)) throw RangeError("n!/(2 pi) overflow at n = " + std::to_string(n), dim);
    out(n, n) = v;
  }
  return out;
}

MpFockOperator j_weight(std::size_t dim, Precision precision) {
  const mp::Bits bits = precision.bits();
  MpFockOperator out(dim, bits);
  const mp::Real two_pi = mp::Real(2L, bits) * mp::Real::pi(bits);
  mp::Real fact(1L, bits);
  for (std::size_t n = 0; n < dim; ++n) {
    if (n > 0) fact *= mp::Real(static_cast<long>(n), bits);
    out(n, n) = mp::Complex{fact / two_pi};
  }
  return out;
}

}  // namespace phaseop
