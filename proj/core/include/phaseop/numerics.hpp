#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "phaseop/mp_real.hpp"

namespace phaseop {

struct Precision {
  static constexpr mp::Bits kDefaultBits = 113;

  mp::Bits significand_bits = kDefaultBits;

  Precision() = default;
  explicit Precision(mp::Bits bits) : significand_bits(bits) {
    if (bits < 53) throw std::invalid_argument("precision must be at least 53 significand bits");
  }
  mp::Bits bits() const { return significand_bits; }
};

/// ln(n!) in double precision.
double ln_factorial(unsigned n);

/// ln(n!) correctly rounded at the requested precision.
mp::Real ln_factorial(unsigned n, Precision precision);

BigInt factorial(unsigned n);

/// Exact C(n, k); zero outside 0 <= k <= n.
BigInt binomial(unsigned n, long k);

/// Unsigned Stirling numbers of the first kind, rows 0..max_l.
///
/// c(l, k) is the coefficient of rho^k in rho (rho + 1) ... (rho + l - 1), built
/// from c(l+1, k) = c(l, k-1) + l c(l, k).
class StirlingTable {
 public:
  explicit StirlingTable(unsigned max_l);

  unsigned max_l() const { return max_l_; }
  const BigInt& operator()(unsigned l, unsigned k) const;

 private:
  unsigned max_l_;
  std::vector<BigInt> data_;  // (max_l+1)^2, row-major in l
  BigInt zero_;
};

BigInt stirling_first_unsigned(unsigned l, unsigned k);

/// A real number stored as sign and natural log of the magnitude.
///
/// Used for factor chains like sqrt(m!/n!) * Gamma^k * Theta^l whose
/// intermediate magnitudes leave the range of plain floating types.
template <class T>
struct SignedLogScalar {
  int sign = 0;      // -1, 0, +1
  T log_magnitude{}; // unused when sign == 0

  static SignedLogScalar zero() { return {}; }
  static SignedLogScalar from_log(int s, T log_mag) { return {s, std::move(log_mag)}; }

  SignedLogScalar& operator*=(const SignedLogScalar& rhs) {
    sign *= rhs.sign;
    if (sign != 0) log_magnitude = log_magnitude + rhs.log_magnitude;
    return *this;
  }
  SignedLogScalar& operator/=(const SignedLogScalar& rhs) {
    if (rhs.sign == 0) throw std::domain_error("division by zero in log domain");
    sign *= rhs.sign;
    if (sign != 0) log_magnitude = log_magnitude - rhs.log_magnitude;
    return *this;
  }
  friend SignedLogScalar operator*(SignedLogScalar a, const SignedLogScalar& b) { return a *= b; }
  friend SignedLogScalar operator/(SignedLogScalar a, const SignedLogScalar& b) { return a /= b; }
};

// Extended log storage keeps the double round trip within 1e-15 relative.
using SignedLogDouble = SignedLogScalar<long double>;
using SignedLogReal = SignedLogScalar<mp::Real>;

SignedLogDouble to_signed_log(double value);
double to_value(const SignedLogDouble& x);

SignedLogReal to_signed_log(const mp::Real& value);
mp::Real to_value(const SignedLogReal& x, Precision precision);

}  // namespace phaseop
