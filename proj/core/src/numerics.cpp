#include "phaseop/numerics.hpp"

namespace phaseop {

double ln_factorial(unsigned n) {
  if (n < 2) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0);
}

mp::Real ln_factorial(unsigned n, Precision precision) {
  if (n < 2) return mp::Real(precision.bits());
  return mp::lngamma(mp::Real(static_cast<long>(n) + 1, precision.bits()));
}

BigInt factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned k = 2; k <= n; ++k) out *= k;
  return out;
}

BigInt binomial(unsigned n, long k) {
  if (k < 0 || k > static_cast<long>(n)) return 0;
  BigInt out;
  mpz_bin_uiui(out.backend().data(), n, static_cast<unsigned long>(k));
  return out;
}

StirlingTable::StirlingTable(unsigned max_l)
    : max_l_(max_l), data_(static_cast<std::size_t>(max_l + 1) * (max_l + 1)) {
  const std::size_t w = max_l + 1;
  data_[0] = 1;
  for (unsigned l = 0; l < max_l; ++l) {
    for (unsigned k = 1; k <= l + 1; ++k) {
      BigInt v = data_[l * w + (k - 1)];
      if (k <= l) v += BigInt(l) * data_[l * w + k];
      data_[(l + 1) * w + k] = std::move(v);
    }
  }
}

const BigInt& StirlingTable::operator()(unsigned l, unsigned k) const {
  if (l > max_l_) throw std::out_of_range("Stirling row beyond table");
  if (k > l) return zero_;
  return data_[static_cast<std::size_t>(l) * (max_l_ + 1) + k];
}

BigInt stirling_first_unsigned(unsigned l, unsigned k) {
  if (k > l) return 0;
  return StirlingTable(l)(l, k);
}

SignedLogDouble to_signed_log(double value) {
  if (value == 0.0) return SignedLogDouble::zero();
  return {value < 0 ? -1 : 1, std::log(std::fabs(static_cast<long double>(value)))};
}

double to_value(const SignedLogDouble& x) {
  if (x.sign == 0) return 0.0;
  return static_cast<double>(x.sign * std::exp(x.log_magnitude));
}

SignedLogReal to_signed_log(const mp::Real& value) {
  if (value.is_zero()) return {0, mp::Real(value.precision())};
  return {value.sign() < 0 ? -1 : 1, mp::log(mp::abs(value))};
}

mp::Real to_value(const SignedLogReal& x, Precision precision) {
  if (x.sign == 0) return mp::Real(precision.bits());
  mp::Real m = mp::exp(x.log_magnitude.rounded_to(std::max(precision.bits(), x.log_magnitude.precision())));
  m = m.rounded_to(precision.bits());
  return x.sign < 0 ? -m : m;
}

}  // namespace phaseop
