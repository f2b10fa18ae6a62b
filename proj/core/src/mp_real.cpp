#include "phaseop/mp_real.hpp"

#include <cstring>
#include <vector>

namespace phaseop::mp {

Real::Real(Bits bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(double value, Bits bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

Real::Real(long value, Bits bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(const BigInt& value, Bits bits) {
  mpfr_init2(v_, bits);
  mpfr_set_z(v_, value.backend().data(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& other) {
  if (this == &other) return *this;
  if (!live()) {
    mpfr_init2(v_, other.precision());
  } else if (precision() != other.precision()) {
    mpfr_set_prec(v_, other.precision());
  }
  mpfr_set(v_, other.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this == &other) return *this;
  if (live()) mpfr_clear(v_);
  std::memcpy(v_, other.v_, sizeof(mpfr_t));
  other.v_->_mpfr_d = nullptr;
  return *this;
}

Real::~Real() {
  if (live()) mpfr_clear(v_);
}

Real Real::rounded_to(Bits bits) const {
  Real out(bits);
  mpfr_set(out.v_, v_, MPFR_RNDN);
  return out;
}

void Real::widen_to(Bits bits) {
  if (bits > precision()) mpfr_prec_round(v_, bits, MPFR_RNDN);
}

std::string Real::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return buf.data();
}

Real& Real::operator+=(const Real& rhs) {
  widen_to(rhs.precision());
  mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen_to(rhs.precision());
  mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen_to(rhs.precision());
  mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  widen_to(rhs.precision());
  mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real out(precision());
  mpfr_neg(out.v_, v_, MPFR_RNDN);
  return out;
}

Real Real::pi(Bits bits) {
  Real out(bits);
  mpfr_const_pi(out.v_, MPFR_RNDN);
  return out;
}

namespace {

template <class F>
Real binary(const Real& a, const Real& b, F f) {
  Real out(std::max(a.precision(), b.precision()));
  f(out.get(), a.get(), b.get(), MPFR_RNDN);
  return out;
}

template <class F>
Real unary(const Real& a, F f) {
  Real out(a.precision());
  f(out.get(), a.get(), MPFR_RNDN);
  return out;
}

}  // namespace

Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.get(), b.get()) != 0; }
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }

Real abs(const Real& x) { return unary(x, mpfr_abs); }
Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real log(const Real& x) { return unary(x, mpfr_log); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real atan2(const Real& y, const Real& x) { return binary(y, x, mpfr_atan2); }
Real lngamma(const Real& x) { return unary(x, mpfr_lngamma); }

Real pow(const Real& x, long n) {
  Real out(x.precision());
  mpfr_pow_si(out.get(), x.get(), n, MPFR_RNDN);
  return out;
}

Complex& Complex::operator+=(const Complex& rhs) {
  re += rhs.re;
  im += rhs.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& rhs) {
  re -= rhs.re;
  im -= rhs.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& rhs) {
  *this = *this * rhs;
  return *this;
}

Complex& Complex::operator*=(const Real& rhs) {
  re *= rhs;
  im *= rhs;
  return *this;
}

Complex& Complex::operator/=(const Complex& rhs) {
  *this = *this / rhs;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }

Complex operator*(const Complex& a, const Complex& b) {
  const Bits bits = std::max(a.precision(), b.precision());
  if (a.is_real() && b.is_real()) return Complex{a.re * b.re, Real(bits)};
  Complex out(bits);
  mpfr_mul(out.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  fms_acc(out.re, a.im, b.im);
  mpfr_mul(out.im.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  fma_acc(out.im, a.im, b.re);
  return out;
}

Complex operator*(const Real& a, const Complex& b) { return {a * b.re, a * b.im}; }
Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }

Complex operator/(const Complex& a, const Complex& b) {
  const Real d = norm(b);
  const Complex num = a * conj(b);
  return {num.re / d, num.im / d};
}

bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

Complex conj(const Complex& z) { return {z.re, -z.im}; }
Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }

Real abs(const Complex& z) {
  Real out(z.precision());
  mpfr_hypot(out.get(), z.re.get(), z.im.get(), MPFR_RNDN);
  return out;
}

Real arg(const Complex& z) { return atan2(z.im, z.re); }

Complex pow(const Complex& z, unsigned long n) {
  Complex result{Real(1L, z.precision()), Real(z.precision())};
  Complex base = z;
  while (n != 0) {
    if (n & 1UL) result *= base;
    n >>= 1;
    if (n != 0) base *= base;
  }
  return result;
}

Complex exp(const Complex& z) {
  const Real m = exp(z.re);
  if (z.im.is_zero()) return Complex{m, Real(z.precision())};
  return {m * cos(z.im), m * sin(z.im)};
}

Complex log(const Complex& z) { return {log(abs(z)), arg(z)}; }

Complex expi(const Real& theta) { return {cos(theta), sin(theta)}; }

void fma_acc(Complex& acc, const Complex& a, const Complex& b) {
  acc.widen_to(std::max(a.precision(), b.precision()));
  fma_acc(acc.re, a.re, b.re);
  if (a.im.is_zero() && b.im.is_zero()) return;
  fms_acc(acc.re, a.im, b.im);
  fma_acc(acc.im, a.re, b.im);
  fma_acc(acc.im, a.im, b.re);
}

}  // namespace phaseop::mp
