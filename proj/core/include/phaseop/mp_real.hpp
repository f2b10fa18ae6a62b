#pragma once

#include <complex>
#include <string>

#include <mpfr.h>

#include <boost/multiprecision/gmp.hpp>

namespace phaseop {

using BigInt = boost::multiprecision::mpz_int;

namespace mp {

using Bits = mpfr_prec_t;

// Owning wrapper around an mpfr_t. Every value carries its own precision;
// binary operations produce a result at the larger operand precision and
// compound assignment widens the left operand first, so precision never
// silently drops inside an accumulation.
class Real {
 public:
  Real() : Real(53) {}
  explicit Real(Bits bits);
  Real(double value, Bits bits);
  Real(long value, Bits bits);
  Real(int value, Bits bits) : Real(static_cast<long>(value), bits) {}
  Real(const BigInt& value, Bits bits);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  Bits precision() const { return mpfr_get_prec(v_); }
  // Exact when bits >= precision().
  Real rounded_to(Bits bits) const;
  void widen_to(Bits bits);

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 20) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real operator-() const;

  static Real pi(Bits bits);

 private:
  mpfr_t v_;
  bool live() const { return v_->_mpfr_d != nullptr; }
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);
bool operator<(const Real& a, const Real& b);
inline bool operator>(const Real& a, const Real& b) { return b < a; }
inline bool operator<=(const Real& a, const Real& b) { return !(b < a); }

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real cos(const Real& x);
Real sin(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, long n);
// ln Γ(x) for x > 0.
Real lngamma(const Real& x);

// acc += a * b with a single rounding; result at acc's precision.
inline void fma_acc(Real& acc, const Real& a, const Real& b) {
  mpfr_fma(acc.get(), a.get(), b.get(), acc.get(), MPFR_RNDN);
}
// acc -= a * b with a single rounding.
inline void fms_acc(Real& acc, const Real& a, const Real& b) {
  mpfr_fms(acc.get(), a.get(), b.get(), acc.get(), MPFR_RNDN);
  mpfr_neg(acc.get(), acc.get(), MPFR_RNDN);
}

struct Complex {
  Real re;
  Real im;

  Complex() = default;
  explicit Complex(Bits bits) : re(bits), im(bits) {}
  Complex(std::complex<double> z, Bits bits) : re(z.real(), bits), im(z.imag(), bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(Real r) : re(std::move(r)), im(re.precision()) {}

  Bits precision() const { return std::max(re.precision(), im.precision()); }
  Complex rounded_to(Bits bits) const { return {re.rounded_to(bits), im.rounded_to(bits)}; }
  void widen_to(Bits bits) {
    re.widen_to(bits);
    im.widen_to(bits);
  }
  std::complex<double> to_std() const { return {re.to_double(), im.to_double()}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  Complex& operator+=(const Complex& rhs);
  Complex& operator-=(const Complex& rhs);
  Complex& operator*=(const Complex& rhs);
  Complex& operator*=(const Real& rhs);
  Complex& operator/=(const Complex& rhs);
  Complex operator-() const { return {-re, -im}; }
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator*(const Real& a, const Complex& b);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Complex& b);
bool operator==(const Complex& a, const Complex& b);

Complex conj(const Complex& z);
// |z|^2
Real norm(const Complex& z);
Real abs(const Complex& z);
Real arg(const Complex& z);
Complex pow(const Complex& z, unsigned long n);
Complex exp(const Complex& z);
// Principal branch.
Complex log(const Complex& z);
// e^{i theta}
Complex expi(const Real& theta);

// acc += a * b
void fma_acc(Complex& acc, const Complex& a, const Complex& b);

}  // namespace mp
}  // namespace phaseop
