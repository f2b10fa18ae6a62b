#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "phaseop/errors.hpp"
#include "phaseop/mp_real.hpp"
#include "phaseop/numerics.hpp"

namespace phaseop {

using cplx = std::complex<double>;

namespace detail {

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<cplx> {
  static cplx zero(mp::Bits) { return {}; }
  static cplx from(cplx z, mp::Bits) { return z; }
  static mp::Bits precision(const cplx&) { return 53; }
  static double abs2(const cplx& z) { return std::norm(z); }
  static bool is_zero(const cplx& z) { return z == cplx{}; }
  static cplx conj(const cplx& z) { return std::conj(z); }
};

template <>
struct ScalarOps<mp::Complex> {
  static mp::Complex zero(mp::Bits bits) { return mp::Complex(bits); }
  static mp::Complex from(cplx z, mp::Bits bits) { return mp::Complex(z, bits); }
  static mp::Bits precision(const mp::Complex& z) { return z.precision(); }
  static double abs2(const mp::Complex& z) { return mp::norm(z).to_double(); }
  static bool is_zero(const mp::Complex& z) { return z.is_zero(); }
  static mp::Complex conj(const mp::Complex& z) { return mp::conj(z); }
};

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                            std::to_string(b) + ")");
  }
}

}  // namespace detail

/// Finite amplitude list over the Fock basis |0>, ..., |D-1>.
template <class S>
class BasicFockVector {
 public:
  BasicFockVector() = default;
  explicit BasicFockVector(std::size_t dim, mp::Bits bits = 53) : amps_(dim, detail::ScalarOps<S>::zero(bits)) {}
  explicit BasicFockVector(std::vector<S> amplitudes) : amps_(std::move(amplitudes)) {}

  std::size_t dim() const { return amps_.size(); }
  S& operator[](std::size_t n) { return amps_[n]; }
  const S& operator[](std::size_t n) const { return amps_[n]; }
  const std::vector<S>& amplitudes() const { return amps_; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += detail::ScalarOps<S>::abs2(a);
    return std::sqrt(s);
  }

  BasicFockVector crop(std::size_t d) const {
    if (d == 0 || d > dim()) {
      throw DimensionMismatch("crop: target dimension " + std::to_string(d) + " outside 1.." +
                              std::to_string(dim()));
    }
    return BasicFockVector(std::vector<S>(amps_.begin(), amps_.begin() + static_cast<std::ptrdiff_t>(d)));
  }

  BasicFockVector& operator+=(const BasicFockVector& rhs) {
    detail::require_same_dim(dim(), rhs.dim(), "vector add");
    for (std::size_t n = 0; n < dim(); ++n) amps_[n] += rhs.amps_[n];
    return *this;
  }
  BasicFockVector& operator-=(const BasicFockVector& rhs) {
    detail::require_same_dim(dim(), rhs.dim(), "vector subtract");
    for (std::size_t n = 0; n < dim(); ++n) amps_[n] -= rhs.amps_[n];
    return *this;
  }
  BasicFockVector& operator*=(const S& c) {
    for (auto& a : amps_) a *= c;
    return *this;
  }

  friend BasicFockVector operator+(BasicFockVector a, const BasicFockVector& b) { return a += b; }
  friend BasicFockVector operator-(BasicFockVector a, const BasicFockVector& b) { return a -= b; }
  friend BasicFockVector operator*(const S& c, BasicFockVector v) { return v *= c; }

 private:
  std::vector<S> amps_;
};

/// Dense D x D matrix over the Fock basis, row index n, column index m.
template <class S>
class BasicFockOperator {
 public:
  BasicFockOperator() = default;
  explicit BasicFockOperator(std::size_t dim, mp::Bits bits = 53)
      : dim_(dim), entries_(dim * dim, detail::ScalarOps<S>::zero(bits)) {}

  static BasicFockOperator identity(std::size_t dim, mp::Bits bits = 53) {
    BasicFockOperator out(dim, bits);
    for (std::size_t n = 0; n < dim; ++n) out(n, n) = detail::ScalarOps<S>::from(cplx(1.0), bits);
    return out;
  }

  std::size_t dim() const { return dim_; }
  S& operator()(std::size_t n, std::size_t m) { return entries_[n * dim_ + m]; }
  const S& operator()(std::size_t n, std::size_t m) const { return entries_[n * dim_ + m]; }
  const std::vector<S>& entries() const { return entries_; }

  BasicFockOperator crop(std::size_t d) const {
    if (d == 0 || d > dim_) {
      throw DimensionMismatch("crop: target dimension " + std::to_string(d) + " outside 1.." +
                              std::to_string(dim_));
    }
    BasicFockOperator out;
    out.dim_ = d;
    out.entries_.reserve(d * d);
    for (std::size_t n = 0; n < d; ++n)
      for (std::size_t m = 0; m < d; ++m) out.entries_.push_back((*this)(n, m));
    return out;
  }

  BasicFockOperator adjoint() const {
    BasicFockOperator out = *this;
    for (std::size_t n = 0; n < dim_; ++n)
      for (std::size_t m = 0; m < dim_; ++m) out(m, n) = detail::ScalarOps<S>::conj((*this)(n, m));
    return out;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += detail::ScalarOps<S>::abs2(e);
    return std::sqrt(s);
  }

  BasicFockOperator& operator+=(const BasicFockOperator& rhs) {
    detail::require_same_dim(dim_, rhs.dim_, "operator add");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += rhs.entries_[i];
    return *this;
  }
  BasicFockOperator& operator-=(const BasicFockOperator& rhs) {
    detail::require_same_dim(dim_, rhs.dim_, "operator subtract");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= rhs.entries_[i];
    return *this;
  }
  BasicFockOperator& operator*=(const S& c) {
    for (auto& e : entries_) e *= c;
    return *this;
  }

  friend BasicFockOperator operator+(BasicFockOperator a, const BasicFockOperator& b) { return a += b; }
  friend BasicFockOperator operator-(BasicFockOperator a, const BasicFockOperator& b) { return a -= b; }
  friend BasicFockOperator operator*(const S& c, BasicFockOperator a) { return a *= c; }

 private:
  std::size_t dim_ = 0;
  std::vector<S> entries_;
};

using FockVector = BasicFockVector<cplx>;
using FockOperator = BasicFockOperator<cplx>;
using MpFockVector = BasicFockVector<mp::Complex>;
using MpFockOperator = BasicFockOperator<mp::Complex>;

FockOperator operator*(const FockOperator& a, const FockOperator& b);
MpFockOperator operator*(const MpFockOperator& a, const MpFockOperator& b);
FockVector operator*(const FockOperator& a, const FockVector& v);
MpFockVector operator*(const MpFockOperator& a, const MpFockVector& v);

/// AB - BA
template <class S>
BasicFockOperator<S> commutator(const BasicFockOperator<S>& a, const BasicFockOperator<S>& b) {
  detail::require_same_dim(a.dim(), b.dim(), "commutator");
  return a * b - b * a;
}

// Rounds to double; RangeError when an entry is not finite in double.
FockOperator to_double(const MpFockOperator& op);
FockVector to_double(const MpFockVector& v);
MpFockOperator to_mp(const FockOperator& op, Precision precision);
MpFockVector to_mp(const FockVector& v, Precision precision);

enum class LadderKind { annihilation, creation };

FockOperator ladder_matrix(LadderKind kind, std::size_t dim);
MpFockOperator ladder_matrix(LadderKind kind, std::size_t dim, Precision precision);

FockOperator number_matrix(std::size_t dim);

/// e^{iNt}
FockOperator exp_i_number(std::size_t dim, double t);

/// e^{-z0 a^dagger}: lower triangular, <n|.|m> = (-z0)^{n-m} sqrt(n!/m!) / (n-m)!.
FockOperator exp_scaled_creation(std::size_t dim, cplx z0);
MpFockOperator exp_scaled_creation(std::size_t dim, const mp::Complex& z0, Precision precision);

enum class Normalization { normalized, unnormalized };

/// Coherent state truncated to dim. Amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!)
/// (or alpha^n / sqrt(n!) unnormalized). Writes a warning to stderr when the
/// discarded tail mass exceeds kCoherentTailTolerance.
FockVector coherent_vector(std::size_t dim, cplx alpha, Normalization norm = Normalization::normalized);
MpFockVector coherent_vector(std::size_t dim, cplx alpha, Normalization norm, Precision precision);

inline constexpr double kCoherentTailTolerance = 1e-12;

/// Fraction of the coherent state's squared norm carried by |n>, n >= dim.
double coherent_tail_mass(std::size_t dim, cplx alpha);

/// (1/sqrt(2 pi)) sum_n e^{i n phi} |n>, phi in (-pi, pi).
FockVector phase_vector(std::size_t dim, double phi);
MpFockVector phase_vector(std::size_t dim, double phi, Precision precision);

enum class YForm { direct, inverse };

/// diag(1/sqrt(k!)) or its inverse diag(sqrt(k!)).
FockOperator diagonal_y(std::size_t dim, YForm form = YForm::direct);
MpFockOperator diagonal_y(std::size_t dim, YForm form, Precision precision);

/// diag(n!/(2 pi))
FockOperator j_weight(std::size_t dim);
MpFockOperator j_weight(std::size_t dim, Precision precision);

/// Largest dimension for which sqrt((dim-1)!) is a finite double.
std::size_t max_double_y_dim();

}  // namespace phaseop
