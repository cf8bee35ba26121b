#pragma once

// Precision-configurable real and complex scalars.
//
// Two real types are supported: `double` (53-bit significand) and `Mp`, an
// MPFR-backed float whose precision is set at run time through
// PrecisionScope. Everything numeric in the library is templated on the real
// type and explicitly instantiated for both.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <type_traits>

#include "qpainleve/errors.hpp"

namespace qpainleve {

using Mp = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                         boost::multiprecision::et_off>;

template <class R>
inline constexpr bool is_supported_real_v = std::is_same_v<R, double> || std::is_same_v<R, Mp>;

/// Sets the working precision of Mp for the lifetime of the guard.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits10_;
};

template <class R>
inline double to_double(const R& x) {
  return static_cast<double>(x);
}

template <class R>
inline R pi() {
  return boost::math::constants::pi<R>();
}

/// Unit roundoff of R at the current precision.
template <class R>
inline R machine_eps() {
  return std::numeric_limits<R>::epsilon();
}

template <class R>
class Complex {
 public:
  Complex() : re_(0), im_(0) {}
  Complex(R re) : re_(std::move(re)), im_(0) {}  // NOLINT(google-explicit-constructor)
  Complex(R re, R im) : re_(std::move(re)), im_(std::move(im)) {}
  template <class T, class = std::enable_if_t<std::is_arithmetic_v<T> && !std::is_same_v<T, R>>>
  Complex(T re) : re_(re), im_(0) {}  // NOLINT(google-explicit-constructor)

  const R& re() const { return re_; }
  const R& im() const { return im_; }

  static Complex i() { return Complex(R(0), R(1)); }

  Complex& operator+=(const Complex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    R r = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    return *this;
  }
  // Smith's algorithm; throws on an exactly zero divisor.
  Complex& operator/=(const Complex& o) {
    using std::abs;
    if (o.re_ == 0 && o.im_ == 0) throw DomainError("complex division by zero");
    if (abs(o.re_) >= abs(o.im_)) {
      R ratio = o.im_ / o.re_;
      R den = o.re_ + o.im_ * ratio;
      R r = (re_ + im_ * ratio) / den;
      im_ = (im_ - re_ * ratio) / den;
      re_ = std::move(r);
    } else {
      R ratio = o.re_ / o.im_;
      R den = o.re_ * ratio + o.im_;
      R r = (re_ * ratio + im_) / den;
      im_ = (im_ * ratio - re_) / den;
      re_ = std::move(r);
    }
    return *this;
  }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re_, -a.im_); }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  friend Complex conj(const Complex& z) { return Complex(z.re_, -z.im_); }

  friend R abs(const Complex& z) {
    using std::hypot;
    using boost::multiprecision::hypot;
    return hypot(z.re_, z.im_);
  }

  friend Complex exp(const Complex& z) {
    using std::cos;
    using std::exp;
    using std::sin;
    R m = exp(z.re_);
    return Complex(m * cos(z.im_), m * sin(z.im_));
  }

  /// Principal square root (branch cut on the negative real axis).
  friend Complex sqrt(const Complex& z) {
    using std::abs;
    using std::signbit;
    using std::sqrt;
    using boost::multiprecision::signbit;
    if (z.re_ == 0 && z.im_ == 0) return Complex();
    R r = abs(z);
    R t = sqrt((r + abs(z.re_)) / 2);
    if (z.re_ >= 0) return Complex(t, z.im_ / (2 * t));
    return Complex(abs(z.im_) / (2 * t), signbit(z.im_) ? R(-t) : t);
  }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << z.re_ << (z.im_ < 0 ? "" : "+") << z.im_ << "i";
  }

 private:
  R re_;
  R im_;
};

/// |z| converted to double; used for stopping rules and reporting.
template <class R>
inline double magnitude(const Complex<R>& z) {
  // Parts are converted first: an Mp square root costs more than every
  // caller needs. Underflow below double range reads as 0.
  return std::hypot(to_double(z.re()), to_double(z.im()));
}

/// log₂|z| without leaving extended range; -∞ for zero.
template <class R>
inline double log2_magnitude(const Complex<R>& z) {
  if constexpr (std::is_same_v<R, double>) {
    const double h = std::hypot(z.re(), z.im());
    return h == 0 ? -std::numeric_limits<double>::infinity() : std::log2(h);
  } else {
    long er = 0, ei = 0;
    const double mr = mpfr_get_d_2exp(&er, z.re().backend().data(), MPFR_RNDN);
    const double mi = mpfr_get_d_2exp(&ei, z.im().backend().data(), MPFR_RNDN);
    if (mr == 0 && mi == 0) return -std::numeric_limits<double>::infinity();
    const long e = mr == 0 ? ei : mi == 0 ? er : std::max(er, ei);
    return static_cast<double>(e) + std::log2(std::hypot(std::ldexp(mr, static_cast<int>(er - e)),
                                                         std::ldexp(mi, static_cast<int>(ei - e))));
  }
}

/// Integer power by repeated squaring; negative exponents invert.
template <class R>
Complex<R> ipow(const Complex<R>& base, long e) {
  Complex<R> result(R(1));
  Complex<R> b = e < 0 ? Complex<R>(R(1)) / base : base;
  unsigned long k = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (k) {
    if (k & 1u) result *= b;
    k >>= 1u;
    if (k) b *= b;
  }
  return result;
}

/// |lhs - rhs| / max(|lhs|, |rhs|, floor).
template <class R>
double relative_residual(const Complex<R>& lhs, const Complex<R>& rhs, double floor = 0.0) {
  double scale = std::max({magnitude(lhs), magnitude(rhs), floor});
  if (scale == 0.0) return 0.0;
  return magnitude(lhs - rhs) / scale;
}

/// |Σ terms| / max |term|: the residual of an identity Σ terms = 0.
template <class R, class Range>
double term_sum_residual(const Range& terms) {
  Complex<R> sum;
  double scale = 0.0;
  for (const auto& t : terms) {
    sum += t;
    scale = std::max(scale, magnitude(t));
  }
  return scale == 0.0 ? 0.0 : magnitude(sum) / scale;
}

/// E(x) = 2 ∫₀ˣ exp(-π z²) dz = erf(√π x).
template <class R>
R gauss_E(const R& x);

/// 1 - E(x), free of cancellation for large positive x.
template <class R>
R gauss_E_complement(const R& x);

}  // namespace qpainleve
