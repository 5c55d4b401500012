#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <ostream>
#include <string>
#include <string_view>

namespace segre {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = mpq_class;

/// Parses "num/den" or "num"; throws std::invalid_argument on malformed input or den = 0.
Rational parse_rational(std::string_view text);
/// Canonical "num/den" form (den always printed, den > 0).
std::string format_rational(const Rational& q);

/// Complex number a + b·i over a real field T.
template <typename T>
struct Gaussian {
  T re{};
  T im{};

  Gaussian() = default;
  Gaussian(T r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  Gaussian(int r) : re(r) {}  // NOLINT(google-explicit-constructor)

  static Gaussian i() { return Gaussian(T(0), T(1)); }

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] bool is_real() const { return sgn(im) == 0; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
      re *= o.re;
      return *this;
    }
    T r = re * o.re - im * o.im;
    T q = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(q);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    T den = o.re * o.re + o.im * o.im;
    if (sgn(den) == 0) throw std::domain_error("Gaussian division by zero");
    T r = (re * o.re + im * o.im) / den;
    T q = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(q);
    return *this;
  }

  /// this += a * b without a temporary Gaussian.
  void add_product(const Gaussian& a, const Gaussian& b) {
    const bool ar = sgn(a.im) == 0, br = sgn(b.im) == 0;
    if (ar && br) {
      re += a.re * b.re;
    } else if (ar) {
      re += a.re * b.re;
      im += a.re * b.im;
    } else if (br) {
      re += a.re * b.re;
      im += a.im * b.re;
    } else {
      re += a.re * b.re - a.im * b.im;
      im += a.re * b.im + a.im * b.re;
    }
  }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return Gaussian(T(-a.re), T(-a.im)); }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

template <typename T>
Gaussian<T> conj(const Gaussian<T>& a) {
  return Gaussian<T>(a.re, T(-a.im));
}

/// |a|² = re² + im².
template <typename T>
T norm2(const Gaussian<T>& a) {
  return T(a.re * a.re + a.im * a.im);
}

using GaussianScalar = Gaussian<Rational>;

std::ostream& operator<<(std::ostream& os, const GaussianScalar& a);
std::string to_string(const GaussianScalar& a);

}  // namespace segre

namespace Eigen {
template <>
struct NumTraits<segre::GaussianScalar> : GenericNumTraits<segre::GaussianScalar> {
  using Real = segre::Rational;
  using NonInteger = segre::GaussianScalar;
  using Nested = segre::GaussianScalar;
  using Literal = segre::GaussianScalar;
  enum {
    IsComplex = 1,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
};
}  // namespace Eigen
