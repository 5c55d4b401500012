#pragma once

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "segre/gaussian.hpp"

namespace segre {

/// The three complexified variables: z, ξ (= z̄) and ν (= w̄).
enum class Var : int { z = 0, xi = 1, nu = 2 };

struct Monomial {
  int m = 0;  // exponent of z
  int n = 0;  // exponent of ξ
  int p = 0;  // exponent of ν

  [[nodiscard]] int degree() const { return m + n + p; }
  [[nodiscard]] int exponent(Var v) const { return v == Var::z ? m : v == Var::xi ? n : p; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend Monomial operator*(const Monomial& a, const Monomial& b) { return {a.m + b.m, a.n + b.n, a.p + b.p}; }
};

/// Canonical order: by total degree, then lexicographic with z > ξ > ν inside a degree.
/// Iteration therefore runs from low to high degree.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.m != b.m) return a.m > b.m;
    return a.n > b.n;
  }
};

class NonNilpotentSubstitution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse polynomial / truncated series in (z, ξ, ν) with Gaussian-rational coefficients.
///
/// No zero coefficient is ever stored. When a truncation degree is set, terms above it are
/// discarded on insertion. Equality compares term maps only.
class Poly {
 public:
  using TermMap = std::map<Monomial, GaussianScalar, GradedLex>;
  using const_iterator = TermMap::const_iterator;

  Poly() = default;
  explicit Poly(std::optional<int> trunc) : trunc_(trunc) {}

  static Poly constant(const GaussianScalar& c, std::optional<int> trunc = std::nullopt);
  static Poly variable(Var v, std::optional<int> trunc = std::nullopt);
  static Poly term(Monomial mono, const GaussianScalar& c, std::optional<int> trunc = std::nullopt);

  [[nodiscard]] std::optional<int> trunc() const { return trunc_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] const_iterator begin() const { return terms_.begin(); }
  [[nodiscard]] const_iterator end() const { return terms_.end(); }
  [[nodiscard]] const TermMap& terms() const { return terms_; }

  /// Coefficient of `mono`, zero if absent.
  [[nodiscard]] GaussianScalar coeff(const Monomial& mono) const;
  [[nodiscard]] std::optional<int> min_degree() const;
  [[nodiscard]] std::optional<int> max_degree() const;

  /// Accumulates c into the coefficient of mono (ignored above the truncation degree).
  void add_term(const Monomial& mono, const GaussianScalar& c);
  /// Accumulates a*b into the coefficient of mono.
  void add_product(const Monomial& mono, const GaussianScalar& a, const GaussianScalar& b);
  void set_term(const Monomial& mono, const GaussianScalar& c);

  /// Copy with truncation min(current, d); drops terms above d.
  [[nodiscard]] Poly truncated(int d) const;
  /// Copy with all terms of degree <= d and no truncation marker.
  [[nodiscard]] Poly untruncated() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const GaussianScalar& c);

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

 private:
  void clip();
  TermMap terms_;
  std::optional<int> trunc_;
};

/// A polynomial all of whose monomials have the same total degree.
class HomogeneousPoly {
 public:
  HomogeneousPoly() = default;
  /// Throws std::invalid_argument when `p` mixes degrees (the zero polynomial takes `degree`).
  HomogeneousPoly(Poly p, int degree);
  /// Infers the degree from the terms; throws on the zero polynomial or mixed degrees.
  explicit HomogeneousPoly(Poly p);

  [[nodiscard]] int degree() const { return degree_; }
  [[nodiscard]] const Poly& poly() const { return poly_; }
  [[nodiscard]] bool is_zero() const { return poly_.is_zero(); }
  operator const Poly&() const { return poly_; }  // NOLINT(google-explicit-constructor)

 private:
  Poly poly_;
  int degree_ = 0;
};

std::optional<int> min_trunc(std::optional<int> a, std::optional<int> b);

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const GaussianScalar& c, const Poly& a);

Poly add(const Poly& a, const Poly& b);
/// Truncated product: terms of degree > D discarded; trunc = min(D, a.trunc, b.trunc).
Poly mul(const Poly& a, const Poly& b, int D);
Poly pow(const Poly& a, int e, int D);
/// Multiplication by a single monomial, truncated at D.
Poly shift(const Poly& a, const Monomial& mono, int D);

/// Images for a simultaneous substitution; an empty slot keeps the variable unchanged.
using Substitution = std::array<std::optional<Poly>, 3>;

/// Simultaneous substitution evaluated modulo degree D+1.
/// Throws NonNilpotentSubstitution if an image has a constant term and `target` is a truncated series.
Poly substitute(const Poly& target, const Substitution& images, int D);

HomogeneousPoly homogeneous_component(const Poly& a, int d);
/// All monomials of total degree d in canonical order.
std::vector<Monomial> monomial_basis(int d);
/// m!·n!·p!
Rational factorial_weight(const Monomial& mono);
Poly partial_derivative(const Poly& a, Var v, int order = 1);

/// Image under the reality involution: coefficient of z^m ξ^n ν^p becomes conj of z^n ξ^m ν^p.
Poly reality_mirror(const Poly& a);
/// Complex conjugation of the coefficients only.
Poly conj(const Poly& a);

std::string to_string(const Poly& a);

}  // namespace segre
