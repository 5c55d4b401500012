#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "segre/poly.hpp"

namespace segre {

using TailMap = std::map<Monomial, GaussianScalar, GradedLex>;

/// Im w = (Re w)^{m0} L(z, z̄) + Σ φ_mnp z^m z̄^n (Re w)^p, stored with its truncation degree D.
///
/// `real` marks a complexified real surface. Normalized surfaces may carry a tail that is not
/// Hermitian; they are still valid complex hypersurfaces of C⁴ and are flagged real = false.
struct Hypersurface {
  int m0 = 0;
  int k0 = 3;
  Poly L;
  TailMap phi;
  int D = 6;
  bool real = true;

  friend bool operator==(const Hypersurface&, const Hypersurface&) = default;
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

/// Empty when M is valid; otherwise one entry per violated invariant.
std::vector<ValidationIssue> validate(const Hypersurface& M);

class InvalidSurface : public std::invalid_argument {
 public:
  explicit InvalidSurface(std::vector<ValidationIssue> issues);
  [[nodiscard]] const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

void require_valid(const Hypersurface& M);

/// The complexified relation R(w) = Σ_j coeffs[j]·w^j with polynomial coefficients in (z, ξ, ν).
struct Relation {
  int D = 0;
  std::vector<Poly> coeffs;

  /// R(w) mod degree D+1 for a series w without constant term.
  [[nodiscard]] Poly evaluate(const Poly& w) const;
};

/// (w−ν)/2i − ((w+ν)/2)^{m0} L − Σ φ z^m ξ^n ((w+ν)/2)^p, truncated at D.
Relation complexify(const Hypersurface& M);

/// The graph w = Q(z, ξ, ν) of the complexified surface, mod degree D+1.
Poly solve_graph(const Hypersurface& M);

class BadParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Seeded instance generator.
///
/// Draws come from std::mt19937_64(seed); draw(lo, hi) = lo + (x mod (hi − lo + 1)) for the next
/// output x. A rational is draw(−3, 3) / draw(1, 3). L samples z^a ξ^b for a ≥ b in canonical
/// order (real part, then imaginary part unless a = b) and mirror-conjugates; the whole draw is
/// repeated until L has a mixed monomial (a, b ≥ 1). The tail visits monomials of degree k0+1..D
/// in canonical order with m ≥ n (p ≥ 1 when m0 ≠ 0), keeps each one iff draw(0, den−1) < num for
/// density = num/den, then samples its coefficient like L and mirrors it.
Hypersurface generate_random(std::uint64_t seed, int m0, int k0, int D, const Rational& density);

}  // namespace segre
