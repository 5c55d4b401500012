#pragma once

#include <cstdint>
#include <stdexcept>

#include "segre/linalg.hpp"
#include "segre/poly.hpp"

namespace segre {

class ZeroDivisor : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DegreeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct FischerSplit {
  Poly G;
  Poly H;
};

/// P*(F) = Σ conj(p_mnp) ∂^{m+n+p} F / ∂z^m ∂ξ^n ∂ν^p.
Poly apolar_apply(const HomogeneousPoly& P, const Poly& F);

/// ⟨F,G⟩ = Σ conj(f) g m!n!p!, conjugate-linear in F.
GaussianScalar fischer_inner(const HomogeneousPoly& F, const HomogeneousPoly& G);

struct FischerOptions {
  /// Nonzero: the unknowns of each degree slice are processed in a seeded shuffled order.
  std::uint64_t permutation_seed = 0;
};

/// Unique F = G·P + H with P*(H) = 0, solved slice by slice from the Gram normal equations.
FischerSplit fischer_decompose(const Poly& F, const HomogeneousPoly& P, const FischerOptions& opts = {});

/// Rows R over monomial_basis(d) with P*(X) = 0 iff R·coeffs(X) = 0.
/// Row r corresponds to monomial_basis(d - deg P)[r].
Matrix kernel_constraint_rows(const HomogeneousPoly& P, int d);

}  // namespace segre
