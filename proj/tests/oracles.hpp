#pragma once

// Independent reference computations used to check the engine.

#include "segre/hypersurface.hpp"
#include "segre/linalg.hpp"
#include "segre/poly.hpp"

namespace segre::oracle {

/// P*(F) by brute force on a single monomial pair at a time, straight from the definition.
Poly apolar_brute(const Poly& P, const Poly& F);

/// Sum over monomials of conj(f)·g·m!n!p! with factorials computed independently.
GaussianScalar inner_brute(const Poly& F, const Poly& G);

/// ν(1 + iL)/(1 − iL) expanded as ν(1 + 2 Σ_{j>=1} (iL)^j) mod degree D+1.
Poly closed_form_m0_1(const Poly& L, int D);

/// Left-hand side of the defining relation evaluated by direct expansion of ((w+ν)/2)^p.
Poly relation_residual(const Hypersurface& M, const Poly& w);

}  // namespace segre::oracle
