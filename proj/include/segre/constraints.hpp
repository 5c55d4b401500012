#pragma once

#include <map>
#include <string>
#include <vector>

#include "segre/fischer.hpp"
#include "segre/hypersurface.hpp"
#include "segre/linalg.hpp"
#include "segre/linearization.hpp"
#include "segre/segremap.hpp"

namespace segre {

/// A map coefficient of one of the four tables.
struct MapUnknown {
  Table table;
  int k = 0;
  int l = 0;
  [[nodiscard]] std::string name() const;
};

/// Weighted level w(z^m ξ^n ν^p) = (1 − m0)(m + n) + (k0 − m0)p.
int monomial_level(int m0, int k0, const Monomial& mono);
/// Level of the leading contribution of a map coefficient to the residual.
int unknown_level(int m0, int k0, const MapUnknown& u);
std::string tail_name(const Monomial& mono);

/// Unknowns and equations of the truncated transforming equation.
///
/// x: f, g, f̃, g̃ with 2 <= k+l <= D. y: φ′_mnp with k0+1 <= m+n+p <= D (p >= 1 when m0 != 0).
/// Equations: the coefficients of E on every monomial of degree <= D.
struct Layout {
  int m0 = 0;
  int k0 = 0;
  int D = 0;
  std::vector<MapUnknown> x;
  std::vector<Monomial> y;
  std::vector<Monomial> rows;
  std::map<Monomial, int, GradedLex> row_index;
  std::map<Monomial, int, GradedLex> y_index;

  [[nodiscard]] int nx() const { return static_cast<int>(x.size()); }
  [[nodiscard]] int ny() const { return static_cast<int>(y.size()); }
  [[nodiscard]] int n() const { return nx() + ny(); }
  /// Level of unknown j in the combined (x, y) numbering.
  [[nodiscard]] int level(int j) const;
  [[nodiscard]] std::string name(int j) const;
};

Layout make_layout(int m0, int k0, int D);

/// Columns of ∂E over the given map unknowns and tail monomials, restricted to `rows`.
/// Output is rows.size() × (maps.size() + tails.size()), maps first.
Matrix jacobian_block(ResidualEvaluator& ev, const Poly& Q, int D, const std::vector<MapUnknown>& maps,
                      const std::vector<Monomial>& tails, const std::vector<Monomial>& rows, int threads = 1);

/// One linear row over y (tail rows) or over x (pins), with its weighted level.
struct ConstraintRow {
  std::string label;  // "vanishing", "orthogonal", "complement", "pin"
  std::string detail;
  int level = 0;
  SparseRow row;
};

/// z^k L_z = α·iL + L_{1,k−1}, the Fischer split of z^k L_z by iL.
struct LzSplit {
  int k = 0;
  Poly alpha;
  Poly remainder;
};

/// All normalization rows for the model (m0, k0, L) at truncation D.
///
/// Tail rows: vanishing (φ′_{N00} = 0, φ′_{0np} = 0), orthogonal (Fischer orthogonality of the slice to
/// ν^{m0+l̃} ξ^{k̃} L_ξ), and the complement rows: the Fischer-orthogonal complement, inside the
/// span of model tails reachable by map coefficients, of what the first two kinds already fix.
/// Pins: x orthogonal to the kernel of the map part of the model Jacobian (directions whose
/// effect lies beyond degree D).
struct ConstraintSet {
  Layout layout;
  Poly L;
  std::vector<ConstraintRow> tail_rows;
  std::vector<ConstraintRow> pins;
  std::vector<SparseRow> model_rows;  // Jacobian at the model, over (x, y)
  std::vector<LzSplit> lz_splits;
  std::vector<std::string> deferred;  // map unknowns in the support of the pins
};

class DegenerateModel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ConstraintSet build_constraints(int m0, int k0, const Poly& L, int D, int threads = 1);

/// Values of every tail row on the tail coefficients of a surface.
std::vector<GaussianScalar> evaluate_tail_rows(const ConstraintSet& cs, const TailMap& phi);

}  // namespace segre
