#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "segre/hypersurface.hpp"
#include "segre/poly.hpp"

namespace segre {

/// Coefficients c_{k,l} of z^k w^l (or ξ^k ν^l), all with 2 <= k+l <= D.
using CoeffTable = std::map<std::pair<int, int>, GaussianScalar>;

enum class Table : int { f = 0, g = 1, ft = 2, gt = 3 };
const char* table_name(Table t);

/// H(z,w) = (z + Σ f z^k w^l, w + Σ g z^k w^l), H̃(ξ,ν) = (ξ + Σ f̃ ξ^k ν^l, ν + Σ g̃ ξ^k ν^l).
struct SegreMap {
  int D = 0;
  CoeffTable f, g, ft, gt;

  static SegreMap identity(int D);
  [[nodiscard]] const CoeffTable& table(Table t) const;
  CoeffTable& table(Table t);
  [[nodiscard]] bool is_identity() const;
  /// Drops zeros and enforces 2 <= k+l <= D; throws std::invalid_argument otherwise on bad indices.
  void normalize_storage();

  friend bool operator==(const SegreMap&, const SegreMap&) = default;
};

/// Sub-tables with k+l <= order.
struct Jet {
  int order = 0;
  CoeffTable f, g, ft, gt;
  friend bool operator==(const Jet&, const Jet&) = default;
};

Jet jet(const SegreMap& T, int k);
/// The map whose tables equal the jet, at truncation D.
SegreMap from_jet(const Jet& J, int D);

/// S ∘ T mod degree D+1.
SegreMap compose(const SegreMap& S, const SegreMap& T);
SegreMap invert(const SegreMap& T);

class ModelMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The transforming-equation residual E(z, ξ, ν) of T between M and Mp, with w = Q_M.
Poly transform_residual(const Hypersurface& M, const SegreMap& T, const Hypersurface& Mp);

struct EquivalenceCheck {
  bool holds = false;
  std::optional<int> first_nonzero_degree;
};

EquivalenceCheck is_equivalence(const Hypersurface& M, const SegreMap& T, const Hypersurface& Mp);

}  // namespace segre
