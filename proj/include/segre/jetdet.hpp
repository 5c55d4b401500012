#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "segre/constraints.hpp"

namespace segre {

struct DeterminationReport {
  std::string surface_hash;
  int D = 0;
  bool probe = false;
  /// kernel_dims[d]: new kernel directions first appearing at map degree d (index 0 unused).
  std::vector<int> kernel_dims;
  std::string verdict;  // "determined", "not-determined", "inconclusive"
  /// Largest degree below which no map coefficient is deferred past the truncation.
  int verified_degree = 0;
  std::vector<std::string> deferred;
  std::vector<std::string> unknowns;
  /// Kernel basis, one column per direction, rows indexed like `unknowns`.
  Matrix certificates;
  /// Each certificate kills the linearized self-map residual exactly.
  bool certificates_valid = true;
};

struct SelfmapOptions {
  /// Adds the linear coefficients (k+l = 1) of all four tables and runs on the model φ = 0.
  bool probe = false;
  const ConstraintSet* constraints = nullptr;
  int threads = 1;
};

/// Rank statement for the linearized self-map equation E(M, T, M) = 0 at T = identity.
DeterminationReport selfmap_kernel(const Hypersurface& M, int D, const SelfmapOptions& opts = {});

class PreconditionViolated : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct AgreementReport {
  bool agree = false;
  std::optional<int> first_disagreeing_degree;
  bool selfmap_is_identity = false;
  std::string verdict;
};

/// Both maps must be equivalences M → Mp. Checks T1 = T2 and that invert(T2)∘T1 is a trivial
/// self-equivalence of M, backed by the self-map kernel verdict.
AgreementReport two_map_agreement(const Hypersurface& M, const Hypersurface& Mp, const SegreMap& T1, const SegreMap& T2,
                                  int threads = 1);

}  // namespace segre
