#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "segre/constraints.hpp"

namespace segre {

/// One weighted level of the staged solve. N is the level, not the total degree.
struct StageDiagnostics {
  int N = 0;
  int n_unknowns = 0;
  int n_rows = 0;
  int rank = 0;
  int kernel_dim = 0;
  std::vector<std::string> determined;
  std::vector<std::string> deferred;
  int newton_iters = 0;
};

struct NormalizationResult {
  Hypersurface surface;
  SegreMap map;
  std::vector<StageDiagnostics> diagnostics;
  bool reality_preserved = true;
  int sweeps = 0;
};

class NonUniqueStage : public std::runtime_error {
 public:
  NonUniqueStage(int N, Matrix kernel, std::vector<std::string> unknowns);
  [[nodiscard]] int stage() const { return N_; }
  [[nodiscard]] const Matrix& kernel() const { return kernel_; }
  [[nodiscard]] const std::vector<std::string>& unknowns() const { return unknowns_; }

 private:
  int N_;
  Matrix kernel_;
  std::vector<std::string> unknowns_;
};

class InconsistentStage : public std::runtime_error {
 public:
  InconsistentStage(int N, std::string witness);
  [[nodiscard]] int stage() const { return N_; }
  [[nodiscard]] const std::string& witness() const { return witness_; }

 private:
  int N_;
  std::string witness_;
};

struct NormalizeOptions {
  /// Reused when it matches the surface's model; built on demand otherwise.
  const ConstraintSet* constraints = nullptr;
  int threads = 1;
  int max_sweeps = 8;
};

/// Staged solve: weighted levels in ascending order, exact Newton inside each level, block
/// Gauss-Seidel sweeps until the whole system holds.
NormalizationResult normalize(const Hypersurface& M, const NormalizeOptions& opts = {});

struct GlobalSolveOptions {
  const ConstraintSet* constraints = nullptr;
  /// Permutation of the unknown columns used for the factorization (empty: natural order).
  std::vector<int> column_order;
  /// Index into tail rows followed by pins, removed before solving.
  std::optional<int> drop_constraint_row;
  int threads = 1;
  int max_iterations = 200;
};

/// One exact factorization of the full model system, then chord iterations to the exact solution.
NormalizationResult global_solve(const Hypersurface& M, const GlobalSolveOptions& opts = {});

struct NormalizationViolation {
  std::string label;
  std::string detail;
  int level = 0;
  GaussianScalar value;
};

struct NormalizationCheck {
  bool passed = true;
  std::vector<NormalizationViolation> violations;
};

NormalizationCheck check_normalized(const Hypersurface& Mp, const ConstraintSet* constraints = nullptr);

/// Hermitian symmetry φ_nmp = conj(φ_mnp) of a tail.
bool is_hermitian(const TailMap& phi);

}  // namespace segre
