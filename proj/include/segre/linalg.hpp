#pragma once

#include <Eigen/Core>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "segre/gaussian.hpp"

namespace segre {

using Matrix = Eigen::Matrix<GaussianScalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<GaussianScalar, Eigen::Dynamic, 1>;

Matrix zero_matrix(Eigen::Index rows, Eigen::Index cols);
Vector zero_vector(Eigen::Index n);
bool is_zero(const Vector& v);

/// Sorted (column, value) pairs with no stored zeros.
using SparseRow = std::vector<std::pair<int, GaussianScalar>>;

SparseRow sparse_row(const Matrix& a, Eigen::Index row);
GaussianScalar dot(const SparseRow& row, const Vector& x);

/// Exact Gaussian elimination of a rectangular system A x = b over Q(i).
///
/// Pivoting is deterministic: columns are processed left to right and the pivot row is the
/// sparsest candidate, ties broken by lowest original row index. The factorisation is reused
/// for any number of right-hand sides.
class ExactSolver {
 public:
  explicit ExactSolver(const Matrix& a);
  ExactSolver(std::vector<SparseRow> rows, int cols);

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] int rank() const { return static_cast<int>(pivot_cols_.size()); }
  [[nodiscard]] int kernel_dim() const { return cols_ - rank(); }
  [[nodiscard]] const std::vector<int>& pivot_columns() const { return pivot_cols_; }
  [[nodiscard]] std::vector<int> free_columns() const;

  /// A solution with all free variables zero, or the original index of a row that
  /// witnesses inconsistency.
  [[nodiscard]] std::variant<Vector, int> solve(const Vector& b) const;
  /// Canonical kernel basis (one column per free variable).
  [[nodiscard]] Matrix kernel() const;

 private:
  void factor(std::vector<SparseRow> rows);

  struct Op {
    int target;
    int source;
    GaussianScalar factor;
  };
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Op> ops_;
  std::vector<int> pivot_rows_;  // original row index of each pivot, in pivot order
  std::vector<int> pivot_cols_;
  std::vector<SparseRow> upper_;  // reduced rows, indexed by original row
};

/// Nonzero rows of the reduced row echelon form (canonical basis of the row space).
Matrix reduced_row_echelon(const Matrix& a);
int rank(const Matrix& a);
Matrix nullspace(const Matrix& a);

/// Stacks matrices with equal column counts.
Matrix vstack(const std::vector<const Matrix*>& blocks, Eigen::Index cols);

}  // namespace segre
