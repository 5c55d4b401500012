#include "segre/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace segre {

Matrix zero_matrix(Eigen::Index rows, Eigen::Index cols) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = GaussianScalar();
  return m;
}

Vector zero_vector(Eigen::Index n) {
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = GaussianScalar();
  return v;
}

bool is_zero(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) return false;
  return true;
}

SparseRow sparse_row(const Matrix& a, Eigen::Index row) {
  SparseRow r;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    if (!a(row, j).is_zero()) r.emplace_back(static_cast<int>(j), a(row, j));
  return r;
}

GaussianScalar dot(const SparseRow& row, const Vector& x) {
  GaussianScalar s;
  for (const auto& [j, v] : row) s.add_product(v, x(j));
  return s;
}

namespace {

// target -= factor * source, both sorted; result stays sorted with zeros removed.
void axpy(SparseRow& target, const GaussianScalar& factor, const SparseRow& source) {
  SparseRow out;
  out.reserve(target.size() + source.size());
  std::size_t i = 0, j = 0;
  while (i < target.size() || j < source.size()) {
    if (j == source.size() || (i < target.size() && target[i].first < source[j].first)) {
      out.push_back(std::move(target[i++]));
    } else if (i == target.size() || source[j].first < target[i].first) {
      out.emplace_back(source[j].first, -(factor * source[j].second));
      ++j;
    } else {
      GaussianScalar v = std::move(target[i].second);
      v -= factor * source[j].second;
      if (!v.is_zero()) out.emplace_back(target[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  target = std::move(out);
}

}  // namespace

ExactSolver::ExactSolver(const Matrix& a) : rows_(static_cast<int>(a.rows())), cols_(static_cast<int>(a.cols())) {
  std::vector<SparseRow> rows(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) rows[i] = sparse_row(a, i);
  factor(std::move(rows));
}

ExactSolver::ExactSolver(std::vector<SparseRow> rows, int cols) : rows_(static_cast<int>(rows.size())), cols_(cols) {
  factor(std::move(rows));
}

void ExactSolver::factor(std::vector<SparseRow> rows) {
  std::vector<char> used(rows.size(), 0);
  // Bucket rows by leading column so each column only visits its candidates.
  std::vector<std::vector<int>> by_lead(cols_ + 1);
  for (int i = 0; i < rows_; ++i) by_lead[rows[i].empty() ? cols_ : rows[i].front().first].push_back(i);
  for (int c = 0; c < cols_; ++c) {
    auto& cand = by_lead[c];
    if (cand.empty()) continue;
    std::sort(cand.begin(), cand.end());
    int best = cand.front();
    for (int r : cand)
      if (rows[r].size() < rows[best].size()) best = r;
    used[best] = 1;
    pivot_rows_.push_back(best);
    pivot_cols_.push_back(c);
    const GaussianScalar& pv = rows[best].front().second;
    for (int r : cand) {
      if (r == best) continue;
      GaussianScalar f = rows[r].front().second / pv;
      axpy(rows[r], f, rows[best]);
      ops_.push_back({r, best, std::move(f)});
      by_lead[rows[r].empty() ? cols_ : rows[r].front().first].push_back(r);
    }
    cand.clear();
  }
  upper_ = std::move(rows);
}

std::vector<int> ExactSolver::free_columns() const {
  std::vector<int> out;
  std::size_t k = 0;
  for (int c = 0; c < cols_; ++c) {
    if (k < pivot_cols_.size() && pivot_cols_[k] == c) {
      ++k;
      continue;
    }
    out.push_back(c);
  }
  return out;
}

std::variant<Vector, int> ExactSolver::solve(const Vector& b) const {
  if (b.size() != rows_) throw std::invalid_argument("rhs size mismatch");
  Vector y = b;
  for (const auto& op : ops_)
    if (!y(op.source).is_zero()) y(op.target) -= op.factor * y(op.source);
  std::vector<char> is_pivot(rows_, 0);
  for (int r : pivot_rows_) is_pivot[r] = 1;
  for (int r = 0; r < rows_; ++r)
    if (!is_pivot[r] && !y(r).is_zero()) return r;
  Vector x = zero_vector(cols_);
  for (std::size_t k = pivot_rows_.size(); k-- > 0;) {
    const auto& row = upper_[pivot_rows_[k]];
    GaussianScalar s = y(pivot_rows_[k]);
    for (std::size_t t = 1; t < row.size(); ++t) s -= row[t].second * x(row[t].first);
    x(pivot_cols_[k]) = s / row.front().second;
  }
  return x;
}

Matrix ExactSolver::kernel() const {
  const auto free = free_columns();
  Matrix basis = zero_matrix(cols_, static_cast<Eigen::Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    Vector x = zero_vector(cols_);
    x(free[f]) = GaussianScalar(1);
    for (std::size_t k = pivot_rows_.size(); k-- > 0;) {
      const auto& row = upper_[pivot_rows_[k]];
      GaussianScalar s;
      for (std::size_t t = 1; t < row.size(); ++t) s -= row[t].second * x(row[t].first);
      x(pivot_cols_[k]) = s / row.front().second;
    }
    basis.col(static_cast<Eigen::Index>(f)) = x;
  }
  return basis;
}

Matrix reduced_row_echelon(const Matrix& a) {
  ExactSolver s(a);
  // The kernel basis K (n×k) determines the row space: RREF rows are e_pivot - sum over free columns.
  const auto& piv = s.pivot_columns();
  const auto free = s.free_columns();
  Matrix k = s.kernel();
  Matrix out = zero_matrix(static_cast<Eigen::Index>(piv.size()), a.cols());
  for (std::size_t r = 0; r < piv.size(); ++r) {
    out(r, piv[r]) = GaussianScalar(1);
    for (std::size_t f = 0; f < free.size(); ++f) out(r, free[f]) = -k(piv[r], f);
  }
  return out;
}

int rank(const Matrix& a) { return ExactSolver(a).rank(); }

Matrix nullspace(const Matrix& a) { return ExactSolver(a).kernel(); }

Matrix vstack(const std::vector<const Matrix*>& blocks, Eigen::Index cols) {
  Eigen::Index rows = 0;
  for (const auto* b : blocks) {
    if (b->cols() != cols && b->rows() != 0) throw std::invalid_argument("vstack column mismatch");
    rows += b->rows();
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const auto* b : blocks) {
    for (Eigen::Index i = 0; i < b->rows(); ++i, ++at)
      for (Eigen::Index j = 0; j < cols; ++j) out(at, j) = (*b)(i, j);
  }
  return out;
}

}  // namespace segre
