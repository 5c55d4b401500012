#include "segre/constraints.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "segre/parallel.hpp"

namespace segre {

std::string MapUnknown::name() const {
  return std::string(table_name(table)) + "[" + std::to_string(k) + "," + std::to_string(l) + "]";
}

std::string tail_name(const Monomial& mono) {
  return "phi[" + std::to_string(mono.m) + "," + std::to_string(mono.n) + "," + std::to_string(mono.p) + "]";
}

int monomial_level(int m0, int k0, const Monomial& mono) {
  return (1 - m0) * (mono.m + mono.n) + (k0 - m0) * mono.p;
}

int unknown_level(int m0, int k0, const MapUnknown& u) {
  if (u.table == Table::g || u.table == Table::gt) return monomial_level(m0, k0, {u.k, 0, u.l});
  // f enters through L_z·ν^{m0}·z^k w^l, whose lowest term is z^{k+d−1} ν^{m0+l}
  const int d = k0 - m0;
  return monomial_level(m0, k0, {u.k + d - 1, 0, m0 + u.l});
}

int Layout::level(int j) const {
  return j < nx() ? unknown_level(m0, k0, x[j]) : monomial_level(m0, k0, y[j - nx()]);
}

std::string Layout::name(int j) const { return j < nx() ? x[j].name() : tail_name(y[j - nx()]); }

Layout make_layout(int m0, int k0, int D) {
  Layout lay;
  lay.m0 = m0;
  lay.k0 = k0;
  lay.D = D;
  for (Table t : {Table::f, Table::g, Table::ft, Table::gt})
    for (int d = 2; d <= D; ++d)
      for (int k = d; k >= 0; --k) lay.x.push_back({t, k, d - k});
  for (int d = k0 + 1; d <= D; ++d)
    for (const auto& mono : monomial_basis(d))
      if (m0 == 0 || mono.p >= 1) lay.y.push_back(mono);
  for (int d = 0; d <= D; ++d)
    for (const auto& mono : monomial_basis(d)) lay.rows.push_back(mono);
  for (std::size_t i = 0; i < lay.rows.size(); ++i) lay.row_index[lay.rows[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < lay.y.size(); ++i) lay.y_index[lay.y[i]] = static_cast<int>(i);
  return lay;
}

Matrix jacobian_block(ResidualEvaluator& ev, const Poly& Q, int D, const std::vector<MapUnknown>& maps,
                      const std::vector<Monomial>& tails, const std::vector<Monomial>& rows, int threads) {
  bool need[4] = {false, false, false, false};
  std::set<int> wl[2];  // powers of W needed for f and g
  for (const auto& u : maps) {
    need[static_cast<int>(u.table)] = true;
    if (u.table == Table::f) wl[0].insert(u.l);
    if (u.table == Table::g) wl[1].insert(u.l);
  }
  Poly part[4];
  if (need[0]) part[0] = ev.d_z();
  if (need[1]) part[1] = ev.d_w();
  if (need[2]) part[2] = ev.d_xi();
  if (need[3]) part[3] = ev.d_nu();

  int max_l = 0;
  for (const auto& s : wl)
    if (!s.empty()) max_l = std::max(max_l, *s.rbegin());
  std::vector<Poly> wpow{Poly::constant(GaussianScalar(1), D)};
  const Poly Q0 = Q.truncated(D);
  while (static_cast<int>(wpow.size()) <= max_l) wpow.push_back(mul(wpow.back(), Q0, D));

  // ∂E/∂z′ · W^l and ∂E/∂w′ · W^l, one product per (table, l)
  std::vector<std::pair<int, int>> jobs;
  for (int t = 0; t < 2; ++t)
    for (int l : wl[t]) jobs.emplace_back(t, l);
  std::vector<Poly> prod(jobs.size());
  parallel_for(jobs.size(), threads, [&](std::size_t i) { prod[i] = mul(part[jobs[i].first], wpow[jobs[i].second], D); });
  std::map<std::pair<int, int>, const Poly*> by_job;
  for (std::size_t i = 0; i < jobs.size(); ++i) by_job[jobs[i]] = &prod[i];

  const std::vector<Poly> tail_cols = ev.tail_columns(tails, threads);

  std::map<Monomial, int, GradedLex> index;
  for (std::size_t i = 0; i < rows.size(); ++i) index[rows[i]] = static_cast<int>(i);
  const auto ncols = static_cast<Eigen::Index>(maps.size() + tails.size());
  Matrix J = zero_matrix(static_cast<Eigen::Index>(rows.size()), ncols);
  parallel_for(static_cast<std::size_t>(ncols), threads, [&](std::size_t c) {
    Poly col;
    if (c < maps.size()) {
      const auto& u = maps[c];
      const int t = static_cast<int>(u.table);
      if (t < 2)
        col = shift(*by_job.at({t, u.l}), {u.k, 0, 0}, D);
      else
        col = shift(part[t], {0, u.k, u.l}, D);
    } else {
      col = tail_cols[c - maps.size()];
    }
    for (const auto& [mono, v] : col) {
      auto it = index.find(mono);
      if (it != index.end()) J(it->second, static_cast<Eigen::Index>(c)) = v;
    }
  });
  return J;
}

namespace {

int row_level(const Layout& lay, const SparseRow& row, int offset, const std::string& what) {
  if (row.empty()) throw std::logic_error("empty constraint row");
  const int lv = lay.level(row.front().first + offset);
  for (const auto& [j, v] : row)
    if (lay.level(j + offset) != lv) throw DegenerateModel(what + " row mixes weighted levels");
  return lv;
}

SparseRow to_sparse(const Vector& v, Eigen::Index from, Eigen::Index count, bool conjugate,
                    const std::function<Rational(Eigen::Index)>& weight) {
  SparseRow r;
  for (Eigen::Index j = 0; j < count; ++j) {
    const auto& e = v(from + j);
    if (e.is_zero()) continue;
    GaussianScalar c = conjugate ? conj(e) : e;
    if (weight) c *= GaussianScalar(weight(j));
    r.emplace_back(static_cast<int>(j), std::move(c));
  }
  return r;
}

}  // namespace

ConstraintSet build_constraints(int m0, int k0, const Poly& L, int D, int threads) {
  ConstraintSet cs;
  cs.layout = make_layout(m0, k0, D);
  cs.L = L;
  const Layout& lay = cs.layout;
  const int nx = lay.nx(), ny = lay.ny();

  Hypersurface model;
  model.m0 = m0;
  model.k0 = k0;
  model.L = L;
  model.D = D;
  const Poly Q0 = solve_graph(model);
  ResidualEvaluator ev(m0, L, {}, map_images(Q0, SegreMap::identity(D)), D);
  const Matrix J = jacobian_block(ev, Q0, D, lay.x, lay.y, lay.rows, threads);
  for (Eigen::Index i = 0; i < J.rows(); ++i) cs.model_rows.push_back(sparse_row(J, i));

  // vanishing rows
  for (int j = 0; j < ny; ++j) {
    const auto& mono = lay.y[j];
    if ((mono.n == 0 && mono.p == 0) || mono.m == 0)
      cs.tail_rows.push_back({"vanishing", tail_name(mono) + " = 0", lay.level(nx + j), {{j, GaussianScalar(1)}}});
  }
  // orthogonality rows
  const Poly Lxi = partial_derivative(L, Var::xi);
  const int d = k0 - m0;
  for (int N = k0 + 1; N <= D; ++N) {
    const int s = N - k0 + 1;
    for (int kt = s; kt >= 0; --kt) {
      const int lt = s - kt;
      const HomogeneousPoly P(mul(Lxi, Poly::term({0, kt, 0}, GaussianScalar(1)), D + 1), d - 1 + kt);
      const Matrix R = kernel_constraint_rows(P, N);
      const auto row_basis = monomial_basis(N - P.degree());
      const auto col_basis = monomial_basis(N);
      const auto target = std::find(row_basis.begin(), row_basis.end(), Monomial{0, 0, m0 + lt});
      const auto r = static_cast<Eigen::Index>(target - row_basis.begin());
      SparseRow row;
      for (std::size_t c = 0; c < col_basis.size(); ++c) {
        if (R(r, static_cast<Eigen::Index>(c)).is_zero()) continue;
        auto it = lay.y_index.find(col_basis[c]);
        if (it == lay.y_index.end()) throw DegenerateModel("orthogonality row touches a tail monomial outside the unknowns");
        row.emplace_back(it->second, R(r, static_cast<Eigen::Index>(c)));
      }
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      if (row.empty()) continue;
      const std::string detail = "k~=" + std::to_string(kt) + " l~=" + std::to_string(lt) + " N=" + std::to_string(N);
      cs.tail_rows.push_back({"orthogonal", detail, row_level(lay, row, nx, "orthogonal"), std::move(row)});
    }
  }

  // complement rows from the kernel of [J; 0 C12]
  Matrix C12 = zero_matrix(static_cast<Eigen::Index>(cs.tail_rows.size()), nx + ny);
  for (std::size_t i = 0; i < cs.tail_rows.size(); ++i)
    for (const auto& [j, v] : cs.tail_rows[i].row) C12(static_cast<Eigen::Index>(i), nx + j) = v;
  const Matrix K = nullspace(vstack({&J, &C12}, nx + ny));
  const Matrix A = J.leftCols(nx);
  const Matrix kerA = nullspace(A);

  std::vector<Vector> comp;
  for (Eigen::Index c = 0; c < K.cols(); ++c) {
    const Vector v = K.col(c);
    if (is_zero(Vector(v.tail(ny)))) continue;
    comp.push_back(v);
  }
  if (!comp.empty()) {
    Matrix Cm = zero_matrix(static_cast<Eigen::Index>(comp.size()), ny);
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int j = 0; j < ny; ++j)
        Cm(static_cast<Eigen::Index>(i), j) = conj(comp[i](nx + j)) * GaussianScalar(factorial_weight(lay.y[j]));
    const Matrix Rc = reduced_row_echelon(Cm);
    for (Eigen::Index i = 0; i < Rc.rows(); ++i) {
      SparseRow row = sparse_row(Rc, i);
      const int lv = row_level(lay, row, nx, "complement");
      cs.tail_rows.push_back({"complement", "level " + std::to_string(lv), lv, std::move(row)});
    }
  }

  // pins
  std::set<int> support;
  for (Eigen::Index c = 0; c < kerA.cols(); ++c) {
    const Vector v = kerA.col(c);
    SparseRow row = to_sparse(v, 0, nx, true, {});
    for (const auto& [j, e] : row) support.insert(j);
    const int lv = row_level(lay, row, 0, "pin");
    cs.pins.push_back({"pin", lay.name(row.front().first), lv, std::move(row)});
  }
  for (int j : support) cs.deferred.push_back(lay.name(j));

  // the completed system must be square and of full rank
  const std::size_t total = cs.model_rows.size() + cs.tail_rows.size() + cs.pins.size();
  std::vector<SparseRow> full = cs.model_rows;
  for (const auto& r : cs.tail_rows) {
    SparseRow s;
    for (const auto& [j, v] : r.row) s.emplace_back(j + nx, v);
    full.push_back(std::move(s));
  }
  for (const auto& r : cs.pins) full.push_back(r.row);
  const ExactSolver solver(std::move(full), nx + ny);
  const int n_constraints = static_cast<int>(cs.tail_rows.size() + cs.pins.size());
  if (solver.rank() != nx + ny)
    throw DegenerateModel("normalization system has rank " + std::to_string(solver.rank()) + " for " +
                          std::to_string(nx + ny) + " unknowns (" + std::to_string(total) + " rows)");
  if (rank(J) + n_constraints != nx + ny)
    throw DegenerateModel("normalization constraints are not independent of the transforming equation");

  // z^k L_z split against iL, kept as diagnostics
  const HomogeneousPoly iL(GaussianScalar::i() * L, d);
  const Poly Lz = partial_derivative(L, Var::z);
  for (int k = 1; k <= D - k0 + 1; ++k) {
    const FischerSplit split = fischer_decompose(mul(Lz, Poly::term({k, 0, 0}, GaussianScalar(1)), D + k), iL);
    cs.lz_splits.push_back({k, split.G, split.H});
  }
  return cs;
}

std::vector<GaussianScalar> evaluate_tail_rows(const ConstraintSet& cs, const TailMap& phi) {
  Vector y = zero_vector(cs.layout.ny());
  for (const auto& [mono, c] : phi) {
    auto it = cs.layout.y_index.find(mono);
    if (it != cs.layout.y_index.end()) y(it->second) = c;
  }
  std::vector<GaussianScalar> out;
  out.reserve(cs.tail_rows.size());
  for (const auto& r : cs.tail_rows) out.push_back(dot(r.row, y));
  return out;
}

}  // namespace segre
