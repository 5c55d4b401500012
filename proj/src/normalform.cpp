#include "segre/normalform.hpp"

#include <algorithm>
#include <memory>
#include <set>

namespace segre {

NonUniqueStage::NonUniqueStage(int N, Matrix kernel, std::vector<std::string> unknowns)
    : std::runtime_error("stage " + std::to_string(N) + " has a kernel of dimension " + std::to_string(kernel.cols())),
      N_(N),
      kernel_(std::move(kernel)),
      unknowns_(std::move(unknowns)) {}

InconsistentStage::InconsistentStage(int N, std::string witness)
    : std::runtime_error("stage " + std::to_string(N) + " is inconsistent: " + witness), N_(N), witness_(std::move(witness)) {}

bool is_hermitian(const TailMap& phi) {
  for (const auto& [mono, c] : phi) {
    auto it = phi.find({mono.n, mono.m, mono.p});
    if (it == phi.end() || it->second != conj(c)) return false;
  }
  return true;
}

namespace {

bool matches(const ConstraintSet& cs, const Hypersurface& M) {
  return cs.layout.m0 == M.m0 && cs.layout.k0 == M.k0 && cs.layout.D == M.D && cs.L == M.L;
}

// Keeps a borrowed constraint set when it fits, otherwise owns a freshly built one.
struct ConstraintHandle {
  std::unique_ptr<ConstraintSet> owned;
  const ConstraintSet* cs = nullptr;
  ConstraintHandle(const Hypersurface& M, const ConstraintSet* given, int threads) {
    if (given && matches(*given, M)) {
      cs = given;
    } else {
      owned = std::make_unique<ConstraintSet>(build_constraints(M.m0, M.k0, M.L, M.D, threads));
      cs = owned.get();
    }
  }
};

SegreMap map_from(const Layout& lay, const Vector& x) {
  SegreMap T = SegreMap::identity(lay.D);
  for (int j = 0; j < lay.nx(); ++j)
    if (!x(j).is_zero()) T.table(lay.x[j].table)[{lay.x[j].k, lay.x[j].l}] = x(j);
  return T;
}

TailMap tail_from(const Layout& lay, const Vector& y) {
  TailMap phi;
  for (int j = 0; j < lay.ny(); ++j)
    if (!y(j).is_zero()) phi[lay.y[j]] = y(j);
  return phi;
}

// Residual of the transforming equation at the current (x, y).
Poly current_residual(const Hypersurface& M, const Layout& lay, const Poly& Q, const Vector& x, const Vector& y) {
  ResidualEvaluator ev(M.m0, M.L, tail_from(lay, y), map_images(Q, map_from(lay, x)), M.D);
  return ev.residual();
}

NormalizationResult assemble(const Hypersurface& M, const Layout& lay, const Vector& x, const Vector& y) {
  NormalizationResult res;
  res.map = map_from(lay, x);
  res.surface = M;
  res.surface.phi = tail_from(lay, y);
  res.reality_preserved = is_hermitian(res.surface.phi);
  res.surface.real = res.reality_preserved;
  return res;
}

std::string monomial_text(const Monomial& m) {
  return "coefficient of z^" + std::to_string(m.m) + " xi^" + std::to_string(m.n) + " nu^" + std::to_string(m.p);
}

int lowest_level(const Layout& lay, const Poly& E) {
  int lv = 0;
  bool first = true;
  for (const auto& [mono, c] : E) {
    const int l = monomial_level(lay.m0, lay.k0, mono);
    if (first || l < lv) lv = l;
    first = false;
  }
  return lv;
}

}  // namespace

NormalizationResult normalize(const Hypersurface& M, const NormalizeOptions& opts) {
  require_valid(M);
  const ConstraintHandle handle(M, opts.constraints, opts.threads);
  const ConstraintSet& cs = *handle.cs;
  const Layout& lay = cs.layout;
  const int nx = lay.nx(), ny = lay.ny();
  const std::set<std::string> deferred_names(cs.deferred.begin(), cs.deferred.end());

  std::map<int, std::vector<int>> cols_at, rows_at;
  std::map<int, std::vector<const ConstraintRow*>> tails_at, pins_at;
  for (int j = 0; j < lay.n(); ++j) cols_at[lay.level(j)].push_back(j);
  for (std::size_t i = 0; i < lay.rows.size(); ++i)
    rows_at[monomial_level(lay.m0, lay.k0, lay.rows[i])].push_back(static_cast<int>(i));
  for (const auto& r : cs.tail_rows) tails_at[r.level].push_back(&r);
  for (const auto& r : cs.pins) pins_at[r.level].push_back(&r);

  const Poly Q = solve_graph(M);
  Vector x = zero_vector(nx), y = zero_vector(ny);
  std::vector<StageDiagnostics> diags;
  const int max_newton = 4 * M.D + 8;

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    for (const auto& [N, cols] : cols_at) {
      const auto& rows = rows_at[N];
      std::vector<const ConstraintRow*> crows = tails_at[N];
      const std::size_t n_tail = crows.size();
      crows.insert(crows.end(), pins_at[N].begin(), pins_at[N].end());

      // jacobian_block puts map columns first
      std::vector<MapUnknown> maps;
      std::vector<Monomial> tails, row_monos;
      for (int j : cols) {
        if (j < nx)
          maps.push_back(lay.x[j]);
        else
          tails.push_back(lay.y[j - nx]);
      }
      std::map<int, int> local;
      std::vector<std::string> names(cols.size());
      {
        int mi = 0, ti = static_cast<int>(maps.size());
        for (int j : cols) {
          local[j] = j < nx ? mi++ : ti++;
          names[local[j]] = lay.name(j);
        }
      }
      for (int i : rows) row_monos.push_back(lay.rows[i]);
      const int n_eq = static_cast<int>(rows.size());
      const auto n_all = static_cast<Eigen::Index>(n_eq + crows.size());

      auto block = [&](ResidualEvaluator& ev) {
        Matrix B = zero_matrix(n_all, static_cast<Eigen::Index>(cols.size()));
        B.topRows(n_eq) = jacobian_block(ev, Q, M.D, maps, tails, row_monos, opts.threads);
        for (std::size_t r = 0; r < crows.size(); ++r) {
          const int off = r < n_tail ? nx : 0;
          for (const auto& [j, v] : crows[r]->row) {
            auto lc = local.find(j + off);
            if (lc != local.end()) B(n_eq + static_cast<Eigen::Index>(r), lc->second) = v;
          }
        }
        return B;
      };
      auto witness = [&](int w) {
        if (w < n_eq) return monomial_text(row_monos[w]);
        return crows[w - n_eq]->label + " " + crows[w - n_eq]->detail;
      };

      StageDiagnostics diag;
      diag.N = N;
      diag.n_unknowns = static_cast<int>(cols.size());
      diag.n_rows = static_cast<int>(n_all);
      for (int j : cols) (deferred_names.count(lay.name(j)) ? diag.deferred : diag.determined).push_back(lay.name(j));

      int it = 0;
      for (;; ++it) {
        if (it == max_newton) throw InconsistentStage(N, "Newton iteration did not terminate");
        ResidualEvaluator ev(M.m0, M.L, tail_from(lay, y), map_images(Q, map_from(lay, x)), M.D);
        const Poly& E = ev.residual();
        Vector F(n_all);
        for (int r = 0; r < n_eq; ++r) F(r) = E.coeff(row_monos[r]);
        for (std::size_t r = 0; r < crows.size(); ++r)
          F(n_eq + static_cast<Eigen::Index>(r)) = dot(crows[r]->row, r < n_tail ? y : x);
        const bool solved = is_zero(F);
        if (solved && (it > 0 || sweep > 0)) break;
        // rank is always measured, also when the level already holds on entry
        const ExactSolver solver(block(ev));
        if (it == 0) {
          diag.rank = solver.rank();
          diag.kernel_dim = solver.kernel_dim();
        }
        if (solver.kernel_dim() > 0) throw NonUniqueStage(N, solver.kernel(), names);
        if (solved) break;
        auto sol = solver.solve(-F);
        if (std::holds_alternative<int>(sol)) throw InconsistentStage(N, witness(std::get<int>(sol)));
        const Vector& d = std::get<Vector>(sol);
        for (int j : cols) {
          if (j < nx)
            x(j) += d(local[j]);
          else
            y(j - nx) += d(local[j]);
        }
      }
      if (sweep == 0) {
        diag.newton_iters = it;
        diags.push_back(std::move(diag));
      } else {
        for (auto& dd : diags)
          if (dd.N == N) dd.newton_iters += it;
      }
    }
    const Poly E = current_residual(M, lay, Q, x, y);
    bool done = E.is_zero();
    for (const auto& r : cs.tail_rows) done = done && dot(r.row, y).is_zero();
    for (const auto& r : cs.pins) done = done && dot(r.row, x).is_zero();
    if (done) {
      NormalizationResult res = assemble(M, lay, x, y);
      res.diagnostics = std::move(diags);
      res.sweeps = sweep + 1;
      return res;
    }
  }
  const Poly E = current_residual(M, lay, Q, x, y);
  throw InconsistentStage(lowest_level(lay, E), "block sweeps did not close the system");
}

NormalizationResult global_solve(const Hypersurface& M, const GlobalSolveOptions& opts) {
  require_valid(M);
  const ConstraintHandle handle(M, opts.constraints, opts.threads);
  const ConstraintSet& cs = *handle.cs;
  const Layout& lay = cs.layout;
  const int nx = lay.nx(), ny = lay.ny(), n = lay.n();

  std::vector<int> perm = opts.column_order;  // factor column c holds unknown perm[c]
  if (perm.empty()) {
    perm.resize(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
  }
  {
    std::vector<int> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (int j = 0; j < n; ++j)
      if (static_cast<int>(sorted.size()) != n || sorted[j] != j) throw std::invalid_argument("column_order is not a permutation");
  }
  std::vector<int> inv(n);
  for (int c = 0; c < n; ++c) inv[perm[c]] = c;

  // constraint rows in the combined numbering; tail rows first, then pins
  std::vector<SparseRow> crows;
  std::vector<const ConstraintRow*> meta;
  for (const auto& r : cs.tail_rows) {
    SparseRow s;
    for (const auto& [j, v] : r.row) s.emplace_back(j + nx, v);
    crows.push_back(std::move(s));
    meta.push_back(&r);
  }
  for (const auto& r : cs.pins) {
    crows.push_back(r.row);
    meta.push_back(&r);
  }
  if (opts.drop_constraint_row) {
    const int d = *opts.drop_constraint_row;
    if (d < 0 || d >= static_cast<int>(crows.size())) throw std::invalid_argument("drop_constraint_row out of range");
    crows.erase(crows.begin() + d);
    meta.erase(meta.begin() + d);
  }

  auto permuted = [&](const SparseRow& r) {
    SparseRow s;
    for (const auto& [j, v] : r) s.emplace_back(inv[j], v);
    std::sort(s.begin(), s.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return s;
  };
  std::vector<SparseRow> full;
  for (const auto& r : cs.model_rows) full.push_back(permuted(r));
  for (const auto& r : crows) full.push_back(permuted(r));
  const int n_eq = static_cast<int>(cs.model_rows.size());
  const ExactSolver solver(std::move(full), n);

  StageDiagnostics diag;
  diag.N = M.D;
  diag.n_unknowns = n;
  diag.n_rows = n_eq + static_cast<int>(crows.size());
  diag.rank = solver.rank();
  diag.kernel_dim = solver.kernel_dim();
  const std::set<std::string> deferred_names(cs.deferred.begin(), cs.deferred.end());
  for (int j = 0; j < n; ++j) (deferred_names.count(lay.name(j)) ? diag.deferred : diag.determined).push_back(lay.name(j));

  if (solver.kernel_dim() > 0) {
    const Matrix Kp = solver.kernel();
    Matrix K(n, Kp.cols());
    for (int c = 0; c < n; ++c) K.row(perm[c]) = Kp.row(c);
    std::vector<std::string> names;
    for (int j = 0; j < n; ++j) names.push_back(lay.name(j));
    int lv = 0;
    for (int j = 0; j < n; ++j)
      if (!K(j, 0).is_zero()) {
        lv = lay.level(j);
        break;
      }
    throw NonUniqueStage(lv, K, std::move(names));
  }

  const Poly Q = solve_graph(M);
  Vector x = zero_vector(nx), y = zero_vector(ny);
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Poly E = current_residual(M, lay, Q, x, y);
    Vector xy(n);
    xy << x, y;
    Vector F(n_eq + static_cast<Eigen::Index>(crows.size()));
    for (int r = 0; r < n_eq; ++r) F(r) = E.coeff(lay.rows[r]);
    for (std::size_t r = 0; r < crows.size(); ++r) F(n_eq + static_cast<Eigen::Index>(r)) = dot(crows[r], xy);
    if (is_zero(F)) {
      NormalizationResult res = assemble(M, lay, x, y);
      diag.newton_iters = it;
      res.diagnostics.push_back(std::move(diag));
      res.sweeps = 1;
      return res;
    }
    auto sol = solver.solve(-F);
    if (std::holds_alternative<int>(sol)) {
      const int w = std::get<int>(sol);
      throw InconsistentStage(M.D, w < n_eq ? monomial_text(lay.rows[w]) : meta[w - n_eq]->label + " " + meta[w - n_eq]->detail);
    }
    const Vector& dp = std::get<Vector>(sol);
    for (int c = 0; c < n; ++c) {
      const int j = perm[c];
      if (j < nx)
        x(j) += dp(c);
      else
        y(j - nx) += dp(c);
    }
  }
  throw InconsistentStage(M.D, "chord iteration did not terminate");
}

NormalizationCheck check_normalized(const Hypersurface& Mp, const ConstraintSet* constraints) {
  require_valid(Mp);
  const ConstraintHandle handle(Mp, constraints, 1);
  const ConstraintSet& cs = *handle.cs;
  NormalizationCheck out;
  for (const auto& [mono, c] : Mp.phi) {
    if (!cs.layout.y_index.count(mono)) {
      out.violations.push_back({"tail", tail_name(mono) + " is not a normal-form coefficient", monomial_level(Mp.m0, Mp.k0, mono), c});
    }
  }
  const auto values = evaluate_tail_rows(cs, Mp.phi);
  for (std::size_t i = 0; i < values.size(); ++i)
    if (!values[i].is_zero())
      out.violations.push_back({cs.tail_rows[i].label, cs.tail_rows[i].detail, cs.tail_rows[i].level, values[i]});
  out.passed = out.violations.empty();
  return out;
}

}  // namespace segre
