#include "segre/jetdet.hpp"

#include <algorithm>

#include "segre/json_io.hpp"

namespace segre {

DeterminationReport selfmap_kernel(const Hypersurface& M, int D, const SelfmapOptions& opts) {
  Hypersurface S = M;
  S.D = D;
  S.phi.clear();
  if (!opts.probe)
    for (const auto& [mono, c] : M.phi)
      if (mono.degree() <= D) S.phi[mono] = c;
  require_valid(S);

  std::optional<ConstraintSet> built;
  const ConstraintSet* cs = opts.constraints;
  if (!cs || cs->layout.m0 != S.m0 || cs->layout.k0 != S.k0 || cs->layout.D != D || !(cs->L == S.L)) {
    built = build_constraints(S.m0, S.k0, S.L, D, opts.threads);
    cs = &*built;
  }
  const Layout& lay = cs->layout;

  std::vector<MapUnknown> maps;
  if (opts.probe)
    for (Table t : {Table::f, Table::g, Table::ft, Table::gt})
      for (auto [k, l] : {std::pair{1, 0}, std::pair{0, 1}}) maps.push_back({t, k, l});
  const int pad = static_cast<int>(maps.size());
  maps.insert(maps.end(), lay.x.begin(), lay.x.end());
  const int n = static_cast<int>(maps.size());

  const Poly Q = solve_graph(S);
  ResidualEvaluator ev(S.m0, S.L, S.phi, map_images(Q, SegreMap::identity(D)), D);
  const Matrix J = jacobian_block(ev, Q, D, maps, {}, lay.rows, opts.threads);
  std::vector<SparseRow> rows;
  for (Eigen::Index i = 0; i < J.rows(); ++i) rows.push_back(sparse_row(J, i));
  for (const auto& p : cs->pins) {
    SparseRow r;
    for (const auto& [j, v] : p.row) r.emplace_back(j + pad, v);
    rows.push_back(std::move(r));
  }

  // dim of the kernel supported on map degrees >= d
  auto nullity_from = [&](int d) {
    std::vector<int> remap(n, -1);
    int c = 0;
    for (int j = 0; j < n; ++j)
      if (maps[j].k + maps[j].l >= d) remap[j] = c++;
    std::vector<SparseRow> sub;
    for (const auto& r : rows) {
      SparseRow s;
      for (const auto& [j, v] : r)
        if (remap[j] >= 0) s.emplace_back(remap[j], v);
      sub.push_back(std::move(s));
    }
    return ExactSolver(std::move(sub), c).kernel_dim();
  };

  DeterminationReport rep;
  rep.D = D;
  rep.probe = opts.probe;
  rep.surface_hash = surface_hash(S);
  rep.kernel_dims.assign(D + 1, 0);
  const int lowest = opts.probe ? 1 : 2;
  std::vector<int> nullity(D + 2, 0);
  for (int d = lowest; d <= D; ++d) nullity[d] = nullity_from(d);
  for (int d = lowest; d <= D; ++d) rep.kernel_dims[d] = nullity[d] - nullity[d + 1];

  for (const auto& u : maps) rep.unknowns.push_back(u.name());
  const ExactSolver full(rows, n);
  rep.certificates = full.kernel();
  for (Eigen::Index c = 0; c < rep.certificates.cols(); ++c) {
    const Vector v = rep.certificates.col(c);
    for (const auto& r : rows)
      if (!dot(r, v).is_zero()) rep.certificates_valid = false;
  }

  rep.deferred = cs->deferred;
  rep.verified_degree = D;
  for (const auto& name : cs->deferred) {
    for (const auto& u : lay.x)
      if (u.name() == name) rep.verified_degree = std::min(rep.verified_degree, u.k + u.l - 1);
  }
  const bool any = std::any_of(rep.kernel_dims.begin(), rep.kernel_dims.end(), [](int k) { return k > 0; });
  if (any)
    rep.verdict = "not-determined";
  else if (rep.verified_degree < 2)
    rep.verdict = "inconclusive";
  else
    rep.verdict = "determined";
  return rep;
}

namespace {

std::optional<int> first_difference(const SegreMap& a, const SegreMap& b) {
  std::optional<int> best;
  for (Table t : {Table::f, Table::g, Table::ft, Table::gt}) {
    const auto& ta = a.table(t);
    const auto& tb = b.table(t);
    auto consider = [&](const std::pair<int, int>& kl) {
      const int d = kl.first + kl.second;
      if (!best || d < *best) best = d;
    };
    for (const auto& [kl, c] : ta) {
      auto it = tb.find(kl);
      if (it == tb.end() || it->second != c) consider(kl);
    }
    for (const auto& [kl, c] : tb)
      if (!ta.count(kl)) consider(kl);
  }
  return best;
}

}  // namespace

AgreementReport two_map_agreement(const Hypersurface& M, const Hypersurface& Mp, const SegreMap& T1, const SegreMap& T2,
                                  int threads) {
  if (!is_equivalence(M, T1, Mp).holds) throw PreconditionViolated("T1 is not an equivalence M -> Mp");
  if (!is_equivalence(M, T2, Mp).holds) throw PreconditionViolated("T2 is not an equivalence M -> Mp");
  AgreementReport rep;
  const SegreMap S = compose(invert(T2), T1);
  if (!is_equivalence(M, S, M).holds) throw std::logic_error("invert(T2) o T1 is not a self-equivalence");
  rep.selfmap_is_identity = S.is_identity();
  SelfmapOptions so;
  so.threads = threads;
  rep.verdict = selfmap_kernel(M, M.D, so).verdict;
  rep.first_disagreeing_degree = first_difference(T1, T2);
  rep.agree = !rep.first_disagreeing_degree.has_value();
  return rep;
}

}  // namespace segre
