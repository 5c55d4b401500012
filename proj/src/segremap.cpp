#include "segre/segremap.hpp"

#include "segre/linearization.hpp"

namespace segre {

namespace {

// H uses the slots (z, ν) for (z, w); H̃ uses (ξ, ν).
Poly table_poly(const CoeffTable& t, Var base, int D) {
  Poly r(D);
  for (const auto& [kl, c] : t)
    r.add_term(base == Var::z ? Monomial{kl.first, 0, kl.second} : Monomial{0, kl.first, kl.second}, c);
  return r;
}

CoeffTable extract(const Poly& p, Var base) {
  CoeffTable t;
  for (const auto& [mono, c] : p) {
    const int k = base == Var::z ? mono.m : mono.n;
    if (k + mono.p >= 2) t[{k, mono.p}] = c;
  }
  return t;
}

struct Pair {
  Poly a;  // z or ξ component
  Poly b;  // w or ν component
};

Pair full_pair(const SegreMap& T, bool tilde) {
  const int D = T.D;
  const Var base = tilde ? Var::xi : Var::z;
  Pair p{table_poly(tilde ? T.ft : T.f, base, D), table_poly(tilde ? T.gt : T.g, base, D)};
  p.a += Poly::variable(base, D);
  p.b += Poly::variable(Var::nu, D);
  return p;
}

Substitution images_of(const Pair& p, bool tilde) {
  Substitution s;
  s[tilde ? 1 : 0] = p.a;
  s[2] = p.b;
  return s;
}

}  // namespace

const char* table_name(Table t) {
  switch (t) {
    case Table::f: return "f";
    case Table::g: return "g";
    case Table::ft: return "ft";
    case Table::gt: return "gt";
  }
  return "?";
}

SegreMap SegreMap::identity(int D) {
  SegreMap T;
  T.D = D;
  return T;
}

const CoeffTable& SegreMap::table(Table t) const {
  switch (t) {
    case Table::f: return f;
    case Table::g: return g;
    case Table::ft: return ft;
    default: return gt;
  }
}

CoeffTable& SegreMap::table(Table t) { return const_cast<CoeffTable&>(std::as_const(*this).table(t)); }

bool SegreMap::is_identity() const { return f.empty() && g.empty() && ft.empty() && gt.empty(); }

void SegreMap::normalize_storage() {
  for (CoeffTable* t : {&f, &g, &ft, &gt}) {
    for (auto it = t->begin(); it != t->end();) {
      const auto [k, l] = it->first;
      if (k < 0 || l < 0 || k + l < 2 || k + l > D)
        throw std::invalid_argument("map index (" + std::to_string(k) + "," + std::to_string(l) + ") outside 2..D");
      if (it->second.is_zero())
        it = t->erase(it);
      else
        ++it;
    }
  }
}

Jet jet(const SegreMap& T, int k) {
  if (k < 0 || k > T.D) throw std::invalid_argument("jet order outside 0..D");
  Jet J;
  J.order = k;
  auto cut = [k](const CoeffTable& src, CoeffTable& dst) {
    for (const auto& [kl, c] : src)
      if (kl.first + kl.second <= k) dst.emplace(kl, c);
  };
  cut(T.f, J.f);
  cut(T.g, J.g);
  cut(T.ft, J.ft);
  cut(T.gt, J.gt);
  return J;
}

SegreMap from_jet(const Jet& J, int D) {
  SegreMap T{D, J.f, J.g, J.ft, J.gt};
  T.normalize_storage();
  return T;
}

SegreMap compose(const SegreMap& S, const SegreMap& T) {
  if (S.D != T.D) throw std::invalid_argument("compose needs equal truncation degrees");
  const int D = S.D;
  SegreMap R = SegreMap::identity(D);
  for (bool tilde : {false, true}) {
    const Pair ps = full_pair(S, tilde), pt = full_pair(T, tilde);
    const Substitution img = images_of(pt, tilde);
    const Var base = tilde ? Var::xi : Var::z;
    const Poly a = substitute(ps.a, img, D) - Poly::variable(base, D);
    const Poly b = substitute(ps.b, img, D) - Poly::variable(Var::nu, D);
    (tilde ? R.ft : R.f) = extract(a, base);
    (tilde ? R.gt : R.g) = extract(b, base);
  }
  return R;
}

SegreMap invert(const SegreMap& T) {
  const int D = T.D;
  SegreMap R = SegreMap::identity(D);
  for (bool tilde : {false, true}) {
    const Var base = tilde ? Var::xi : Var::z;
    const Poly na = table_poly(tilde ? T.ft : T.f, base, D);
    const Poly nb = table_poly(tilde ? T.gt : T.g, base, D);
    // S = id − N_T(S); each pass fixes one more degree.
    Pair s{Poly::variable(base, D), Poly::variable(Var::nu, D)};
    for (int it = 1; it < D; ++it) {
      const Substitution img = images_of(s, tilde);
      Pair next{Poly::variable(base, D) - substitute(na, img, D), Poly::variable(Var::nu, D) - substitute(nb, img, D)};
      if (next.a == s.a && next.b == s.b) break;
      s = std::move(next);
    }
    (tilde ? R.ft : R.f) = extract(s.a - Poly::variable(base, D), base);
    (tilde ? R.gt : R.g) = extract(s.b - Poly::variable(Var::nu, D), base);
  }
  return R;
}

Poly transform_residual(const Hypersurface& M, const SegreMap& T, const Hypersurface& Mp) {
  if (M.m0 != Mp.m0 || M.k0 != Mp.k0) throw ModelMismatch("surfaces have different (m0, k0)");
  if (!(M.L == Mp.L)) throw ModelMismatch("surfaces have different L");
  if (M.D != Mp.D || T.D != M.D) throw ModelMismatch("surfaces and map must share D");
  require_valid(M);
  require_valid(Mp);
  ResidualEvaluator ev(Mp.m0, Mp.L, Mp.phi, map_images(solve_graph(M), T), M.D);
  return ev.residual();
}

EquivalenceCheck is_equivalence(const Hypersurface& M, const SegreMap& T, const Hypersurface& Mp) {
  const Poly E = transform_residual(M, T, Mp);
  EquivalenceCheck r;
  r.holds = E.is_zero();
  if (!r.holds) r.first_nonzero_degree = E.min_degree();
  return r;
}

}  // namespace segre
