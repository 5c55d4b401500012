#include "segre/fischer.hpp"

#include <algorithm>
#include <random>

namespace segre {

namespace {

void require_nonzero(const HomogeneousPoly& P) {
  if (P.is_zero()) throw ZeroDivisor("P must be nonzero");
  if (P.degree() < 1) throw ZeroDivisor("P must have degree >= 1");
}

// ∂^mono applied to a single monomial, as (result monomial, integer factor); factor 0 when it vanishes.
std::pair<Monomial, Rational> differentiate(const Monomial& target, const Monomial& by) {
  if (target.m < by.m || target.n < by.n || target.p < by.p) return {{}, 0};
  Rational f = 1;
  auto falling = [&](int e, int k) {
    for (int j = 0; j < k; ++j) f *= e - j;
  };
  falling(target.m, by.m);
  falling(target.n, by.n);
  falling(target.p, by.p);
  return {{target.m - by.m, target.n - by.n, target.p - by.p}, f};
}

}  // namespace

Poly apolar_apply(const HomogeneousPoly& P, const Poly& F) {
  require_nonzero(P);
  const int a = P.degree();
  Poly r(F.trunc() ? std::optional<int>(std::max(0, *F.trunc() - a)) : std::nullopt);
  for (const auto& [pm, pc] : P.poly()) {
    const GaussianScalar cp = conj(pc);
    for (const auto& [fm, fc] : F) {
      auto [out, f] = differentiate(fm, pm);
      if (sgn(f) == 0) continue;
      r.add_term(out, cp * fc * GaussianScalar(f));
    }
  }
  return r;
}

GaussianScalar fischer_inner(const HomogeneousPoly& F, const HomogeneousPoly& G) {
  if (F.degree() != G.degree()) throw DegreeMismatch("fischer_inner needs equal degrees");
  GaussianScalar s;
  for (const auto& [mono, fc] : F.poly()) {
    const GaussianScalar gc = G.poly().coeff(mono);
    if (gc.is_zero()) continue;
    s += conj(fc) * gc * GaussianScalar(factorial_weight(mono));
  }
  return s;
}

FischerSplit fischer_decompose(const Poly& F, const HomogeneousPoly& P, const FischerOptions& opts) {
  require_nonzero(P);
  const int a = P.degree();
  FischerSplit out{Poly(F.trunc()), Poly(F.trunc())};
  if (F.is_zero()) return out;
  std::mt19937_64 rng(opts.permutation_seed);
  for (int d = *F.min_degree(); d <= *F.max_degree(); ++d) {
    const HomogeneousPoly Fd = homogeneous_component(F, d);
    if (Fd.is_zero()) continue;
    if (d < a) {
      out.H += Fd.poly();
      continue;
    }
    auto basis = monomial_basis(d - a);
    if (opts.permutation_seed != 0) std::shuffle(basis.begin(), basis.end(), rng);
    std::vector<HomogeneousPoly> images;
    images.reserve(basis.size());
    for (const auto& b : basis) images.emplace_back(mul(P.poly(), Poly::term(b, GaussianScalar(1)), d).untruncated(), d);
    const auto k = static_cast<Eigen::Index>(basis.size());
    Matrix gram(k, k);
    Vector rhs(k);
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = i; j < k; ++j) {
        gram(i, j) = fischer_inner(images[i], images[j]);
        if (j != i) gram(j, i) = conj(gram(i, j));
      }
      rhs(i) = fischer_inner(images[i], Fd);
    }
    auto sol = ExactSolver(gram).solve(rhs);
    if (!std::holds_alternative<Vector>(sol)) throw std::logic_error("Fischer Gram system inconsistent");
    const Vector& c = std::get<Vector>(sol);
    Poly G_d, PG_d;
    for (Eigen::Index i = 0; i < k; ++i) {
      if (c(i).is_zero()) continue;
      G_d.add_term(basis[i], c(i));
      PG_d += c(i) * images[i].poly();
    }
    out.G += G_d;
    out.H += Fd.poly() - PG_d;
  }
  return out;
}

Matrix kernel_constraint_rows(const HomogeneousPoly& P, int d) {
  require_nonzero(P);
  if (d < P.degree()) throw DegreeMismatch("kernel_constraint_rows needs d >= deg P");
  const auto cols = monomial_basis(d);
  const auto rows = monomial_basis(d - P.degree());
  Matrix R = zero_matrix(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Poly img = apolar_apply(P, Poly::term(cols[c], GaussianScalar(1)));
    for (std::size_t r = 0; r < rows.size(); ++r) R(r, c) = img.coeff(rows[r]);
  }
  return R;
}

}  // namespace segre
