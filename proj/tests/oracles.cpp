#include "oracles.hpp"

namespace segre::oracle {

namespace {

Rational fact(int n) {
  Rational r = 1;
  for (int j = 2; j <= n; ++j) r *= j;
  return r;
}

}  // namespace

Poly apolar_brute(const Poly& P, const Poly& F) {
  Poly out;
  for (const auto& [pm, pc] : P) {
    for (const auto& [fm, fc] : F) {
      if (fm.m < pm.m || fm.n < pm.n || fm.p < pm.p) continue;
      const Rational k = fact(fm.m) / fact(fm.m - pm.m) * fact(fm.n) / fact(fm.n - pm.n) * fact(fm.p) / fact(fm.p - pm.p);
      out.add_term({fm.m - pm.m, fm.n - pm.n, fm.p - pm.p}, conj(pc) * fc * GaussianScalar(k));
    }
  }
  return out;
}

GaussianScalar inner_brute(const Poly& F, const Poly& G) {
  GaussianScalar s;
  for (const auto& [m, f] : F) s += conj(f) * G.coeff(m) * GaussianScalar(fact(m.m) * fact(m.n) * fact(m.p));
  return s;
}

Poly closed_form_m0_1(const Poly& L, int D) {
  const Poly iL = GaussianScalar::i() * L;
  Poly geom = Poly::constant(GaussianScalar(1), D);
  Poly power = Poly::constant(GaussianScalar(1), D);
  for (int j = 1; j <= D; ++j) {
    power = mul(power, iL, D);
    geom += GaussianScalar(2) * power;
  }
  return mul(Poly::variable(Var::nu), geom, D);
}

Poly relation_residual(const Hypersurface& M, const Poly& w) {
  const int D = M.D;
  const Poly nu = Poly::variable(Var::nu, D);
  const Poly u = GaussianScalar(Rational(1, 2)) * (w + nu);
  auto upow = [&](int p) {
    Poly r = Poly::constant(GaussianScalar(1), D);
    for (int j = 0; j < p; ++j) r = mul(r, u, D);
    return r;
  };
  // (w − ν)/2i = −i(w − ν)/2
  Poly E = GaussianScalar(Rational(0), Rational(-1, 2)) * (w - nu);
  E -= mul(upow(M.m0), M.L, D);
  for (const auto& [mono, c] : M.phi) E -= c * mul(Poly::term({mono.m, mono.n, 0}, GaussianScalar(1)), upow(mono.p), D);
  return E;
}

}  // namespace segre::oracle
