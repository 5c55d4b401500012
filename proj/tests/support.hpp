#pragma once

#include <random>

#include "segre/poly.hpp"
#include "segre/segremap.hpp"

namespace segre::test {

inline GaussianScalar gs(long re, long im = 0) { return GaussianScalar(Rational(re), Rational(im)); }
inline GaussianScalar gq(long rn, long rd, long in = 0, long id = 1) {
  Rational a(rn, rd), b(in, id);
  a.canonicalize();
  b.canonicalize();
  return GaussianScalar(a, b);
}

inline Poly P(std::initializer_list<std::pair<Monomial, GaussianScalar>> terms, std::optional<int> trunc = std::nullopt) {
  Poly p(trunc);
  for (const auto& [m, c] : terms) p.add_term(m, c);
  return p;
}

inline Poly z() { return Poly::variable(Var::z); }
inline Poly xi() { return Poly::variable(Var::xi); }
inline Poly nu() { return Poly::variable(Var::nu); }

/// Seeded random Gaussian rational with small height.
inline GaussianScalar random_scalar(std::mt19937_64& rng, int h = 3) {
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  Rational re(draw(-h, h), static_cast<unsigned long>(draw(1, h)));
  Rational im(draw(-h, h), static_cast<unsigned long>(draw(1, h)));
  re.canonicalize();
  im.canonicalize();
  return GaussianScalar(re, im);
}

/// Random polynomial with monomials of degree lo..hi, each kept with probability 1/2.
inline Poly random_poly(std::mt19937_64& rng, int lo, int hi) {
  Poly p;
  for (int d = lo; d <= hi; ++d)
    for (const auto& m : monomial_basis(d))
      if (rng() % 2) p.add_term(m, random_scalar(rng));
  return p;
}

inline Poly random_homogeneous(std::mt19937_64& rng, int d) {
  for (;;) {
    Poly p = random_poly(rng, d, d);
    if (!p.is_zero()) return p;
  }
}

/// Random identity-1-jet map with about `keep` out of 8 entries filled per degree.
inline SegreMap random_map(std::mt19937_64& rng, int D, int keep = 3) {
  SegreMap T = SegreMap::identity(D);
  for (Table t : {Table::f, Table::g, Table::ft, Table::gt})
    for (int d = 2; d <= D; ++d)
      for (int k = d; k >= 0; --k)
        if (static_cast<int>(rng() % 8) < keep) {
          GaussianScalar c = random_scalar(rng, 2);
          if (!c.is_zero()) T.table(t)[{k, d - k}] = c;
        }
  return T;
}

}  // namespace segre::test
