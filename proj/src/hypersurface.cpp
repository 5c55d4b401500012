#include "segre/hypersurface.hpp"

#include <random>

namespace segre {

namespace {

std::string mono_name(const Monomial& m) {
  return "(" + std::to_string(m.m) + "," + std::to_string(m.n) + "," + std::to_string(m.p) + ")";
}

std::string join_codes(const std::vector<ValidationIssue>& issues) {
  std::string s;
  for (const auto& i : issues) s += (s.empty() ? "" : ", ") + i.code;
  return s;
}

const GaussianScalar kHalf{Rational(1, 2)};

// 1/(2i) = −i/2
GaussianScalar inv_2i() { return GaussianScalar(Rational(0), Rational(-1, 2)); }

}  // namespace

InvalidSurface::InvalidSurface(std::vector<ValidationIssue> issues)
    : std::invalid_argument("invalid hypersurface: " + join_codes(issues)), issues_(std::move(issues)) {}

std::vector<ValidationIssue> validate(const Hypersurface& M) {
  std::vector<ValidationIssue> out;
  const int d = M.k0 - M.m0;
  if (M.m0 < 0 || M.k0 < 1 || d < 3)
    out.push_back({"E_DEGREE", "need m0 >= 0 and k0 - m0 >= 3, got m0=" + std::to_string(M.m0) + " k0=" + std::to_string(M.k0)});
  if (M.D < M.k0) out.push_back({"E_DEGREE", "truncation degree D=" + std::to_string(M.D) + " is below k0"});
  if (M.L.is_zero()) out.push_back({"E_L_ZERO", "L is zero"});
  for (const auto& [mono, c] : M.L) {
    if (mono.p != 0) {
      out.push_back({"E_L_NU", "L involves nu at " + mono_name(mono)});
      break;
    }
  }
  for (const auto& [mono, c] : M.L) {
    if (mono.degree() != d) {
      out.push_back({"E_L_DEGREE", "L has a monomial " + mono_name(mono) + " of degree other than k0 - m0"});
      break;
    }
  }
  for (const auto& [mono, c] : M.L) {
    if (M.L.coeff({mono.n, mono.m, mono.p}) != conj(c)) {
      out.push_back({"E_REALITY_L", "coefficient of " + mono_name(mono) + " is not the conjugate of its mirror"});
      break;
    }
  }
  for (const auto& [mono, c] : M.phi) {
    if (mono.degree() < M.k0 + 1 || mono.degree() > M.D) {
      out.push_back({"E_PHI_RANGE", "tail monomial " + mono_name(mono) + " outside degrees k0+1..D"});
      break;
    }
  }
  if (M.m0 != 0) {
    for (const auto& [mono, c] : M.phi) {
      if (mono.p == 0 && !c.is_zero()) {
        out.push_back({"E_PHI_P0", "m0 != 0 requires phi_mn0 = 0, violated at " + mono_name(mono)});
        break;
      }
    }
  }
  if (M.real) {
    for (const auto& [mono, c] : M.phi) {
      auto it = M.phi.find({mono.n, mono.m, mono.p});
      const GaussianScalar mirror = it == M.phi.end() ? GaussianScalar() : it->second;
      if (mirror != conj(c)) {
        out.push_back({"E_REALITY_PHI", "phi at " + mono_name(mono) + " is not the conjugate of its mirror"});
        break;
      }
    }
  }
  return out;
}

void require_valid(const Hypersurface& M) {
  auto issues = validate(M);
  if (!issues.empty()) throw InvalidSurface(std::move(issues));
}

Poly Relation::evaluate(const Poly& w) const {
  Poly r(D);
  Poly wp = Poly::constant(GaussianScalar(1), D);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0) wp = mul(wp, w, D);
    r += mul(coeffs[j], wp, D);
  }
  return r;
}

Relation complexify(const Hypersurface& M) {
  require_valid(M);
  const int D = M.D;
  Relation R;
  R.D = D;
  R.coeffs.assign(D + 1, Poly(D));
  // (w − ν)/2i
  R.coeffs[1].add_term({0, 0, 0}, inv_2i());
  R.coeffs[0].add_term({0, 0, 1}, -inv_2i());
  // − c·z^m ξ^n ((w+ν)/2)^p = − c/2^p Σ_j C(p,j) w^j z^m ξ^n ν^{p−j}
  auto subtract_u_power = [&](const Monomial& zx, const GaussianScalar& c, int p) {
    Rational binom = 1;
    Rational scale = 1;
    for (int j = 0; j < p; ++j) scale /= 2;
    for (int j = 0; j <= p && j <= D; ++j) {
      if (j > 0) binom = binom * (p - j + 1) / j;
      R.coeffs[j].add_term({zx.m, zx.n, p - j}, -(c * GaussianScalar(binom * scale)));
    }
  };
  for (const auto& [mono, c] : M.L) subtract_u_power({mono.m, mono.n, 0}, c, M.m0);
  for (const auto& [mono, c] : M.phi) subtract_u_power({mono.m, mono.n, 0}, c, mono.p);
  // coefficient of w^j only matters up to degree D − j
  for (int j = 0; j <= D; ++j) R.coeffs[j] = R.coeffs[j].truncated(D - j);
  return R;
}

Poly solve_graph(const Hypersurface& M) {
  require_valid(M);
  const int D = M.D;
  const Poly nu = Poly::variable(Var::nu, D);
  const GaussianScalar two_i(Rational(0), Rational(2));
  Poly Q = nu;
  for (int it = 0; it < D + 2; ++it) {
    const Poly u = kHalf * (Q + nu);
    std::vector<Poly> up{Poly::constant(GaussianScalar(1), D)};
    auto upow = [&](int p) -> const Poly& {
      while (static_cast<int>(up.size()) <= p) up.push_back(mul(up.back(), u, D));
      return up[p];
    };
    Poly rhs = mul(upow(M.m0), M.L, D);
    for (const auto& [mono, c] : M.phi) rhs += c * shift(upow(mono.p), {mono.m, mono.n, 0}, D);
    Poly next = nu + two_i * rhs;
    if (next == Q) break;
    Q = std::move(next);
  }
  return Q;
}

Hypersurface generate_random(std::uint64_t seed, int m0, int k0, int D, const Rational& density) {
  if (m0 < 0 || k0 - m0 < 3) throw BadParameters("need m0 >= 0 and k0 - m0 >= 3");
  if (D < k0) throw BadParameters("need D >= k0");
  if (sgn(density) <= 0 || density > 1) throw BadParameters("density must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  auto draw = [&](std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(rng() % span);
  };
  auto rational = [&]() {
    const auto num = draw(-3, 3);
    const auto den = draw(1, 3);
    Rational q(static_cast<long>(num), static_cast<unsigned long>(den));
    q.canonicalize();
    return q;
  };
  auto coefficient = [&](bool diagonal) {
    Rational re = rational();
    if (diagonal) return GaussianScalar(re);
    Rational im = rational();
    return GaussianScalar(re, im);
  };
  Hypersurface M;
  M.m0 = m0;
  M.k0 = k0;
  M.D = D;
  const int d = k0 - m0;
  for (;;) {
    Poly L;
    bool mixed = false;
    for (int a = d; 2 * a >= d; --a) {
      const int b = d - a;
      const GaussianScalar c = coefficient(a == b);
      if (c.is_zero()) continue;
      L.add_term({a, b, 0}, c);
      if (a != b) L.add_term({b, a, 0}, conj(c));
      if (b >= 1) mixed = true;
    }
    if (mixed) {
      M.L = std::move(L);
      break;
    }
  }
  const auto num = density.get_num().get_si();
  const auto den = density.get_den().get_si();
  for (int deg = k0 + 1; deg <= D; ++deg) {
    for (const auto& mono : monomial_basis(deg)) {
      if (mono.m < mono.n) continue;
      if (m0 != 0 && mono.p == 0) continue;
      if (draw(0, den - 1) >= num) continue;
      const GaussianScalar c = coefficient(mono.m == mono.n);
      if (c.is_zero()) continue;
      M.phi[mono] = c;
      M.phi[{mono.n, mono.m, mono.p}] = conj(c);
    }
  }
  return M;
}

}  // namespace segre
