#include "segre/poly.hpp"

#include <sstream>
#include <vector>

namespace segre {

namespace {
const GaussianScalar kZero{};
}

std::optional<int> min_trunc(std::optional<int> a, std::optional<int> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

Poly Poly::constant(const GaussianScalar& c, std::optional<int> trunc) {
  return term({0, 0, 0}, c, trunc);
}

Poly Poly::variable(Var v, std::optional<int> trunc) {
  Monomial mono;
  if (v == Var::z) mono.m = 1;
  if (v == Var::xi) mono.n = 1;
  if (v == Var::nu) mono.p = 1;
  return term(mono, GaussianScalar(1), trunc);
}

Poly Poly::term(Monomial mono, const GaussianScalar& c, std::optional<int> trunc) {
  Poly r(trunc);
  r.add_term(mono, c);
  return r;
}

GaussianScalar Poly::coeff(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? kZero : it->second;
}

std::optional<int> Poly::min_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first.degree();
}

std::optional<int> Poly::max_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first.degree();
}

void Poly::add_term(const Monomial& mono, const GaussianScalar& c) {
  if (c.is_zero()) return;
  if (trunc_ && mono.degree() > *trunc_) return;
  auto [it, inserted] = terms_.try_emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::add_product(const Monomial& mono, const GaussianScalar& a, const GaussianScalar& b) {
  if (trunc_ && mono.degree() > *trunc_) return;
  auto [it, inserted] = terms_.try_emplace(mono);
  it->second.add_product(a, b);
  if (it->second.is_zero()) terms_.erase(it);
}

void Poly::set_term(const Monomial& mono, const GaussianScalar& c) {
  if (c.is_zero() || (trunc_ && mono.degree() > *trunc_)) {
    terms_.erase(mono);
    return;
  }
  terms_[mono] = c;
}

void Poly::clip() {
  if (!trunc_) return;
  while (!terms_.empty() && terms_.rbegin()->first.degree() > *trunc_) terms_.erase(std::prev(terms_.end()));
}

Poly Poly::truncated(int d) const {
  Poly r = *this;
  r.trunc_ = min_trunc(trunc_, d);
  r.clip();
  return r;
}

Poly Poly::untruncated() const {
  Poly r = *this;
  r.trunc_.reset();
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  trunc_ = min_trunc(trunc_, o.trunc_);
  clip();
  for (const auto& [mono, c] : o.terms_) add_term(mono, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  trunc_ = min_trunc(trunc_, o.trunc_);
  clip();
  for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
  return *this;
}

Poly& Poly::operator*=(const GaussianScalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, v] : terms_) v *= c;
  return *this;
}

HomogeneousPoly::HomogeneousPoly(Poly p, int degree) : poly_(std::move(p)), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  for (const auto& [mono, c] : poly_)
    if (mono.degree() != degree) throw std::invalid_argument("polynomial is not homogeneous of degree " + std::to_string(degree));
}

HomogeneousPoly::HomogeneousPoly(Poly p) {
  if (p.is_zero()) throw std::invalid_argument("zero polynomial has no degree");
  const int d = *p.min_degree();
  *this = HomogeneousPoly(std::move(p), d);
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r = a;
  r += b;
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r = a;
  r -= b;
  return r;
}

Poly operator-(const Poly& a) {
  Poly r = a;
  r *= GaussianScalar(-1);
  return r;
}

Poly operator*(const GaussianScalar& c, const Poly& a) {
  Poly r = a;
  r *= c;
  return r;
}

Poly add(const Poly& a, const Poly& b) { return a + b; }

Poly mul(const Poly& a, const Poly& b, int D) {
  Poly r(min_trunc(D, min_trunc(a.trunc(), b.trunc())));
  const int bound = *r.trunc();
  for (const auto& [ma, ca] : a) {
    const int room = bound - ma.degree();
    if (room < 0) break;
    for (const auto& [mb, cb] : b) {
      if (mb.degree() > room) break;
      r.add_product(ma * mb, ca, cb);
    }
  }
  return r;
}

Poly pow(const Poly& a, int e, int D) {
  if (e < 0) throw std::invalid_argument("negative exponent");
  Poly r = Poly::constant(GaussianScalar(1), min_trunc(D, a.trunc()));
  Poly base = a.truncated(D);
  while (e > 0) {
    if (e & 1) r = mul(r, base, D);
    e >>= 1;
    if (e > 0) base = mul(base, base, D);
  }
  return r;
}

Poly shift(const Poly& a, const Monomial& mono, int D) {
  Poly r(min_trunc(D, a.trunc()));
  const int bound = *r.trunc() - mono.degree();
  for (const auto& [m, c] : a) {
    if (m.degree() > bound) break;
    r.add_term(m * mono, c);
  }
  return r;
}

Poly substitute(const Poly& target, const Substitution& images, int D) {
  std::array<Poly, 3> img;
  for (int v = 0; v < 3; ++v) {
    img[v] = images[v] ? images[v]->truncated(D) : Poly::variable(static_cast<Var>(v), D);
    if (target.trunc() && !img[v].is_zero() && img[v].min_degree() == 0)
      throw NonNilpotentSubstitution("image with nonzero constant term substituted into a truncated series");
  }
  std::array<std::vector<Poly>, 3> powers;
  auto power = [&](int v, int e) -> const Poly& {
    auto& tab = powers[v];
    if (tab.empty()) tab.push_back(Poly::constant(GaussianScalar(1), D));
    while (static_cast<int>(tab.size()) <= e) tab.push_back(mul(tab.back(), img[v], D));
    return tab[e];
  };
  Poly r(min_trunc(D, target.trunc()));
  for (const auto& [mono, c] : target) {
    if (mono.degree() > D && target.trunc()) break;
    Poly t = mul(mul(power(0, mono.m), power(1, mono.n), D), power(2, mono.p), D);
    t *= c;
    r += t;
  }
  return r;
}

HomogeneousPoly homogeneous_component(const Poly& a, int d) {
  Poly r;
  for (const auto& [mono, c] : a)
    if (mono.degree() == d) r.add_term(mono, c);
  return HomogeneousPoly(std::move(r), d);
}

std::vector<Monomial> monomial_basis(int d) {
  std::vector<Monomial> out;
  for (int m = d; m >= 0; --m)
    for (int n = d - m; n >= 0; --n) out.push_back({m, n, d - m - n});
  return out;
}

Rational factorial_weight(const Monomial& mono) {
  Rational r = 1;
  for (int e : {mono.m, mono.n, mono.p})
    for (int j = 2; j <= e; ++j) r *= j;
  return r;
}

Poly partial_derivative(const Poly& a, Var v, int order) {
  if (order < 0) throw std::invalid_argument("negative derivative order");
  Poly r(a.trunc() ? std::optional<int>(std::max(0, *a.trunc() - order)) : std::nullopt);
  for (const auto& [mono, c] : a) {
    const int e = mono.exponent(v);
    if (e < order) continue;
    Rational factor = 1;
    for (int j = 0; j < order; ++j) factor *= e - j;
    Monomial out = mono;
    if (v == Var::z) out.m -= order;
    if (v == Var::xi) out.n -= order;
    if (v == Var::nu) out.p -= order;
    r.add_term(out, c * GaussianScalar(factor));
  }
  return r;
}

Poly reality_mirror(const Poly& a) {
  Poly r(a.trunc());
  for (const auto& [mono, c] : a) r.add_term({mono.n, mono.m, mono.p}, conj(c));
  return r;
}

Poly conj(const Poly& a) {
  Poly r(a.trunc());
  for (const auto& [mono, c] : a) r.add_term(mono, conj(c));
  return r;
}

std::string to_string(const Poly& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : a) {
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(c) << ")";
    if (mono.m) os << "*z^" << mono.m;
    if (mono.n) os << "*xi^" << mono.n;
    if (mono.p) os << "*nu^" << mono.p;
  }
  return os.str();
}

}  // namespace segre
