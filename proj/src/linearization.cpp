#include "segre/linearization.hpp"

#include <set>

#include "segre/parallel.hpp"

namespace segre {

namespace {
const GaussianScalar kHalf{Rational(1, 2)};
GaussianScalar inv_2i() { return GaussianScalar(Rational(0), Rational(-1, 2)); }
}  // namespace

MapImages map_images(const Poly& Q, const SegreMap& T) {
  const int D = T.D;
  MapImages im{Poly::variable(Var::z, D), Q.truncated(D), Poly::variable(Var::xi, D), Poly::variable(Var::nu, D)};
  const Poly Q0 = Q.truncated(D);
  std::vector<Poly> wpow{Poly::constant(GaussianScalar(1), D)};
  auto W = [&](int l) -> const Poly& {
    while (static_cast<int>(wpow.size()) <= l) wpow.push_back(mul(wpow.back(), Q0, D));
    return wpow[l];
  };
  for (const auto& [kl, c] : T.f) im.z += c * shift(W(kl.second), {kl.first, 0, 0}, D);
  for (const auto& [kl, c] : T.g) im.w += c * shift(W(kl.second), {kl.first, 0, 0}, D);
  for (const auto& [kl, c] : T.ft) im.xi.add_term({0, kl.first, kl.second}, c);
  for (const auto& [kl, c] : T.gt) im.nu.add_term({0, kl.first, kl.second}, c);
  return im;
}

ResidualEvaluator::ResidualEvaluator(int m0, const Poly& L, const TailMap& phi, MapImages images, int D)
    : m0_(m0), L_(L), phi_(phi), im_(std::move(images)), D_(D) {
  u_ = kHalf * (im_.w + im_.nu);
}

const Poly& ResidualEvaluator::zpow(int e) {
  if (zpow_.empty()) zpow_.push_back(Poly::constant(GaussianScalar(1), D_));
  while (static_cast<int>(zpow_.size()) <= e) zpow_.push_back(mul(zpow_.back(), im_.z, D_));
  return zpow_[e];
}

const Poly& ResidualEvaluator::xpow(int e) {
  if (xpow_.empty()) xpow_.push_back(Poly::constant(GaussianScalar(1), D_));
  while (static_cast<int>(xpow_.size()) <= e) xpow_.push_back(mul(xpow_.back(), im_.xi, D_));
  return xpow_[e];
}

const Poly& ResidualEvaluator::upow(int e) {
  if (upow_.empty()) upow_.push_back(Poly::constant(GaussianScalar(1), D_));
  while (static_cast<int>(upow_.size()) <= e) upow_.push_back(mul(upow_.back(), u_, D_));
  return upow_[e];
}

const Poly& ResidualEvaluator::zx(int m, int n) {
  auto it = zx_.find({m, n});
  if (it != zx_.end()) return it->second;
  return zx_.emplace(std::make_pair(m, n), mul(zpow(m), xpow(n), D_)).first->second;
}

const Poly& ResidualEvaluator::residual() {
  if (E_) return *E_;
  Poly E = inv_2i() * (im_.w - im_.nu);
  Poly Lp(D_);
  for (const auto& [mono, c] : L_) Lp += c * zx(mono.m, mono.n);
  E -= mul(upow(m0_), Lp, D_);
  for (const auto& [mono, c] : phi_) E -= c * mul(zx(mono.m, mono.n), upow(mono.p), D_);
  E_ = std::move(E);
  return *E_;
}

Poly ResidualEvaluator::d_u() {
  Poly du(D_);
  if (m0_ > 0) {
    Poly Lp(D_);
    for (const auto& [mono, c] : L_) Lp += c * zx(mono.m, mono.n);
    du -= GaussianScalar(m0_) * mul(upow(m0_ - 1), Lp, D_);
  }
  for (const auto& [mono, c] : phi_)
    if (mono.p > 0) du -= (c * GaussianScalar(mono.p)) * mul(zx(mono.m, mono.n), upow(mono.p - 1), D_);
  return du;
}

Poly ResidualEvaluator::d_w() {
  Poly r = kHalf * d_u();
  r.add_term({0, 0, 0}, inv_2i());
  return r;
}

Poly ResidualEvaluator::d_nu() {
  Poly r = kHalf * d_u();
  r.add_term({0, 0, 0}, -inv_2i());
  return r;
}

Poly ResidualEvaluator::d_z() {
  Poly Lz(D_);
  for (const auto& [mono, c] : L_)
    if (mono.m > 0) Lz += (c * GaussianScalar(mono.m)) * zx(mono.m - 1, mono.n);
  Poly r = -mul(upow(m0_), Lz, D_);
  for (const auto& [mono, c] : phi_)
    if (mono.m > 0) r -= (c * GaussianScalar(mono.m)) * mul(zx(mono.m - 1, mono.n), upow(mono.p), D_);
  return r;
}

Poly ResidualEvaluator::d_xi() {
  Poly Lx(D_);
  for (const auto& [mono, c] : L_)
    if (mono.n > 0) Lx += (c * GaussianScalar(mono.n)) * zx(mono.m, mono.n - 1);
  Poly r = -mul(upow(m0_), Lx, D_);
  for (const auto& [mono, c] : phi_)
    if (mono.n > 0) r -= (c * GaussianScalar(mono.n)) * mul(zx(mono.m, mono.n - 1), upow(mono.p), D_);
  return r;
}

Poly ResidualEvaluator::tail_column(const Monomial& mono) {
  return -mul(zx(mono.m, mono.n), upow(mono.p), D_);
}

std::vector<Poly> ResidualEvaluator::tail_columns(const std::vector<Monomial>& monos, int threads) {
  int mz = 0, mx = 0, mu = 0;
  std::set<std::pair<int, int>> pairs;
  for (const auto& mono : monos) {
    mz = std::max(mz, mono.m);
    mx = std::max(mx, mono.n);
    mu = std::max(mu, mono.p);
    if (!zx_.count({mono.m, mono.n})) pairs.insert({mono.m, mono.n});
  }
  zpow(mz);
  xpow(mx);
  upow(mu);
  const std::vector<std::pair<int, int>> todo(pairs.begin(), pairs.end());
  std::vector<Poly> prod(todo.size());
  parallel_for(todo.size(), threads, [&](std::size_t i) { prod[i] = mul(zpow_[todo[i].first], xpow_[todo[i].second], D_); });
  for (std::size_t i = 0; i < todo.size(); ++i) zx_.emplace(todo[i], std::move(prod[i]));
  std::vector<Poly> out(monos.size());
  parallel_for(monos.size(), threads, [&](std::size_t i) {
    const auto& mono = monos[i];
    out[i] = -mul(zx_.at({mono.m, mono.n}), upow_[mono.p], D_);
  });
  return out;
}

}  // namespace segre
