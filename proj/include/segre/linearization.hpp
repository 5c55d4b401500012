#pragma once

#include <map>
#include <optional>
#include <vector>

#include "segre/hypersurface.hpp"
#include "segre/segremap.hpp"

namespace segre {

/// z′, w′ as series in (z, ξ, ν) through w = Q, and ξ′, ν′.
struct MapImages {
  Poly z, w, xi, nu;
};

MapImages map_images(const Poly& Q, const SegreMap& T);

/// Residual E of the transforming equation and its partial derivatives with respect to the
/// images, with lazily cached powers of z′, ξ′ and u′ = (w′+ν′)/2.
class ResidualEvaluator {
 public:
  ResidualEvaluator(int m0, const Poly& L, const TailMap& phi, MapImages images, int D);

  [[nodiscard]] const Poly& residual();
  /// ∂E/∂w′, ∂E/∂ν′, ∂E/∂z′, ∂E/∂ξ′.
  [[nodiscard]] Poly d_w();
  [[nodiscard]] Poly d_nu();
  [[nodiscard]] Poly d_z();
  [[nodiscard]] Poly d_xi();
  /// ∂E/∂φ′_mnp = −z′^m ξ′^n u′^p.
  [[nodiscard]] Poly tail_column(const Monomial& mono);
  /// tail_column for each monomial; products are spread over `threads` workers.
  [[nodiscard]] std::vector<Poly> tail_columns(const std::vector<Monomial>& monos, int threads);

 private:
  const Poly& zpow(int e);
  const Poly& xpow(int e);
  const Poly& upow(int e);
  const Poly& zx(int m, int n);
  Poly d_u();

  int m0_;
  Poly L_;
  TailMap phi_;
  MapImages im_;
  int D_;
  Poly u_;
  std::vector<Poly> zpow_, xpow_, upow_;
  std::map<std::pair<int, int>, Poly> zx_;
  std::optional<Poly> E_;
};

}  // namespace segre
