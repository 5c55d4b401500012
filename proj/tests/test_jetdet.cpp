#include <doctest.h>

#include "segre/jetdet.hpp"
#include "segre/normalform.hpp"
#include "support.hpp"

using namespace segre;
using namespace segre::test;

namespace {

Hypersurface model03(int D) {
  Hypersurface M;
  M.L = P({{{2, 1, 0}, gs(1)}, {{1, 2, 0}, gs(1)}});
  M.D = D;
  return M;
}

bool all_zero(const DeterminationReport& r) {
  for (int d : r.kernel_dims)
    if (d != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("model self-maps are determined by the 1-jet") {
  const auto r = selfmap_kernel(model03(6), 6);
  CHECK(all_zero(r));
  CHECK(r.verdict == "determined");
  CHECK(r.certificates.cols() == 0);
}

TEST_CASE("seeded m0=1 instance is determined") {
  const Hypersurface M = generate_random(4, 1, 4, 7, Rational(1, 2));
  const auto r = selfmap_kernel(M, 7);
  CHECK(all_zero(r));
  CHECK(r.verdict != "not-determined");
}

TEST_CASE("probe with free linear part finds the scaling direction") {
  SelfmapOptions o;
  o.probe = true;
  const auto r = selfmap_kernel(model03(6), 6, o);
  REQUIRE(r.kernel_dims.size() > 1);
  CHECK(r.kernel_dims[1] >= 1);
  CHECK(r.verdict == "not-determined");
  CHECK(r.certificates_valid);
}

TEST_CASE("kernel dims are stable under raising D") {
  const Hypersurface M = generate_random(6, 0, 3, 7, Rational(1, 2));
  const auto a = selfmap_kernel(M, 6);
  const auto b = selfmap_kernel(M, 7);
  for (std::size_t d = 0; d < a.kernel_dims.size(); ++d) CHECK(a.kernel_dims[d] == b.kernel_dims[d]);
}

TEST_CASE("two_map_agreement") {
  const Hypersurface M = generate_random(1, 0, 3, 6, Rational(1, 2));
  const auto r = normalize(M);
  const auto ok = two_map_agreement(M, r.surface, r.map, r.map);
  CHECK(ok.agree);
  CHECK(ok.selfmap_is_identity);

  const ConstraintSet cs = build_constraints(0, 3, M.L, 6);
  GlobalSolveOptions go;
  go.constraints = &cs;
  const auto a = global_solve(M, go);
  const int n = static_cast<int>(cs.layout.x.size() + cs.layout.y.size());
  for (int j = n - 1; j >= 0; --j) go.column_order.push_back(j);
  const auto b = global_solve(M, go);
  CHECK(two_map_agreement(M, a.surface, a.map, b.map).agree);

  SegreMap bad = r.map;
  bad.g[{3, 0}] += gs(1);
  bad.normalize_storage();
  CHECK_THROWS_AS(two_map_agreement(M, r.surface, r.map, bad), PreconditionViolated);
}
