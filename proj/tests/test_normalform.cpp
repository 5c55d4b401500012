#include <doctest.h>

#include "segre/normalform.hpp"
#include "support.hpp"

using namespace segre;
using namespace segre::test;

namespace {

Hypersurface model03(int D) {
  Hypersurface M;
  M.m0 = 0;
  M.k0 = 3;
  M.L = P({{{2, 1, 0}, gs(1)}, {{1, 2, 0}, gs(1)}});
  M.D = D;
  return M;
}

void check_agreement(const NormalizationResult& a, const NormalizationResult& b) {
  CHECK(a.map == b.map);
  CHECK(a.surface == b.surface);
}

}  // namespace

TEST_CASE("model is its own normal form") {
  for (int m0 : {0, 1}) {
    Hypersurface M = m0 == 0 ? model03(6) : generate_random(3, 1, 4, 7, Rational(1, 2));
    M.phi.clear();
    const auto r = normalize(M);
    CHECK(r.map.is_identity());
    CHECK(r.surface == M);
    for (const auto& st : r.diagnostics) CHECK(st.kernel_dim == 0);
    check_agreement(r, global_solve(M));
    CHECK(check_normalized(M).passed);
  }
}

TEST_CASE("pure z^4 and xi^4 terms are absorbed") {
  Hypersurface M = model03(5);
  M.phi[{4, 0, 0}] = gs(1);
  M.phi[{0, 4, 0}] = gs(1);
  const auto r = normalize(M);
  CHECK(r.surface.phi.count({4, 0, 0}) == 0);
  CHECK(r.surface.phi.count({0, 4, 0}) == 0);
  const auto g = global_solve(M);
  check_agreement(r, g);
  REQUIRE(g.map.g.count({4, 0}) == 1);
  CHECK(!g.map.g.at({4, 0}).is_zero());
  CHECK(is_equivalence(M, r.map, r.surface).holds);
}

TEST_CASE("seeded instances: uniqueness, soundness, agreement, idempotence") {
  const struct {
    int m0, k0, D;
  } branches[] = {{0, 3, 6}, {1, 4, 7}};
  for (const auto& b : branches) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const Hypersurface M = generate_random(seed, b.m0, b.k0, b.D, Rational(1, 2));
      const ConstraintSet cs = build_constraints(b.m0, b.k0, M.L, b.D);
      NormalizeOptions no;
      no.constraints = &cs;
      const auto r = normalize(M, no);
      for (const auto& st : r.diagnostics) CHECK(st.kernel_dim == 0);
      CHECK(is_equivalence(M, r.map, r.surface).holds);
      CHECK(check_normalized(r.surface, &cs).passed);
      GlobalSolveOptions go;
      go.constraints = &cs;
      check_agreement(r, global_solve(M, go));
      const auto again = normalize(r.surface, no);
      CHECK(again.map.is_identity());
      CHECK(again.surface == r.surface);
    }
  }
}

TEST_CASE("global_solve is independent of column order") {
  const Hypersurface M = generate_random(5, 0, 3, 6, Rational(1, 2));
  const ConstraintSet cs = build_constraints(0, 3, M.L, 6);
  GlobalSolveOptions go;
  go.constraints = &cs;
  const auto a = global_solve(M, go);
  const int n = static_cast<int>(cs.layout.x.size() + cs.layout.y.size());
  for (int j = n - 1; j >= 0; --j) go.column_order.push_back(j);
  const auto b = global_solve(M, go);
  check_agreement(a, b);
}

TEST_CASE("dropping a vanishing row leaves a kernel") {
  const Hypersurface M = generate_random(2, 0, 3, 6, Rational(1, 2));
  const ConstraintSet cs = build_constraints(0, 3, M.L, 6);
  int drop = -1;
  for (std::size_t i = 0; i < cs.tail_rows.size(); ++i)
    if (cs.tail_rows[i].label == "vanishing") {
      drop = static_cast<int>(i);
      break;
    }
  REQUIRE(drop >= 0);
  GlobalSolveOptions go;
  go.constraints = &cs;
  go.drop_constraint_row = drop;
  try {
    global_solve(M, go);
    FAIL("expected NonUniqueStage");
  } catch (const NonUniqueStage& e) {
    CHECK(e.kernel().cols() >= 1);
    CHECK(e.unknowns().size() == static_cast<std::size_t>(e.kernel().rows()));
  }
}

TEST_CASE("check_normalized flags a pure z^N term") {
  const Hypersurface M = generate_random(1, 0, 3, 6, Rational(1, 2));
  const auto r = normalize(M);
  Hypersurface bad = r.surface;
  bad.phi[{5, 0, 0}] = gs(1);
  bad.real = false;
  const auto chk = check_normalized(bad);
  CHECK_FALSE(chk.passed);
  bool named = false;
  for (const auto& v : chk.violations) named = named || (v.label == "vanishing" && v.detail.find("phi[5,0,0]") != std::string::npos);
  CHECK(named);
}

TEST_CASE("hermitian symmetry") {
  TailMap phi;
  phi[{3, 1, 0}] = gs(1, 2);
  CHECK_FALSE(is_hermitian(phi));
  phi[{1, 3, 0}] = gs(1, -2);
  CHECK(is_hermitian(phi));
}
