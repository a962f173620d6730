#include <doctest.h>

#include "mfcalc/pushforward.hpp"
#include "mfcalc/support.hpp"
#include "oracles.hpp"

using namespace mfc;
using namespace mfctest;

namespace {

// x |-> t^2 with basis {1, t}
FiniteRingMap squaring_map(std::int64_t p = 101) {
  auto rx = ring_f(p, {"x"}, {1});
  auto rt = ring_f(p, {"t"}, {1});
  return make_finite_map(rx, rt, {P(rt, "t^2")}, {Expo{0}, Expo{1}});
}

}  // namespace

TEST_CASE("map validation") {
  auto rx = ring_f(101, {"x"}, {1});
  auto rt = ring_f(101, {"t"}, {1});
  CHECK(squaring_map().degree_scale == 2);
  // duplicate basis
  CHECK_THROWS_AS(make_finite_map(rx, rt, {P(rt, "t^2")}, {Expo{0}, Expo{0}}), Error);
  // basis that cannot express t * t = image of x
  CHECK_THROWS_AS(make_finite_map(rx, rt, {P(rt, "t^2")}, {Expo{0}}), Error);
  // inhomogeneous image
  CHECK_THROWS_AS(make_finite_map(rx, rt, {P(rt, "t^2 + t")}, {Expo{0}, Expo{1}}), Error);
  // non-free spanning set
  CHECK_THROWS_AS(
      make_finite_map(rx, rt, {P(rt, "t^2")}, {Expo{0}, Expo{1}, Expo{2}}), Error);
}

TEST_CASE("rewriting in the basis is exact") {
  FiniteRingMap map = squaring_map();
  auto rt = map.target;
  std::vector<Poly> g = rewrite_in_basis(map, P(rt, "t^3 + 2t^2 + t + 5"));
  // t^3 + 2 t^2 + t + 5 = (2x + 5) * 1 + (x + 1) * t
  CHECK(g[0] == P(map.source, "2x + 5"));
  CHECK(g[1] == P(map.source, "x + 1"));
}

TEST_CASE("identity map is a no-op") {
  auto rx = ring_f(101, {"x"}, {1});
  FiniteRingMap id = make_finite_map(rx, rx, {P(rx, "x")}, {Expo{0}});
  MatrixFactorization e = an_object(rx, 2, 1);
  MatrixFactorization p = restrict_scalars(e, e.potential, id);
  CHECK(p.delta1 == e.delta1);
  CHECK(p.delta0 == e.delta0);
  CHECK(p.deg0 == e.deg0);
}

TEST_CASE("pushforward of (t, t) along x = t^2") {
  FiniteRingMap map = squaring_map();
  auto rt = map.target;
  auto rx = map.source;
  MatrixFactorization e = koszul_factorization({P(rt, "t")}, {P(rt, "t")});
  MatrixFactorization p = restrict_scalars(e, P(rx, "x"), map);
  CHECK(verify(p).ok);
  CHECK(p.rank0() == 2);
  CHECK(p.delta1.at(0, 0).is_zero());
  CHECK(p.delta1.at(0, 1) == P(rx, "x"));
  CHECK(p.delta1.at(1, 0) == P(rx, "1"));
  CHECK(p.delta1.at(1, 1).is_zero());
  CHECK(p.delta0.at(0, 1) == P(rx, "x"));
  CHECK(p.delta0.at(1, 0) == P(rx, "1"));
  // coker has total dimension 1 on both sides
  PushforwardCokerReport rep = pushforward_coker_check(e, P(rx, "x"), map, 20);
  CHECK(rep.ok);
}

TEST_CASE("pushforward of a trivial factorization has zero coker both ways") {
  FiniteRingMap map = squaring_map();
  MatrixFactorization t = trivial_mf(map.target, P(map.target, "t^4"));
  MatrixFactorization p = restrict_scalars(t, P(map.source, "x^2"), map);
  CHECK(verify(p).ok);
  PushforwardCokerReport rep = pushforward_coker_check(t, P(map.source, "x^2"), map, 16);
  CHECK(rep.ok);
  for (const auto& row : rep.rows) CHECK(row.dim_pushforward == 0);
}

TEST_CASE("pushforward of the t-power family") {
  FiniteRingMap map = squaring_map();
  auto rt = map.target;
  auto rx = map.source;
  for (int n = 1; n <= 3; ++n) {
    Poly w = Poly::from_int(rx, 1);
    for (int i = 0; i < n; ++i) w = w * P(rx, "x");
    for (int j = 1; j < 2 * n; ++j) {
      MatrixFactorization e = an_object(rt, 2 * n, j);
      MatrixFactorization p = restrict_scalars(e, w, map);
      CHECK(verify(p).ok);
      CHECK(p.rank0() == 2);
      CHECK(pushforward_coker_check(e, w, map, 20).ok);
    }
  }
}

TEST_CASE("pushforward is additive and commutes with shift") {
  FiniteRingMap map = squaring_map();
  auto rt = map.target;
  auto rx = map.source;
  Poly w = P(rx, "x^2");
  MatrixFactorization a = an_object(rt, 4, 1);
  MatrixFactorization b = an_object(rt, 4, 3);
  MatrixFactorization ps = restrict_scalars(direct_sum(a, b), w, map);
  MatrixFactorization sp = direct_sum(restrict_scalars(a, w, map), restrict_scalars(b, w, map));
  CHECK(ps.delta1 == sp.delta1);
  CHECK(ps.delta0 == sp.delta0);
  CHECK(ps.deg0 == sp.deg0);

  MatrixFactorization push_shift = restrict_scalars(shift(a), w, map);
  MatrixFactorization shift_push = shift(restrict_scalars(a, w, map));
  CHECK(push_shift.delta1 == shift_push.delta1);
  CHECK(push_shift.delta0 == shift_push.delta0);
  CHECK(push_shift.deg0 == shift_push.deg0);
  CHECK(push_shift.twist == shift_push.twist);
}

TEST_CASE("composition of maps matches the two-step pushforward") {
  // x gets weight 2 so that both steps (and the composite) stay graded
  auto rx = ring_f(101, {"x"}, {2});
  auto rt = ring_f(101, {"t"}, {1});
  auto ru = ring_f(101, {"u"}, {1});
  FiniteRingMap first = make_finite_map(rx, rt, {P(rt, "t^2")}, {Expo{0}, Expo{1}});
  FiniteRingMap second = make_finite_map(rt, ru, {P(ru, "u^2")}, {Expo{0}, Expo{1}});
  FiniteRingMap composed = compose_maps(first, second);
  CHECK(composed.degree_scale == 2);
  CHECK(composed.images[0] == P(ru, "u^4"));

  for (int j = 1; j <= 3; ++j) {
    MatrixFactorization e = an_object(ru, 4, j);  // (u^j, u^(4-j)) over u^4
    MatrixFactorization two_step =
        restrict_scalars(restrict_scalars(e, P(rt, "t^2"), second), P(rx, "x"), first);
    MatrixFactorization one_step = restrict_scalars(e, P(rx, "x"), composed);
    CHECK(two_step.deg0 == one_step.deg0);
    CHECK(two_step.deg1 == one_step.deg1);
    CHECK(two_step.delta1 == one_step.delta1);
    CHECK(two_step.delta0 == one_step.delta0);
  }
}

TEST_CASE("twists that do not regrade integrally are rejected") {
  FiniteRingMap map = squaring_map();
  auto rt = map.target;
  auto rx = map.source;
  MatrixFactorization e = an_object(rt, 2, 1);
  MatrixFactorization odd = e;
  for (auto& d : odd.deg0) d += 1;  // break parity of the twists
  for (auto& d : odd.deg1) d += 1;
  odd.delta1 = odd.delta1.shifted_labels(1, 1);
  odd.delta0 = odd.delta0.shifted_labels(1, 1);
  CHECK_THROWS_AS(restrict_scalars(odd, P(rx, "x"), map), Error);
}

TEST_CASE("support compatibility at split unramified points") {
  // R = F13[x, y] (x of weight 2) -> R' = F13[t, y], x |-> t^2, W = x y
  auto rx = ring_f(13, {"x", "y"}, {2, 1});
  auto rt = ring_f(13, {"t", "y"}, {1, 1});
  FiniteRingMap map =
      make_finite_map(rx, rt, {P(rt, "t^2"), P(rt, "y")}, {Expo{0, 0}, Expo{1, 0}});
  Poly w = P(rx, "x*y");
  MatrixFactorization e = koszul_factorization({P(rt, "t")}, {P(rt, "t*y")});
  REQUIRE(e.potential == w.substitute(rt, map.images));
  MatrixFactorization p = restrict_scalars(e, w, map);
  REQUIRE(verify(p).ok);
  // y = (a^2, 0) has the two rational preimages (±a, 0)
  for (long long a = 1; a <= 6; ++a) {
    Point down = {rx->field.from_int(a * a % 13), rx->field.zero()};
    Point up1 = {rt->field.from_int(a), rt->field.zero()};
    Point up2 = {rt->field.from_int(13 - a), rt->field.zero()};
    auto hd = fiber_cohomology(fiber_complex(p, down));
    auto h1 = fiber_cohomology(fiber_complex(e, up1));
    auto h2 = fiber_cohomology(fiber_complex(e, up2));
    CHECK(hd.h0 == h1.h0 + h2.h0);
    CHECK(hd.h1 == h1.h1 + h2.h1);
  }
}
