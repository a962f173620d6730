#include <doctest.h>

#include "oracles.hpp"

using namespace mfc;
using namespace mfctest;

TEST_CASE("basic arithmetic") {
  auto r = ring_f(101, {"x", "y"}, {1, 1});
  CHECK(P(r, "(x+y)*(x-y)") == P(r, "x^2 - y^2"));
  Poly a = P(r, "3*x*y + 2");
  CHECK(a + Poly::zero(r) == a);
  auto f5 = ring_f(5, {"x"}, {1});
  CHECK(P(f5, "2x") * P(f5, "3x") == P(f5, "x^2"));  // 6 = 1 mod 5
}

TEST_CASE("weighted degrees, doubled") {
  auto r = ring_f(101, {"x", "y"}, {1, 2});
  auto d = P(r, "x^2*y").wdeg2();
  CHECK(d.kind == DegreeInfo::Kind::homogeneous);
  CHECK(d.deg2 == 8);  // 2*(2*1 + 1*2)
  CHECK(Poly::zero(r).wdeg2().kind == DegreeInfo::Kind::zero);
  CHECK(Poly::zero(r).wdeg2().str() == "-inf");
  auto r11 = ring_f(101, {"x", "y"}, {1, 1});
  CHECK(P(r11, "x + y^2").wdeg2().kind == DegreeInfo::Kind::inhomogeneous);
  CHECK(Poly::zero(r).is_homogeneous_of(4));  // zero is vacuously homogeneous
}

TEST_CASE("monomial order is weighted grevlex") {
  auto r = ring_f(101, {"x", "y"}, {1, 1});
  CHECK(P(r, "x^2 + y^2").leading().m == P(r, "x^2").leading().m);
  CHECK(P(r, "x*y + x^2").leading().m == P(r, "x^2").leading().m);
  auto rw = ring_f(101, {"x", "y"}, {1, 3});
  CHECK(P(rw, "y + x^2").leading().m == P(rw, "y").leading().m);  // weight beats lex
}

TEST_CASE("normal form modulo W") {
  auto r1 = ring_f(101, {"x"}, {1});
  Poly w1 = P(r1, "x^2");
  CHECK(normal_form_mod(w1, w1).is_zero());
  CHECK(normal_form_mod(P(r1, "x^3 + x"), w1) == P(r1, "x"));

  auto r = ring_f(101, {"x", "y"}, {1, 1});
  Poly w = P(r, "x^2 + y^2");
  CHECK(normal_form_mod(P(r, "x^2*y"), w) == P(r, "-y^3"));
}

TEST_CASE("division invariant and idempotence") {
  auto r = ring_f(101, {"x", "y", "z"}, {1, 1, 2});
  SplitMix64 rng(11);
  Poly w = P(r, "x^4 + y^4 + z^2");
  for (int i = 0; i < 40; ++i) {
    Poly a = random_poly(rng, r, 12, 6);
    auto [q, rem] = divide_by(a, w);
    CHECK(q * w + rem == a);
    const Expo& lm = w.leading().m;
    for (const auto& t : rem.terms()) CHECK_FALSE(expo_divides(lm, t.m));
    CHECK(normal_form_mod(rem, w) == rem);  // idempotent
    Poly b = random_poly(rng, r, 12, 6);
    CHECK(normal_form_mod(a + b, w) == normal_form_mod(a, w) + normal_form_mod(b, w));
  }
}

TEST_CASE("graded piece bases") {
  auto r = ring_f(101, {"x", "y"}, {1, 1});
  GradedBasis b = module_piece_basis(*r, {0}, 2);
  REQUIRE(b.size() == 2);
  CHECK(b.elems[0].gen == 0);
  CHECK(expo_str(*r, b.elems[0].m) == "x");
  CHECK(expo_str(*r, b.elems[1].m) == "y");
  CHECK(module_piece_basis(*r, {0}, -2).size() == 0);

  auto r1 = ring_f(101, {"x"}, {1});
  GradedBasis b2 = module_piece_basis(*r1, {0, -2}, 2);
  REQUIRE(b2.size() == 2);
  CHECK(b2.elems[0].gen == 0);
  CHECK(expo_str(*r1, b2.elems[0].m) == "x");
  CHECK(b2.elems[1].gen == 1);
  CHECK(expo_str(*r1, b2.elems[1].m) == "1");
}

TEST_CASE("piece sizes match the generating function") {
  // sum_d |basis| t^d == sum_gens t^{-twist} / prod_i (1 - t^{2 w_i})
  auto check_ring = [](const RingPtr& r, const std::vector<int>& twists) {
    const int cap = 20;
    std::vector<long long> series(cap + 1, 0);
    for (int g : twists) {
      // expand t^{-g} * prod 1/(1 - t^{2w}) by repeated geometric series
      std::vector<long long> cur(cap + 1, 0);
      if (-g >= 0 && -g <= cap) cur[static_cast<size_t>(-g)] = 1;
      for (int v = 0; v < r->nvars(); ++v) {
        int step = r->wdeg2(v);
        for (int d = step; d <= cap; ++d) cur[static_cast<size_t>(d)] += cur[static_cast<size_t>(d - step)];
      }
      for (int d = 0; d <= cap; ++d) series[static_cast<size_t>(d)] += cur[static_cast<size_t>(d)];
    }
    for (int d = 0; d <= cap; ++d)
      CHECK(static_cast<long long>(module_piece_basis(*r, twists, d).size()) ==
            series[static_cast<size_t>(d)]);
  };
  check_ring(ring_f(101, {"x", "y"}, {1, 1}), {0});
  check_ring(ring_f(101, {"x", "y", "z"}, {1, 2, 3}), {0, -2});
  check_ring(ring_f(101, {"x"}, {2}), {0, -4, -4});
}

TEST_CASE("parser errors carry positions") {
  auto r = ring_f(101, {"x"}, {1});
  CHECK_THROWS_AS(parse_poly(r, "x^^2"), PolySyntaxError);
  try {
    parse_poly(r, "x^^2");
  } catch (const PolySyntaxError& e) {
    CHECK(e.pos == 3);
  }
  CHECK_THROWS_AS(parse_poly(r, "x + q"), PolySyntaxError);
  CHECK_THROWS_AS(parse_poly(r, "x +"), PolySyntaxError);
}

TEST_CASE("parser accepts implicit products and reprints canonically") {
  auto r = ring_f(101, {"x", "y"}, {1, 1});
  CHECK(P(r, "2x y^2") == P(r, "2*x*y^2"));
  CHECK(P(r, "(x+y)^2") == P(r, "x^2 + 2x y + y^2"));
  SplitMix64 rng(5);
  for (int i = 0; i < 25; ++i) {
    Poly a = random_poly(rng, r, 10, 5);
    CHECK(P(r, a.str()) == a);  // print/parse round trip
  }
}

TEST_CASE("substitution and evaluation") {
  auto r = ring_f(13, {"x", "y"}, {1, 1});
  auto rt = ring_f(13, {"t"}, {1});
  Poly w = P(r, "x^2 + y^2");
  Poly sub = w.substitute(rt, {P(rt, "t"), P(rt, "5t")});
  CHECK(sub.is_zero());  // 1 + 25 = 26 = 0 mod 13
  CHECK(r->field.is_zero(w.evaluate({r->field.from_int(1), r->field.from_int(5)})));
  CHECK(P(r, "x^3").derivative(0) == P(r, "3x^2"));
  CHECK(P(r, "x^3").derivative(1).is_zero());
}

TEST_CASE("rationals work end to end") {
  auto r = ring_q({"x", "y"}, {1, 1});
  Poly w = P(r, "x^2 - y^2");
  CHECK(normal_form_mod(P(r, "x^2"), w) == P(r, "y^2"));
  auto [q, rem] = divide_by(P(r, "x^4"), w);
  CHECK(q * w + rem == P(r, "x^4"));
}
