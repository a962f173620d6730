#include <doctest.h>

#include "mfcalc/equiv.hpp"
#include "oracles.hpp"

using namespace mfc;
using namespace mfctest;

namespace {

// Z/2 acting by x -> -x on (x, x) over W = x^2; works over any odd prime.
EquivariantMF z2_example(std::int64_t p = 13) {
  EquivariantMF e;
  auto r = ring_f(p, {"x"}, {1});
  e.base = koszul_factorization({P(r, "x")}, {P(r, "x")});
  e.group.orders = {2};
  e.group.action = {{1}};
  e.group.chi = {0};
  e.w0 = {{0}};
  e.w1 = {{1}};
  return e;
}

// Z/3 acting by x -> zeta x on (x, x^2) over W = x^3, over F_7 (7 = 1 mod 3).
EquivariantMF z3_example() {
  EquivariantMF e;
  auto r = ring_f(7, {"x"}, {1});
  e.base = koszul_factorization({P(r, "x")}, {P(r, "x^2")});
  e.group.orders = {3};
  e.group.action = {{1}};
  e.group.chi = {0};
  e.w0 = {{0}};
  e.w1 = {{1}};
  return e;
}

}  // namespace

TEST_CASE("equivariant verification") {
  SUBCASE("Z/2 on (x, x) with weights (0),(1)") {
    CHECK(verify_equivariant(z2_example()).ok);
  }
  SUBCASE("weights (0),(0) are rejected") {
    EquivariantMF e = z2_example();
    e.w1 = {{0}};
    VerifyReport rep = verify_equivariant(e);
    CHECK_FALSE(rep.ok);
  }
  SUBCASE("Z/3 on (x, x^2) with weights (0),(1)") {
    CHECK(verify_equivariant(z3_example()).ok);
  }
  SUBCASE("group order divisible by the characteristic is rejected") {
    EquivariantMF e = z2_example(2);
    CHECK_THROWS_AS(verify_equivariant(e), Error);
  }
  SUBCASE("p must be 1 mod the exponent") {
    auto build = [](std::int64_t p) {
      EquivariantMF e;
      auto r = ring_f(p, {"x"}, {1});
      e.base = koszul_factorization({P(r, "x")}, {P(r, "x^2")});
      e.group.orders = {3};
      e.group.action = {{1}};
      e.group.chi = {0};
      e.w0 = {{0}};
      e.w1 = {{1}};
      return e;
    };
    CHECK(verify_equivariant(build(13)).ok);  // 13 = 1 mod 3
    CHECK_THROWS_AS(verify_equivariant(build(5)), Error);  // 5 = 2 mod 3
  }
}

TEST_CASE("semi-invariance of W is checked termwise") {
  auto r = ring_f(13, {"x", "y"}, {1, 1});
  GroupData g;
  g.orders = {2};
  g.action = {{1}, {0}};  // x -> -x, y fixed
  g.chi = {0};
  CHECK(g.is_semi_invariant(P(r, "x^2 + y^2"), g.chi));
  CHECK_FALSE(g.is_semi_invariant(P(r, "x + y^2"), g.chi));
  CHECK(g.is_semi_invariant(P(r, "x*y"), CharVec{1}));
}

TEST_CASE("shift and cone preserve equivariance") {
  EquivariantMF e = z3_example();
  EquivariantMF s = equivariant_shift(e);
  CHECK(verify_equivariant(s).ok);
  CHECK(verify_equivariant(equivariant_shift(s)).ok);

  EquivariantMF c = equivariant_cone(e, e, identity_morphism(e.base));
  CHECK(verify_equivariant(c).ok);
  EquivariantMF d = equivariant_direct_sum(e, e);
  CHECK(verify_equivariant(d).ok);
}

TEST_CASE("averaging operator is an idempotent commuting with d") {
  for (const EquivariantMF& e : {z2_example(), z3_example()})
    for (int deg = -1; deg <= 1; ++deg)
      for (int d2 = -4; d2 <= 4; d2 += 2) {
        AveragingCheck chk = averaging_operator_check(e, e, deg, d2);
        CHECK(chk.idempotent);
        CHECK(chk.commutes);
      }
}

TEST_CASE("character sum rule") {
  for (const EquivariantMF& e : {z2_example(), z3_example()}) {
    const int w2 = e.base.degW2();
    for (int parity = 0; parity <= 1; ++parity)
      for (int d = -w2; d <= w2; ++d) {
        int total = 0;
        for (const auto& psi : e.group.all_characters())
          total += equivariant_hom_dim(e, equivariant_twist(e, psi), parity, 0, d);
        CHECK(total == stable_hom_dim(e.base, e.base, parity, d));
      }
  }
}

TEST_CASE("trivial group reduces to the plain dims") {
  EquivariantMF e = z2_example();
  e.group.orders = {1};
  e.group.action = {{0}};
  e.group.chi = {0};
  e.w0 = {{0}};
  e.w1 = {{0}};
  REQUIRE(verify_equivariant(e).ok);
  for (int parity = 0; parity <= 1; ++parity)
    for (int d = -4; d <= 4; ++d)
      CHECK(equivariant_hom_dim(e, e, parity, 0, d) ==
            stable_hom_dim(e.base, e.base, parity, d));
  CHECK(quotient_correspondence_check(e, e, -4, 4).ok());
}

TEST_CASE("invariant part of the A2 stable endomorphisms") {
  EquivariantMF e = z3_example();
  int total = 0;
  for (int d = -12; d <= 12; ++d) total += equivariant_hom_dim(e, e, 0, 0, d);
  CHECK(total == 1);  // the identity survives; weights are compatible
}

TEST_CASE("quotient correspondence: averaging route equals the direct solve") {
  for (const EquivariantMF& e : {z2_example(), z3_example()}) {
    const int w2 = e.base.degW2();
    CorrespondenceReport rep = quotient_correspondence_check(e, e, -w2, w2);
    CHECK(rep.ok());
  }
  SUBCASE("contractible equivariant object has zero dims on both routes") {
    auto r = ring_f(13, {"x"}, {1});
    EquivariantMF t;
    t.base = trivial_mf(r, P(r, "x^2"));
    t.group.orders = {2};
    t.group.action = {{1}};
    t.group.chi = {0};
    t.w0 = {{0}};
    t.w1 = {{0}};
    REQUIRE(verify_equivariant(t).ok);
    for (int parity = 0; parity <= 1; ++parity)
      for (int d = -4; d <= 4; ++d) {
        CHECK(equivariant_hom_dim(t, t, parity, 0, d) == 0);
        CHECK(equivariant_hom_dim_averaging(t, t, parity, 0, d) == 0);
      }
  }
}

TEST_CASE("nontrivial semi-invariance character") {
  // Z/3 on W = x^4: wt(W) = 4 = 1 mod 3, so chi = (1)
  EquivariantMF e;
  auto r = ring_f(13, {"x"}, {1});
  e.base = koszul_factorization({P(r, "x")}, {P(r, "x^3")});
  e.group.orders = {3};
  e.group.action = {{1}};
  e.group.chi = {1};
  e.w0 = {{0}};
  e.w1 = {{1}};
  REQUIRE(verify_equivariant(e).ok);
  const int w2 = e.base.degW2();

  SUBCASE("sum rule still holds") {
    for (int parity = 0; parity <= 1; ++parity)
      for (int d = -w2; d <= w2; d += 2) {
        int total = 0;
        for (const auto& psi : e.group.all_characters())
          total += equivariant_hom_dim(e, equivariant_twist(e, psi), parity, 0, d);
        CHECK(total == stable_hom_dim(e.base, e.base, parity, d));
      }
  }
  SUBCASE("chi_power shifts like a twist by chi^{-1} and one L unit") {
    CharVec chi_inv = e.group.neg(e.group.chi);
    for (int parity = 0; parity <= 1; ++parity)
      for (int d = -w2; d <= w2; ++d)
        CHECK(equivariant_hom_dim(e, e, parity, 1, d) ==
              equivariant_hom_dim(e, equivariant_twist(e, chi_inv), parity, 0, d + w2));
  }
  SUBCASE("both routes agree with chi nontrivial") {
    CHECK(quotient_correspondence_check(e, e, -w2, w2).ok());
  }
}

TEST_CASE("Z/2 actions work over the rationals") {
  EquivariantMF e;
  auto r = ring_q({"x"}, {1});
  e.base = koszul_factorization({P(r, "x")}, {P(r, "x")});
  e.group.orders = {2};
  e.group.action = {{1}};
  e.group.chi = {0};
  e.w0 = {{0}};
  e.w1 = {{1}};
  REQUIRE(verify_equivariant(e).ok);
  for (int parity = 0; parity <= 1; ++parity)
    for (int d = -4; d <= 4; d += 2) {
      int total = 0;
      for (const auto& psi : e.group.all_characters())
        total += equivariant_hom_dim(e, equivariant_twist(e, psi), parity, 0, d);
      CHECK(total == stable_hom_dim(e.base, e.base, parity, d));
      AveragingCheck chk = averaging_operator_check(e, e, parity, d);
      CHECK(chk.idempotent);
      CHECK(chk.commutes);
    }
  CHECK(quotient_correspondence_check(e, e, -4, 4).ok());
}

TEST_CASE("equivariant pullback") {
  SUBCASE("identity data") {
    EquivariantMF e = z3_example();
    GroupHom pi;
    pi.source = e.group;
    pi.target = e.group;
    pi.images = {{1}};
    EquivariantMF p = equivariant_pullback(e, e.base.ring, {P(e.base.ring, "x")}, pi);
    CHECK(verify_equivariant(p).ok);
    CHECK(p.w0 == e.w0);
    CHECK(p.w1 == e.w1);
  }
  SUBCASE("character transport along Z/6 -> Z/3") {
    GroupHom pi;
    pi.source.orders = {6};
    pi.source.action = {{1}};
    pi.source.chi = {0};
    pi.target.orders = {3};
    pi.target.action = {{1}};
    pi.target.chi = {0};
    pi.images = {{1}};
    pi.validate();
    // zeta_3^2 pulled back through 1 mod 6 |-> 1 mod 3 is zeta_6^4
    CHECK(pi.pull_character({2}) == CharVec{4});
    CHECK(pi.pull_character({0}) == CharVec{0});
  }
  SUBCASE("restriction Z/2 into Z/4 on a factorization of x^4") {
    auto r = ring_f(13, {"x"}, {1});
    EquivariantMF e;
    e.base = koszul_factorization({P(r, "x")}, {P(r, "x^3")});
    e.group.orders = {4};
    e.group.action = {{1}};
    e.group.chi = {0};
    e.w0 = {{0}};
    e.w1 = {{1}};
    REQUIRE(verify_equivariant(e).ok);
    GroupHom pi;
    pi.source.orders = {2};
    pi.source.action = {{1}};  // x -> -x under the Z/2 generator
    pi.source.chi = {0};
    pi.target = e.group;
    pi.images = {{2}};  // generator of Z/2 maps to the order-2 element of Z/4
    EquivariantMF p = equivariant_pullback(e, r, {P(r, "x")}, pi);
    CHECK(verify_equivariant(p).ok);
  }
  SUBCASE("non-intertwining substitutions are rejected") {
    EquivariantMF e = z3_example();
    GroupHom pi;
    pi.source = e.group;
    pi.source.action = {{0}};  // claims x is fixed, so x -> x cannot intertwine
    pi.target = e.group;
    pi.images = {{1}};
    CHECK_THROWS_AS(equivariant_pullback(e, e.base.ring, {P(e.base.ring, "x")}, pi), Error);
  }
}
