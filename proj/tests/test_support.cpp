#include <doctest.h>

#include "mfcalc/session.hpp"
#include "mfcalc/sing.hpp"
#include "mfcalc/support.hpp"
#include "oracles.hpp"

using namespace mfc;
using namespace mfctest;

namespace {

Point pt(const RingPtr& r, std::vector<long long> coords) {
  Point p;
  for (auto c : coords) p.push_back(r->field.from_int(c));
  return p;
}

}  // namespace

TEST_CASE("fiber complexes") {
  auto r = ring_f(13, {"x", "y"}, {1, 1});
  MatrixFactorization k = koszul_factorization({P(r, "x"), P(r, "y")}, {P(r, "x"), P(r, "y")});

  SUBCASE("trivial factorization has an invertible fiber differential") {
    MatrixFactorization t = trivial_mf(r, P(r, "x^2 + y^2"));
    FiberComplex fc = fiber_complex(t, pt(r, {1, 5}));
    CHECK(rank(fc.d1) == 1);
    auto h = fiber_cohomology(fc);
    CHECK(h.h0 == 0);
    CHECK(h.h1 == 0);
  }
  SUBCASE("(x, x) at the origin") {
    auto r1 = ring_f(13, {"x"}, {1});
    MatrixFactorization e = an_object(r1, 2, 1);
    FiberComplex fc = fiber_complex(e, pt(r1, {0}));
    CHECK(fc.d1.is_zero());
    auto h = fiber_cohomology(fc);
    CHECK(h.h0 == 1);
    CHECK(h.h1 == 1);
  }
  SUBCASE("the Koszul object on and off the vertex") {
    auto smooth = fiber_cohomology(fiber_complex(k, pt(r, {1, 5})));  // 1 + 25 = 0 mod 13
    CHECK(smooth.h0 == 0);
    CHECK(smooth.h1 == 0);
    // every entry is linear, so both matrices vanish at the vertex and the
    // fiber cohomology is the full rank: (2, 2)
    auto vertex = fiber_cohomology(fiber_complex(k, pt(r, {0, 0})));
    CHECK(vertex.h0 == 2);
    CHECK(vertex.h1 == 2);
    CHECK(vertex.h0 == vertex.h1);
  }
  SUBCASE("points off the zero locus are rejected") {
    CHECK_THROWS_AS(fiber_complex(k, pt(r, {1, 1})), Error);
  }
}

TEST_CASE("Jacobian singularity test") {
  auto r = ring_f(13, {"x", "y"}, {1, 1});
  CHECK(singular_locus_test(P(r, "x^2 + y^2"), pt(r, {0, 0}), nullptr));
  CHECK_FALSE(singular_locus_test(P(r, "x^2 + y^2"), pt(r, {1, 5}), nullptr));
  auto rq = ring_f(13, {"x", "y"}, {2, 3});
  CHECK(singular_locus_test(P(rq, "x^3 - y^2"), pt(rq, {0, 0}), nullptr));

  SUBCASE("characteristic caveats produce warnings") {
    auto r2 = ring_f(2, {"x", "y"}, {1, 1});
    std::vector<std::string> warnings;
    singular_locus_test(P(r2, "x^2 + x*y + y^2"), pt(r2, {0, 0}), &warnings);
    CHECK_FALSE(warnings.empty());
  }
}

TEST_CASE("support of the Koszul object over F13 is the vertex") {
  auto r = ring_f(13, {"x", "y"}, {1, 1});
  MatrixFactorization k = koszul_factorization({P(r, "x"), P(r, "y")}, {P(r, "x"), P(r, "y")});
  std::vector<Point> pts = enumerate_zero_locus(k.potential);
  CHECK(pts.size() == 25);  // the two lines through the origin
  SupportReport rep = support_sample(k, pts);
  REQUIRE(rep.support.size() == 1);
  const auto& e = rep.entries[static_cast<size_t>(rep.support[0])];
  CHECK(r->field.is_zero(e.pt[0]));
  CHECK(r->field.is_zero(e.pt[1]));
  CHECK(e.singular);
  CHECK_FALSE(rep.hard_failure);
  for (const auto& entry : rep.entries) CHECK(entry.h0 == entry.h1);
}

TEST_CASE("trivial factorizations have empty support") {
  auto r = ring_f(13, {"x", "y"}, {1, 1});
  MatrixFactorization t = trivial_mf(r, P(r, "x^2 + y^2"));
  SupportReport rep = support_sample(t, enumerate_zero_locus(t.potential));
  CHECK(rep.support.empty());
}

TEST_CASE("support of a direct sum is the union") {
  auto r = ring_f(13, {"x", "y"}, {1, 1});
  MatrixFactorization k = koszul_factorization({P(r, "x"), P(r, "y")}, {P(r, "x"), P(r, "y")});
  MatrixFactorization t = trivial_mf(r, P(r, "x^2 + y^2"));
  MatrixFactorization s = direct_sum(k, t);
  auto pts = enumerate_zero_locus(k.potential);
  SupportReport a = support_sample(k, pts);
  SupportReport b = support_sample(s, pts);
  REQUIRE(a.entries.size() == b.entries.size());
  for (size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].h0 == b.entries[i].h0);  // block diagonal: dims add, t adds zero
    CHECK(a.entries[i].h1 == b.entries[i].h1);
  }
  CHECK(a.support == b.support);
}

TEST_CASE("fiber cohomology is a homotopy invariant") {
  auto r = ring_f(13, {"x"}, {1});
  MatrixFactorization e = an_object(r, 4, 2);
  MatrixFactorization padded = direct_sum(e, trivial_mf(r, P(r, "x^4")));
  RoundtripReport rt = cokernel_roundtrip_check(e);
  REQUIRE(rt.ok);
  for (const Point& p : enumerate_zero_locus(e.potential)) {
    auto h = fiber_cohomology(fiber_complex(e, p));
    auto hp = fiber_cohomology(fiber_complex(padded, p));
    auto hs = fiber_cohomology(fiber_complex(rt.stabilized, p));
    CHECK(h.h0 == hp.h0);
    CHECK(h.h1 == hp.h1);
    CHECK(h.h0 == hs.h0);
    CHECK(h.h1 == hs.h1);
  }
}

TEST_CASE("cone fiber cohomology is subadditive") {
  auto r = ring_f(13, {"x"}, {1});
  MatrixFactorization e2 = an_object(r, 4, 2);
  MatrixFactorization e1 = an_object(r, 4, 1);
  MfMorphism f = zero_morphism(e2, e1, 0);
  f.f0.set(0, 0, P(r, "1"));
  f.f1.set(0, 0, P(r, "x"));
  REQUIRE(is_closed(f));
  MatrixFactorization c = cone(f);
  for (const Point& p : enumerate_zero_locus(e1.potential)) {
    auto hc = fiber_cohomology(fiber_complex(c, p));
    auto he = fiber_cohomology(fiber_complex(e2, p));
    auto hf = fiber_cohomology(fiber_complex(e1, p));
    CHECK(hc.h0 <= he.h0 + hf.h0);
    CHECK(hc.h1 <= he.h1 + hf.h1);
  }
}

TEST_CASE("corpus objects: h0 = h1 and support points are singular") {
  CorpusSpec spec;
  spec.seed = 31;
  spec.count = 10;
  spec.p = 13;  // small field so points are easy to find
  SplitMix64 rng(99);
  for (const auto& mf : generate_corpus(spec)) {
    std::vector<Point> pts;
    for (int tries = 0; tries < 200 && pts.size() < 10; ++tries) {
      Point p;
      for (int v = 0; v < mf.ring->nvars(); ++v)
        p.push_back(Scalar::residue(static_cast<std::int64_t>(rng.below(13))));
      if (mf.ring->field.is_zero(mf.potential.evaluate(p))) pts.push_back(p);
    }
    SupportReport rep = support_sample(mf, pts);
    CHECK_FALSE(rep.hard_failure);
    for (const auto& e : rep.entries) CHECK(e.h0 == e.h1);
  }
}
