#include "mfcalc/support.hpp"

#include "mfcalc/linalg.hpp"

namespace mfc {

std::string point_str(const Ring& ring, const Point& p) {
  std::string s = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += ring.field.str(p[i]);
  }
  return s + ")";
}

FiberComplex fiber_complex(const MatrixFactorization& mf, const Point& pt) {
  const Field& k = mf.ring->field;
  if (!k.is_zero(mf.potential.evaluate(pt)))
    throw Error("fiber_complex: point is not on the zero locus of W");
  FiberComplex fc{mf.delta1.evaluated(pt), mf.delta0.evaluated(pt)};
  if (!fc.d1.mul(fc.d0).is_zero() || !fc.d0.mul(fc.d1).is_zero())
    throw Error("fiber_complex: evaluated differentials do not compose to zero");
  return fc;
}

FiberCohomology fiber_cohomology(const FiberComplex& fc) {
  int r1 = rank(fc.d1);
  int r0 = rank(fc.d0);
  FiberCohomology h;
  h.h0 = (fc.d0.cols() - r0) - r1;  // ker(d0 at E0) / im(d1)
  h.h1 = (fc.d1.cols() - r1) - r0;  // ker(d1 at E1) / im(d0)
  return h;
}

bool singular_locus_test(const Poly& w, const Point& pt, std::vector<std::string>* warnings) {
  const Ring& ring = *w.ring();
  const Field& k = ring.field;
  if (!k.is_zero(w.evaluate(pt)))
    throw Error("singular_locus_test: point is not on the zero locus");
  if (warnings && k.is_prime_field()) {
    auto d = w.wdeg2();
    if (d.kind == DegreeInfo::Kind::homogeneous && k.char_divides(d.deg2 / 2))
      warnings->push_back("characteristic divides deg W; the Jacobian criterion may be "
                          "unreliable");
    for (int v = 0; v < ring.nvars(); ++v)
      if (k.char_divides(ring.weights[static_cast<size_t>(v)])) {
        warnings->push_back("characteristic divides the weight of " +
                            ring.vars[static_cast<size_t>(v)] +
                            "; the Jacobian criterion may be unreliable");
        break;
      }
  }
  for (int v = 0; v < ring.nvars(); ++v)
    if (!k.is_zero(w.derivative(v).evaluate(pt))) return false;
  return true;
}

SupportReport support_sample(const MatrixFactorization& mf, const std::vector<Point>& pts) {
  SupportReport rep;
  for (const auto& pt : pts) {
    FiberCohomology h = fiber_cohomology(fiber_complex(mf, pt));
    SupportReport::Entry e;
    e.pt = pt;
    e.h0 = h.h0;
    e.h1 = h.h1;
    e.singular = singular_locus_test(mf.potential, pt, &rep.warnings);
    if (e.h0 != 0 || e.h1 != 0) {
      rep.support.push_back(static_cast<int>(rep.entries.size()));
      if (!e.singular) rep.hard_failure = true;  // contradicts smooth-point vanishing
    }
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

std::vector<Point> enumerate_zero_locus(const Poly& w, long long max_points) {
  const Ring& ring = *w.ring();
  const Field& k = ring.field;
  if (!k.is_prime_field())
    throw Error("enumerate_zero_locus: only prime fields are enumerable");
  long long total = 1;
  for (int v = 0; v < ring.nvars(); ++v) {
    total *= k.p();
    if (total > max_points)
      throw Error("enumerate_zero_locus: too many points to enumerate");
  }
  std::vector<Point> out;
  std::vector<std::int64_t> cur(static_cast<size_t>(ring.nvars()), 0);
  for (;;) {
    Point pt;
    pt.reserve(cur.size());
    for (auto c : cur) pt.push_back(Scalar::residue(c));
    if (k.is_zero(w.evaluate(pt))) out.push_back(pt);
    int i = ring.nvars() - 1;
    while (i >= 0) {
      if (++cur[static_cast<size_t>(i)] < k.p()) break;
      cur[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

}  // namespace mfc
