#pragma once

#include <string>
#include <vector>

#include "mfcalc/mf.hpp"

namespace mfc {

/// A rational point, one field coordinate per ring variable.
using Point = std::vector<Scalar>;

std::string point_str(const Ring& ring, const Point& p);

/// The 2-periodic fiber complex of mf at a zero-locus point: both evaluated
/// matrices compose to zero there.
struct FiberComplex {
  ScalarMat d1, d0;  // evaluated delta1, delta0
};
FiberComplex fiber_complex(const MatrixFactorization& mf, const Point& pt);

/// (h0, h1) of the fiber complex; the two ranks always agree because E0 and
/// E1 have equal fiber dimensions.
struct FiberCohomology {
  int h0 = 0, h1 = 0;
};
FiberCohomology fiber_cohomology(const FiberComplex& fc);

/// Jacobian criterion: all partials vanish at the point. Appends a warning
/// when the characteristic divides a weight or the weighted degree of W, in
/// which case the criterion loses its usual justification.
bool singular_locus_test(const Poly& w, const Point& pt, std::vector<std::string>* warnings);

/// Fiber cohomology over a sample of zero-locus points; support = points with
/// nonzero cohomology. Every support point must be Jacobian-singular: a
/// smooth support point is reported as a hard failure.
struct SupportReport {
  struct Entry {
    Point pt;
    int h0 = 0, h1 = 0;
    bool singular = false;
  };
  std::vector<Entry> entries;
  std::vector<int> support;  // indices into entries
  bool hard_failure = false;
  std::vector<std::string> warnings;
};
SupportReport support_sample(const MatrixFactorization& mf, const std::vector<Point>& pts);

/// All rational points of {W = 0} over a prime field (small cases only).
std::vector<Point> enumerate_zero_locus(const Poly& w, long long max_points = 4000000);

}  // namespace mfc
