#pragma once

#include <string>
#include <vector>

#include "mfcalc/mf.hpp"
#include "mfcalc/sing.hpp"

namespace mfc {

/// A finite free ring map f : Spec R' -> Spec R, described by the images of
/// the R-variables in R' and a monomial basis of R' as a free module over the
/// image of R. Gradings must be compatible up to a single integer scale c:
/// deg'(image of x_v) = c * deg(x_v) in doubled units.
struct FiniteRingMap {
  RingPtr source;  // R
  RingPtr target;  // R'
  std::vector<Poly> images;  // in R', one per R-variable
  std::vector<Expo> basis;   // monomials of R'
  int degree_scale = 1;      // c

  int basis_size() const { return static_cast<int>(basis.size()); }
};

/// Validates the data (degree scale, distinct basis, multiplication action of
/// every R'-variable on the basis expressible over the image of R) and fills
/// in degree_scale.
FiniteRingMap make_finite_map(RingPtr source, RingPtr target, std::vector<Poly> images,
                              std::vector<Expo> basis);

/// q ∈ R' written as Σ_b g_b(images) * b; exact and unique for a free basis,
/// otherwise an error.
std::vector<Poly> rewrite_in_basis(const FiniteRingMap& map, const Poly& q);

/// Restriction of scalars: a factorization of f*W over R' becomes one of W
/// over R with both ranks multiplied by the basis size. Summand (i, b) of the
/// result corresponds to b * e_i, with twist (tau_i - deg'(b)) / c.
MatrixFactorization restrict_scalars(const MatrixFactorization& mf, const Poly& w_source,
                                     const FiniteRingMap& map);

/// Graded-dimension comparison of coker(restrict_scalars(mf)) against ℭ(mf)
/// read through the regrading: dim_d over R must equal dim_{c d} over R'.
struct PushforwardCokerReport {
  struct Row {
    int deg2;
    int dim_pushforward;
    int dim_original;
  };
  std::vector<Row> rows;
  bool ok = true;
};
PushforwardCokerReport pushforward_coker_check(const MatrixFactorization& mf,
                                               const Poly& w_source, const FiniteRingMap& map,
                                               int max_deg2);

/// Composition of finite maps (applies map2 after map1, i.e. R -> R' -> R'');
/// the basis is the product basis in (outer, inner) order.
FiniteRingMap compose_maps(const FiniteRingMap& first, const FiniteRingMap& second);

}  // namespace mfc
