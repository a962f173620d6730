#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "mfcalc/mf.hpp"

namespace mfc {

/// Finite k-basis of one graded piece of the Hom complex between E and F:
/// cohomological degree i (parity i mod 2, twist L^{i/2}) and one internal
/// degree. Elements are elementary morphisms: a single monomial in one cell of
/// one block, ordered by (block, target generator, source generator, monomial
/// order).
struct HomPiece {
  int coh_degree = 0;
  int internal_deg2 = 0;
  struct Elem {
    int block;  // 0: from E0, 1: from E1
    int row, col;
    Expo m;
  };
  std::vector<Elem> basis;
  std::map<std::tuple<int, int, int, Expo>, int> index;

  int size() const { return static_cast<int>(basis.size()); }
  int index_of(int block, int row, int col, const Expo& m) const;
};

HomPiece hom_piece(const MatrixFactorization& e, const MatrixFactorization& f, int coh_degree,
                   int internal_deg2);

/// Matrix of the Hom differential from `src` (degree i) to `dst` (degree i+1,
/// same internal degree), in the elementary bases.
ScalarMat hom_differential(const MatrixFactorization& e, const MatrixFactorization& f,
                           const HomPiece& src, const HomPiece& dst);

/// One piece of a computed Hom complex together with its outgoing
/// differential; d * previous d = 0 is checked during assembly.
struct HomComplexPiece {
  HomPiece piece;
  ScalarMat d;  // to the (coh_degree + 1) piece at the same internal degree
};

/// Pieces for cohomological degrees -1..2 (one full period plus the maps
/// needed for both homologies) at every internal degree in [lo2, hi2].
std::vector<HomComplexPiece> hom_complex(const MatrixFactorization& e,
                                         const MatrixFactorization& f, int lo2, int hi2);

/// dim H^parity at one internal degree, computed exactly from the three
/// adjacent pieces. Each (degree, internal degree) slice is a complete finite
/// problem: the differential preserves internal degree.
int stable_hom_dim(const MatrixFactorization& e, const MatrixFactorization& f, int parity,
                   int internal_deg2);

struct HomWindowReport {
  int lo2 = 0, hi2 = 0;
  struct Spot {
    int internal_deg2;
    int dim_even, dim_odd;
  };
  std::vector<Spot> spots;
  long long total_even = 0, total_odd = 0;
  /// True when both homology dims vanish at the window edges; finite totals
  /// are certified only in that case.
  bool stabilized = true;
};
HomWindowReport stable_hom_window(const MatrixFactorization& e, const MatrixFactorization& f,
                                  int lo2, int hi2);

/// Default internal-degree window: [-4 deg W, +4 deg W] in doubled units.
std::pair<int, int> default_hom_window(const MatrixFactorization& e);

/// Searches for h with dh = f by exact linear solving in every internal
/// degree; the search space is complete, so nullopt proves there is no
/// homotopy. Requires is_closed(f).
std::optional<MfMorphism> homotopy_solve(const MfMorphism& f);

bool is_null_homotopic(const MfMorphism& f);

/// Morphism assembled from coefficients over a piece basis.
MfMorphism morphism_from_coords(const MatrixFactorization& e, const MatrixFactorization& f,
                                const HomPiece& piece, const std::vector<Scalar>& coords);

/// Coordinates of a morphism's internal-degree-e component over the piece
/// basis (the piece must match f's cohomological degree).
std::vector<Scalar> morphism_coords(const MfMorphism& f, const HomPiece& piece);

/// Internal degrees at which f has a nonzero component.
std::vector<int> morphism_internal_degrees(const MfMorphism& f);

}  // namespace mfc
