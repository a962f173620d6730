#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfcalc/hom.hpp"
#include "mfcalc/mf.hpp"

namespace mfc {

/// Cokernel presentation of a graded module over S = R/(W): generators
/// ⊕ S(gen_deg[i]) modulo the column span of `relations` (entries reduced
/// modulo W).
struct GradedModulePresentation {
  RingPtr ring;
  Poly potential;
  std::vector<int> gen_deg;  // twists
  PolyMatrix relations;      // rows = generators, columns = relations

  int ngens() const { return static_cast<int>(gen_deg.size()); }
};

/// ℭ(mf) = coker(delta1 : E1 -> E0) over S.
GradedModulePresentation coker_functor(const MatrixFactorization& mf);

/// dim_k of the degree-d piece.
int graded_dim(const GradedModulePresentation& m, int deg2);
/// Least degree at which the ambient free module can be nonzero.
int module_min_degree(const GradedModulePresentation& m);
std::vector<int> hilbert_function(const GradedModulePresentation& m, int lo2, int hi2);

/// True when multiplication by W is zero on every piece up to the bound
/// (exact check on the presentation).
bool potential_annihilates(const GradedModulePresentation& m, int max_deg2);

/// The 2-periodic complex com(mf) over S: maps[k] goes from position
/// (-length + k) to (-length + k + 1), with E0 at position 0 and degree
/// labels shifted by deg W per period. Entries are reduced mod W.
struct TwoPeriodicComplex {
  int first_position = 0;
  std::vector<PolyMatrix> maps;
};
TwoPeriodicComplex two_periodic_complex(const MatrixFactorization& mf, int length);

/// Exactness of com(mf) at the given positions for all internal degrees up
/// to the bound: defect = dim ker(out) - rank(in) at each spot.
struct ExactnessReport {
  struct Defect {
    int position;
    int deg2;
    int defect;
  };
  std::vector<Defect> defects;
  int max_deg2 = 0;
  std::vector<int> positions;
  bool ok() const { return defects.empty(); }
};
ExactnessReport check_exactness(const MatrixFactorization& mf, int max_deg2,
                                std::vector<int> positions = {-1, 0, 1});

/// Exactness of 0 -> ℭ(mf) -> (E1 ⊗ L)|X0 -> ℭ(mf[1]) -> 0 at all three spots
/// per internal degree up to the bound.
struct ConnectingReport {
  struct Failure {
    int deg2;
    std::string where;
  };
  std::vector<Failure> failures;
  int max_deg2 = 0;
  bool ok() const { return failures.empty(); }
};
ConnectingReport connecting_sequence_check(const MatrixFactorization& mf, int max_deg2);

/// Default working bound for stabilize/roundtrip: 3 * (max generator degree)
/// + 3 * deg W in doubled units.
int default_stabilize_bound(const GradedModulePresentation& m);

/// Constructive inverse of ℭ: choose minimal generators of M, lift to a free
/// module F0, certify the kernel K is free on its minimal generators up to
/// the degree bound, and solve delta0 from W id factoring through delta1.
struct StabilizeResult {
  bool ok = false;
  std::string error;
  MatrixFactorization mf;
  /// Lift of the chosen generators: columns express them in the ambient free
  /// module of the presentation (= g0 of the comparison morphism when M came
  /// from coker_functor).
  PolyMatrix generator_lift;
  int bound2 = 0;
};
StabilizeResult stabilize(const GradedModulePresentation& m, int degree_bound2);

/// Round trip mf -> ℭ(mf) -> stabilize: checks that the comparison morphism
/// g : stabilized -> mf is closed, that ℭ(g) is bijective on graded pieces up
/// to the bound, and that stable Hom dims against the test family agree on
/// the window (default [-2 deg W, +2 deg W]; pass lo <= hi to override).
struct RoundtripReport {
  bool ok = false;
  std::vector<std::string> failures;
  MatrixFactorization stabilized;
  std::optional<MfMorphism> comparison;
  int bound2 = 0;
  int window_lo2 = 0, window_hi2 = 0;
};
RoundtripReport cokernel_roundtrip_check(const MatrixFactorization& mf, int degree_bound2 = -1,
                                         int window_lo2 = 1, int window_hi2 = 0);

}  // namespace mfc
