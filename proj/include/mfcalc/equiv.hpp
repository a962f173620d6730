#pragma once

#include <string>
#include <vector>

#include "mfcalc/hom.hpp"
#include "mfcalc/mf.hpp"

namespace mfc {

/// Character of Γ = Π Z/d_i, stored as residues mod the cyclic orders.
using CharVec = std::vector<int>;

/// A finite abelian group acting diagonally on the ring variables, together
/// with the semi-invariance character chi of the potential.
struct GroupData {
  std::vector<int> orders;               // cyclic factors d_i
  std::vector<CharVec> action;           // per ring variable: weight tuple
  CharVec chi;

  int nfactors() const { return static_cast<int>(orders.size()); }
  long long group_order() const;
  long long exponent() const;  // lcm of the d_i

  CharVec normalized(const CharVec& v) const;
  CharVec add(const CharVec& a, const CharVec& b) const;
  CharVec sub(const CharVec& a, const CharVec& b) const;
  CharVec neg(const CharVec& a) const;
  CharVec scale(const CharVec& a, int k) const;
  CharVec zero_char() const { return CharVec(static_cast<size_t>(nfactors()), 0); }
  bool is_zero(const CharVec& a) const;

  CharVec monomial_weight(const Expo& e) const;
  /// Every monomial of p carries this weight.
  bool is_semi_invariant(const Poly& p, const CharVec& want) const;

  /// All characters of Γ (deterministic order).
  std::vector<CharVec> all_characters() const;
  /// All group elements (same tuple encoding).
  std::vector<std::vector<int>> all_elements() const;

  /// Field and shape validation: one weight tuple per variable, residues in
  /// range, and the field must contain the needed roots of unity with
  /// characteristic prime to |Γ|.
  void validate(const Ring& ring) const;
};

/// Matrix factorization with Γ-weights on the generators: delta1 invariant,
/// delta0 semi-invariant of weight chi. Weights enter entry conditions as
///   wt(delta1 entry (i,j)) = w1[j] - w0[i]
///   wt(delta0 entry (i,j)) = w0[j] - w1[i] + chi.
struct EquivariantMF {
  MatrixFactorization base;
  GroupData group;
  std::vector<CharVec> w0, w1;
};

VerifyReport verify_equivariant(const EquivariantMF& emf);

EquivariantMF equivariant_shift(const EquivariantMF& emf);
EquivariantMF equivariant_direct_sum(const EquivariantMF& a, const EquivariantMF& b);
/// F ⊗ psi: all generator weights shifted by psi.
EquivariantMF equivariant_twist(const EquivariantMF& emf, const CharVec& psi);
/// Cone of an invariant closed degree-0 morphism between equivariant objects.
EquivariantMF equivariant_cone(const EquivariantMF& e, const EquivariantMF& f,
                               const MfMorphism& g);

/// Γ-weight of an elementary Hom basis element relative to the invariance
/// condition; weight zero means Γ-invariant.
CharVec hom_elem_weight(const EquivariantMF& e, const EquivariantMF& f, const HomPiece& piece,
                        const HomPiece::Elem& el);

/// dim of the Γ-invariant part of H^(2 chi_power + parity) at one internal
/// degree, computed by restricting the complex to the invariant sub-basis.
int equivariant_hom_dim(const EquivariantMF& e, const EquivariantMF& f, int parity,
                        int chi_power, int internal_deg2);

/// Same dimension via the averaging projector (1/|Γ|) Σ_γ ρ(γ) applied to the
/// full complex: the independent second route.
int equivariant_hom_dim_averaging(const EquivariantMF& e, const EquivariantMF& f, int parity,
                                  int chi_power, int internal_deg2);

/// Exact-arithmetic checks on the averaging operator at one spot: P^2 = P and
/// d P = P d.
struct AveragingCheck {
  bool idempotent = false;
  bool commutes = false;
};
AveragingCheck averaging_operator_check(const EquivariantMF& e, const EquivariantMF& f,
                                        int coh_degree, int internal_deg2);

/// Homomorphism pi : Γ' -> Γ given by the images of the Γ'-factor generators.
/// `source` must carry the Γ'-action on the pullback's target ring (its chi
/// is ignored and replaced by chi ∘ pi); only the orders of `target` are used.
struct GroupHom {
  GroupData source;  // Γ'
  GroupData target;  // Γ
  std::vector<std::vector<int>> images;  // per Γ'-factor: tuple in Γ

  void validate() const;
  /// Dual map: a character of Γ pulled back to Γ'.
  CharVec pull_character(const CharVec& chi) const;
};

/// Pullback along an equivariant substitution intertwining the actions
/// through pi; weights transport by composition with pi.
EquivariantMF equivariant_pullback(const EquivariantMF& emf, const RingPtr& target_ring,
                                   const std::vector<Poly>& images, const GroupHom& pi);

/// Desk-scale consistency check of the quotient correspondence at the level
/// of Hom: invariant dims computed by the averaging route and by the direct
/// invariant solve must agree on every piece in the window.
struct CorrespondenceReport {
  struct Failure {
    int parity, chi_power, internal_deg2;
    int direct_dim, averaged_dim;
  };
  std::vector<Failure> failures;
  bool ok() const { return failures.empty(); }
};
CorrespondenceReport quotient_correspondence_check(const EquivariantMF& e,
                                                   const EquivariantMF& f, int lo2, int hi2);

}  // namespace mfc
