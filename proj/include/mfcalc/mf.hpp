#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mfcalc/pmatrix.hpp"
#include "mfcalc/poly.hpp"

namespace mfc {

/// A graded matrix factorization of a potential W: free modules E0 = ⊕ R(deg0[i]),
/// E1 = ⊕ R(deg1[j]) with delta1 : E1 -> E0 and delta0 : E0 -> E1 ⊗ L such that
/// both compositions equal W times the identity. L is the trivial bundle with
/// internal degree shift deg W, so tensoring by it adds degW2() to twist labels;
/// `twist` counts applied half-twist units for bookkeeping.
struct MatrixFactorization {
  RingPtr ring;
  Poly potential;
  std::vector<int> deg0, deg1;  // twists (doubled grading)
  PolyMatrix delta1;            // rank0 x rank1, rows deg0, cols deg1
  PolyMatrix delta0;            // rank1 x rank0, rows deg1 + degW2, cols deg0
  int twist = 0;

  int rank0() const { return static_cast<int>(deg0.size()); }
  int rank1() const { return static_cast<int>(deg1.size()); }
  int degW2() const;

  bool operator==(const MatrixFactorization& o) const;
};

MatrixFactorization make_mf(RingPtr ring, Poly potential, std::vector<int> deg0,
                            std::vector<int> deg1, PolyMatrix delta1, PolyMatrix delta0,
                            int twist = 0);

/// The zero object (both ranks 0).
MatrixFactorization zero_mf(RingPtr ring, Poly potential);
/// The contractible factorization (delta1 = [1], delta0 = [W]).
MatrixFactorization trivial_mf(RingPtr ring, Poly potential);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;

  void add(std::string v) {
    ok = false;
    violations.push_back(std::move(v));
  }
};

/// Checks both composition identities cell by cell and all homogeneity
/// constraints; collects every violation instead of stopping at the first.
VerifyReport verify(const MatrixFactorization& mf);
void require_verified(const MatrixFactorization& mf, const char* what);

/// Translation E[1]: swaps the modules, negates both differentials and
/// shifts the twist bookkeeping by one half-twist unit.
MatrixFactorization shift(const MatrixFactorization& mf);

MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b);

/// Entrywise substitution into differentials and potential. Every image must
/// be nonzero homogeneous of the source variable's doubled degree under the
/// target grading.
MatrixFactorization pullback(const MatrixFactorization& mf, const RingPtr& target,
                             const std::vector<Poly>& images);

/// Tensor product of factorizations of W1 and W2 with the Koszul sign,
/// yielding a factorization of W1 + W2 (which must be nonzero).
MatrixFactorization tensor_sum_potentials(const MatrixFactorization& a,
                                          const MatrixFactorization& b);

/// Iterated tensor of the rank-(1,1) factorizations (a_i, b_i) of W = Σ a_i b_i.
/// All a_i, b_i must be nonzero homogeneous with deg a_i + deg b_i constant.
MatrixFactorization koszul_factorization(const std::vector<Poly>& a,
                                         const std::vector<Poly>& b);

/// Homogeneous element of the Hom complex between factorizations of the same
/// potential. `degree` is the cohomological degree i: the morphism lands in
/// Hom^i, has parity i mod 2 and carries the twist L^{i/2}. Blocks:
///   even i = 2n:  f0 : E0 -> F0 ⊗ L^n,      f1 : E1 -> F1 ⊗ L^n
///   odd  i = 2n+1: f0 : E0 -> F1 ⊗ L^(n+1),  f1 : E1 -> F0 ⊗ L^n
struct MfMorphism {
  MatrixFactorization source, target;
  int degree = 0;
  PolyMatrix f0, f1;

  bool parity_odd() const { return ((degree % 2) + 2) % 2 == 1; }
};

MfMorphism identity_morphism(const MatrixFactorization& e);
MfMorphism zero_morphism(const MatrixFactorization& e, const MatrixFactorization& f,
                         int degree);
/// W * id as a degree-2 endomorphism.
MfMorphism potential_endomorphism(const MatrixFactorization& e);
/// delta viewed as an odd (degree-1) endomorphism.
MfMorphism delta_endomorphism(const MatrixFactorization& e);

/// Canonical degree labels for the blocks of a degree-i morphism E -> F.
struct MorphismShape {
  std::vector<int> f0_row, f0_col, f1_row, f1_col;
};
MorphismShape morphism_shape(const MatrixFactorization& e, const MatrixFactorization& f,
                             int degree);

/// d f = delta_F ∘ f - (-1)^{|f|} f ∘ delta_E, a morphism of degree i+1.
MfMorphism differential_morphism(const MfMorphism& f);
bool is_closed(const MfMorphism& f);
bool morphism_blocks_equal(const MfMorphism& a, const MfMorphism& b);

/// Mapping cone of a closed degree-0 morphism: F ⊕ E[1] with the block
/// differential [[delta_F, f], [0, -delta_E]]; rejected if f is not closed.
MatrixFactorization cone(const MfMorphism& f);

}  // namespace mfc
