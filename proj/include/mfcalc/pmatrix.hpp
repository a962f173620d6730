#pragma once

#include <map>
#include <string>
#include <vector>

#include "mfcalc/linalg.hpp"
#include "mfcalc/poly.hpp"

namespace mfc {

/// Matrix of polynomials between graded free modules, columns indexing source
/// generators and rows indexing target generators. Degree labels follow the
/// twist convention: a module with labels t is ⊕_i R(t_i), the generator of
/// R(t) sits in internal degree -t, and the degree-d piece of ⊕ R(t_i) is
/// spanned by the pairs (monomial m of degree d + t_i, generator i). A nonzero
/// entry (i, j) must be homogeneous of doubled degree row_deg[i] - col_deg[j].
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::vector<int> row_deg, std::vector<int> col_deg);

  static PolyMatrix diagonal(const Poly& p, const std::vector<int>& row_deg,
                             const std::vector<int>& col_deg);
  static PolyMatrix identity(const RingPtr& ring, const std::vector<int>& degs);

  const RingPtr& ring() const { return ring_; }
  int rows() const { return static_cast<int>(row_deg_.size()); }
  int cols() const { return static_cast<int>(col_deg_.size()); }
  const std::vector<int>& row_deg() const { return row_deg_; }
  const std::vector<int>& col_deg() const { return col_deg_; }

  const Poly& at(int i, int j) const;
  void set(int i, int j, Poly p);

  PolyMatrix mul(const PolyMatrix& o) const;
  PolyMatrix add(const PolyMatrix& o) const;
  PolyMatrix operator-() const;
  PolyMatrix scaled(const Poly& p) const;  // entrywise p * this, row degrees shifted
  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;

  /// Entrywise normal form modulo w.
  PolyMatrix reduced_mod(const Poly& w) const;
  /// Entrywise substitution; degree labels carried over unchanged.
  PolyMatrix substituted(const RingPtr& target, const std::vector<Poly>& images) const;
  /// Entry evaluation at a point.
  ScalarMat evaluated(const std::vector<Scalar>& point) const;

  /// Relabels row/col degrees by a uniform shift (twisting by R(s)).
  PolyMatrix shifted_labels(int row_shift, int col_shift) const;

  /// [[a, b], [0, c]]-style assembly.
  static PolyMatrix block2x2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                             const PolyMatrix& d);
  static PolyMatrix zero_block(const RingPtr& ring, const std::vector<int>& row_deg,
                               const std::vector<int>& col_deg);

  /// Human-readable homogeneity violations; empty when all entries match the
  /// degree labels.
  std::vector<std::string> homogeneity_violations(const std::string& name) const;

  /// [[p, q], [r, s]] form, matching the problem-file syntax.
  std::string str() const;

 private:
  RingPtr ring_;
  std::vector<int> row_deg_, col_deg_;
  std::vector<Poly> e_;
};

/// Finite k-basis of the degree-d piece of a graded free module (or of the
/// same module over S = R/(w) when w is given: monomials not divisible by the
/// leading monomial of w). Elements are ordered generator-first, then by
/// descending monomial order.
struct GradedBasis {
  struct Elem {
    int gen;
    Expo m;
  };
  std::vector<Elem> elems;
  std::map<std::pair<int, Expo>, int> index;

  int size() const { return static_cast<int>(elems.size()); }
  int index_of(int gen, const Expo& m) const;
  void push(int gen, Expo m);
};

GradedBasis module_piece_basis(const Ring& ring, const std::vector<int>& twists, int deg2);
GradedBasis module_piece_basis_mod(const Ring& ring, const std::vector<int>& twists, int deg2,
                                   const Poly& w);

/// The k-linear map induced on degree-d pieces by a polynomial matrix; bases
/// as produced by module_piece_basis(_mod). When w is non-null both sides and
/// the entries are reduced modulo w.
ScalarMat matrix_piece(const PolyMatrix& m, int deg2, const Poly* w);

/// Least degree at which the module ⊕ R(t_i) can be nonzero (min over -t_i);
/// returns 0 for the empty module.
int min_module_degree(const std::vector<int>& twists);

}  // namespace mfc
