#pragma once

#include <vector>

#include "mfcalc/field.hpp"

namespace mfc {

/// Dense matrix over the ground field; row-major, exact arithmetic.
class ScalarMat {
 public:
  ScalarMat(Field f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), f.zero()) {}

  static ScalarMat identity(Field f, int n);

  const Field& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const Scalar& at(int i, int j) const {
    return a_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)];
  }
  void set(int i, int j, const Scalar& s) {
    a_[static_cast<size_t>(i) * static_cast<size_t>(cols_) + static_cast<size_t>(j)] = s;
  }
  void add_at(int i, int j, const Scalar& s) { set(i, j, field_.add(at(i, j), s)); }

  ScalarMat mul(const ScalarMat& o) const;
  ScalarMat transpose() const;
  bool is_zero() const;
  bool operator==(const ScalarMat& o) const;

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const;  // this * v

 private:
  Field field_;
  int rows_, cols_;
  std::vector<Scalar> a_;
};

ScalarMat hconcat(const ScalarMat& a, const ScalarMat& b);
ScalarMat vconcat(const ScalarMat& a, const ScalarMat& b);

/// Rank by forward Gaussian elimination (exact).
int rank(const ScalarMat& m);

/// Basis of the right kernel {v : Av = 0}.
std::vector<std::vector<Scalar>> kernel_basis(const ScalarMat& a);

/// Exact solve of A x = b. When solvable, `particular` holds one solution and
/// `kernel` a basis of the homogeneous solutions.
struct LinearSolution {
  bool solvable = false;
  std::vector<Scalar> particular;
  std::vector<std::vector<Scalar>> kernel;
};
LinearSolution solve_linear(const ScalarMat& a, const std::vector<Scalar>& b);

}  // namespace mfc
