#include "mfcalc/pmatrix.hpp"

#include <algorithm>

namespace mfc {

PolyMatrix::PolyMatrix(RingPtr ring, std::vector<int> row_deg, std::vector<int> col_deg)
    : ring_(std::move(ring)), row_deg_(std::move(row_deg)), col_deg_(std::move(col_deg)) {
  e_.assign(static_cast<size_t>(rows()) * static_cast<size_t>(cols()), Poly::zero(ring_));
}

PolyMatrix PolyMatrix::diagonal(const Poly& p, const std::vector<int>& row_deg,
                                const std::vector<int>& col_deg) {
  if (row_deg.size() != col_deg.size()) throw Error("diagonal: shape mismatch");
  PolyMatrix m(p.ring(), row_deg, col_deg);
  for (int i = 0; i < m.rows(); ++i) m.set(i, i, p);
  return m;
}

PolyMatrix PolyMatrix::identity(const RingPtr& ring, const std::vector<int>& degs) {
  return diagonal(Poly::from_int(ring, 1), degs, degs);
}

const Poly& PolyMatrix::at(int i, int j) const {
  return e_[static_cast<size_t>(i) * static_cast<size_t>(cols()) + static_cast<size_t>(j)];
}

void PolyMatrix::set(int i, int j, Poly p) {
  e_[static_cast<size_t>(i) * static_cast<size_t>(cols()) + static_cast<size_t>(j)] =
      std::move(p);
}

PolyMatrix PolyMatrix::mul(const PolyMatrix& o) const {
  if (cols() != o.rows()) throw Error("poly matrix product: shape mismatch");
  PolyMatrix r(ring_, row_deg_, o.col_deg_);
  for (int i = 0; i < rows(); ++i)
    for (int k = 0; k < cols(); ++k) {
      const Poly& aik = at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < o.cols(); ++j) {
        const Poly& bkj = o.at(k, j);
        if (bkj.is_zero()) continue;
        r.set(i, j, r.at(i, j) + aik * bkj);
      }
    }
  return r;
}

PolyMatrix PolyMatrix::add(const PolyMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) throw Error("poly matrix add: shape mismatch");
  PolyMatrix r(ring_, row_deg_, col_deg_);
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) r.set(i, j, at(i, j) + o.at(i, j));
  return r;
}

PolyMatrix PolyMatrix::operator-() const {
  PolyMatrix r(ring_, row_deg_, col_deg_);
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) r.set(i, j, -at(i, j));
  return r;
}

PolyMatrix PolyMatrix::scaled(const Poly& p) const {
  auto d = p.wdeg2();
  std::vector<int> rd = row_deg_;
  if (d.kind == DegreeInfo::Kind::homogeneous)
    for (auto& t : rd) t += d.deg2;
  PolyMatrix r(ring_, rd, col_deg_);
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) r.set(i, j, p * at(i, j));
  return r;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) return false;
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j)
      if (at(i, j) != o.at(i, j)) return false;
  return true;
}

PolyMatrix PolyMatrix::reduced_mod(const Poly& w) const {
  PolyMatrix r(ring_, row_deg_, col_deg_);
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) r.set(i, j, normal_form_mod(at(i, j), w));
  return r;
}

PolyMatrix PolyMatrix::substituted(const RingPtr& target,
                                   const std::vector<Poly>& images) const {
  PolyMatrix r(target, row_deg_, col_deg_);
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) r.set(i, j, at(i, j).substitute(target, images));
  return r;
}

ScalarMat PolyMatrix::evaluated(const std::vector<Scalar>& point) const {
  ScalarMat r(ring_->field, rows(), cols());
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) r.set(i, j, at(i, j).evaluate(point));
  return r;
}

PolyMatrix PolyMatrix::shifted_labels(int row_shift, int col_shift) const {
  std::vector<int> rd = row_deg_, cd = col_deg_;
  for (auto& d : rd) d += row_shift;
  for (auto& d : cd) d += col_shift;
  PolyMatrix r(ring_, std::move(rd), std::move(cd));
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) r.set(i, j, at(i, j));
  return r;
}

PolyMatrix PolyMatrix::zero_block(const RingPtr& ring, const std::vector<int>& row_deg,
                                  const std::vector<int>& col_deg) {
  return PolyMatrix(ring, row_deg, col_deg);
}

PolyMatrix PolyMatrix::block2x2(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                                const PolyMatrix& d) {
  if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
      b.cols() != d.cols())
    throw Error("block2x2: shape mismatch");
  std::vector<int> rd = a.row_deg_, cd = a.col_deg_;
  rd.insert(rd.end(), c.row_deg_.begin(), c.row_deg_.end());
  cd.insert(cd.end(), b.col_deg_.begin(), b.col_deg_.end());
  PolyMatrix r(a.ring_, std::move(rd), std::move(cd));
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) r.set(i, a.cols() + j, b.at(i, j));
  }
  for (int i = 0; i < c.rows(); ++i) {
    for (int j = 0; j < c.cols(); ++j) r.set(a.rows() + i, j, c.at(i, j));
    for (int j = 0; j < d.cols(); ++j) r.set(a.rows() + i, a.cols() + j, d.at(i, j));
  }
  return r;
}

std::vector<std::string> PolyMatrix::homogeneity_violations(const std::string& name) const {
  std::vector<std::string> out;
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) {
      int want = row_deg_[static_cast<size_t>(i)] - col_deg_[static_cast<size_t>(j)];
      if (!at(i, j).is_homogeneous_of(want))
        out.push_back(name + " entry (" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + "): expected homogeneous of doubled degree " +
                      std::to_string(want) + ", got degree " + at(i, j).wdeg2().str());
    }
  return out;
}

std::string PolyMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < rows(); ++i) {
    if (i) s += ", ";
    s += "[";
    for (int j = 0; j < cols(); ++j) {
      if (j) s += ", ";
      s += at(i, j).str();
    }
    s += "]";
  }
  return s + "]";
}

int GradedBasis::index_of(int gen, const Expo& m) const {
  auto it = index.find({gen, m});
  return it == index.end() ? -1 : it->second;
}

void GradedBasis::push(int gen, Expo m) {
  index[{gen, m}] = static_cast<int>(elems.size());
  elems.push_back({gen, std::move(m)});
}

GradedBasis module_piece_basis(const Ring& ring, const std::vector<int>& twists, int deg2) {
  GradedBasis b;
  for (int g = 0; g < static_cast<int>(twists.size()); ++g)
    for (auto& m : monomials_of_wdeg2(ring, deg2 + twists[static_cast<size_t>(g)]))
      b.push(g, m);
  return b;
}

GradedBasis module_piece_basis_mod(const Ring& ring, const std::vector<int>& twists, int deg2,
                                   const Poly& w) {
  const Expo& lm = w.leading().m;
  GradedBasis b;
  for (int g = 0; g < static_cast<int>(twists.size()); ++g)
    for (auto& m : monomials_of_wdeg2(ring, deg2 + twists[static_cast<size_t>(g)]))
      if (!expo_divides(lm, m)) b.push(g, m);
  return b;
}

ScalarMat matrix_piece(const PolyMatrix& m, int deg2, const Poly* w) {
  const Ring& ring = *m.ring();
  GradedBasis src = w ? module_piece_basis_mod(ring, m.col_deg(), deg2, *w)
                      : module_piece_basis(ring, m.col_deg(), deg2);
  GradedBasis dst = w ? module_piece_basis_mod(ring, m.row_deg(), deg2, *w)
                      : module_piece_basis(ring, m.row_deg(), deg2);
  ScalarMat out(ring.field, dst.size(), src.size());
  for (int jc = 0; jc < src.size(); ++jc) {
    const auto& el = src.elems[static_cast<size_t>(jc)];
    for (int i = 0; i < m.rows(); ++i) {
      const Poly& entry = m.at(i, el.gen);
      if (entry.is_zero()) continue;
      Poly q = entry.mul_monomial(el.m, ring.field.one());
      if (w) q = normal_form_mod(q, *w);
      for (const auto& t : q.terms()) {
        int idx = dst.index_of(i, t.m);
        if (idx < 0)
          throw Error("matrix_piece: image term outside the graded piece "
                      "(inhomogeneous matrix?)");
        out.add_at(idx, jc, t.c);
      }
    }
  }
  return out;
}

int min_module_degree(const std::vector<int>& twists) {
  int d = 0;
  bool first = true;
  for (int t : twists) {
    if (first || -t < d) d = -t;
    first = false;
  }
  return d;
}

}  // namespace mfc
