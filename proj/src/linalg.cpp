#include "mfcalc/linalg.hpp"

#include <cstdint>

namespace mfc {

ScalarMat ScalarMat::identity(Field f, int n) {
  ScalarMat m(f, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, f.one());
  return m;
}

ScalarMat ScalarMat::mul(const ScalarMat& o) const {
  if (cols_ != o.rows_) throw Error("matrix product: shape mismatch");
  ScalarMat r(field_, rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (field_.is_zero(aik)) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Scalar& bkj = o.at(k, j);
        if (field_.is_zero(bkj)) continue;
        r.add_at(i, j, field_.mul(aik, bkj));
      }
    }
  return r;
}

ScalarMat ScalarMat::transpose() const {
  ScalarMat r(field_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

bool ScalarMat::is_zero() const {
  for (const auto& s : a_)
    if (!field_.is_zero(s)) return false;
  return true;
}

bool ScalarMat::operator==(const ScalarMat& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && a_ == o.a_;
}

std::vector<Scalar> ScalarMat::apply(const std::vector<Scalar>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw Error("apply: shape mismatch");
  std::vector<Scalar> r(static_cast<size_t>(rows_), field_.zero());
  for (int i = 0; i < rows_; ++i) {
    Scalar acc = field_.zero();
    for (int j = 0; j < cols_; ++j) {
      if (field_.is_zero(at(i, j)) || field_.is_zero(v[static_cast<size_t>(j)])) continue;
      acc = field_.add(acc, field_.mul(at(i, j), v[static_cast<size_t>(j)]));
    }
    r[static_cast<size_t>(i)] = acc;
  }
  return r;
}

ScalarMat hconcat(const ScalarMat& a, const ScalarMat& b) {
  if (a.rows() != b.rows() || a.field() != b.field()) throw Error("hconcat: shape mismatch");
  ScalarMat r(a.field(), a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (int j = 0; j < b.cols(); ++j) r.set(i, a.cols() + j, b.at(i, j));
  }
  return r;
}

ScalarMat vconcat(const ScalarMat& a, const ScalarMat& b) {
  if (a.cols() != b.cols() || a.field() != b.field()) throw Error("vconcat: shape mismatch");
  ScalarMat r(a.field(), a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.set(a.rows() + i, j, b.at(i, j));
  return r;
}

namespace {

// --- prime-field fast path -------------------------------------------------

struct PrimeBuf {
  int rows, cols;
  std::int64_t p;
  std::vector<std::int64_t> a;  // row-major residues

  std::int64_t& at(int i, int j) {
    return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
  }
};

PrimeBuf to_prime(const ScalarMat& m) {
  PrimeBuf b;
  b.rows = m.rows();
  b.cols = m.cols();
  b.p = m.field().p();
  b.a.resize(static_cast<size_t>(b.rows) * static_cast<size_t>(b.cols));
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) b.at(i, j) = m.at(i, j).res();
  return b;
}

std::int64_t pinv(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return t < 0 ? t + p : t;
}

// Reduced row echelon form; returns pivot columns in order.
std::vector<int> rref_prime(PrimeBuf& m) {
  std::vector<int> pivots;
  const std::int64_t p = m.p;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    std::int64_t inv = pinv(m.at(row, col), p);
    for (int j = col; j < m.cols; ++j) m.at(row, j) = (m.at(row, j) * inv) % p;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      std::int64_t f = m.at(i, col);
      if (f == 0) continue;
      for (int j = col; j < m.cols; ++j) {
        std::int64_t v = (m.at(i, j) - f * m.at(row, j)) % p;
        m.at(i, j) = v < 0 ? v + p : v;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank_prime(PrimeBuf& m) {
  const std::int64_t p = m.p;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    std::int64_t inv = pinv(m.at(row, col), p);
    for (int i = row + 1; i < m.rows; ++i) {
      std::int64_t f = (m.at(i, col) * inv) % p;
      if (f == 0) continue;
      for (int j = col; j < m.cols; ++j) {
        std::int64_t v = (m.at(i, j) - f * m.at(row, j)) % p;
        m.at(i, j) = v < 0 ? v + p : v;
      }
    }
    ++row;
  }
  return row;
}

// --- generic (rational) path -----------------------------------------------

struct GenBuf {
  int rows, cols;
  Field f;
  std::vector<Scalar> a;

  Scalar& at(int i, int j) {
    return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
  }
};

GenBuf to_gen(const ScalarMat& m) {
  GenBuf b{m.rows(), m.cols(), m.field(), {}};
  b.a.reserve(static_cast<size_t>(b.rows) * static_cast<size_t>(b.cols));
  for (int i = 0; i < b.rows; ++i)
    for (int j = 0; j < b.cols; ++j) b.a.push_back(m.at(i, j));
  return b;
}

std::vector<int> rref_gen(GenBuf& m) {
  std::vector<int> pivots;
  const Field& f = m.f;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (!f.is_zero(m.at(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = col; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    Scalar inv = f.inv(m.at(row, col));
    for (int j = col; j < m.cols; ++j) m.at(row, j) = f.mul(m.at(row, j), inv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      Scalar fac = m.at(i, col);
      if (f.is_zero(fac)) continue;
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = f.sub(m.at(i, j), f.mul(fac, m.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Buf, class Get>
std::vector<std::vector<Scalar>> kernel_from_rref(const Field& f, Buf& m,
                                                  const std::vector<int>& pivots, Get get) {
  std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<Scalar> v(static_cast<size_t>(m.cols), f.zero());
    v[static_cast<size_t>(free)] = f.one();
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = f.neg(get(static_cast<int>(r), free));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

int rank(const ScalarMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (m.field().is_prime_field()) {
    PrimeBuf b = to_prime(m);
    return rank_prime(b);
  }
  GenBuf b = to_gen(m);
  return static_cast<int>(rref_gen(b).size());
}

std::vector<std::vector<Scalar>> kernel_basis(const ScalarMat& a) {
  const Field& f = a.field();
  if (a.cols() == 0) return {};
  if (f.is_prime_field()) {
    PrimeBuf b = to_prime(a);
    auto pivots = rref_prime(b);
    return kernel_from_rref(f, b, pivots, [&](int r, int c) {
      return Scalar::residue(b.at(r, c));
    });
  }
  GenBuf b = to_gen(a);
  auto pivots = rref_gen(b);
  return kernel_from_rref(f, b, pivots, [&](int r, int c) { return b.at(r, c); });
}

LinearSolution solve_linear(const ScalarMat& a, const std::vector<Scalar>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw Error("solve: shape mismatch");
  const Field& f = a.field();
  ScalarMat aug(f, a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.set(i, j, a.at(i, j));
    aug.set(i, a.cols(), b[static_cast<size_t>(i)]);
  }
  LinearSolution sol;
  auto finish = [&](auto& buf, const std::vector<int>& pivots, auto get) {
    for (int c : pivots)
      if (c == a.cols()) return;  // inconsistent: pivot in the RHS column
    sol.solvable = true;
    sol.particular.assign(static_cast<size_t>(a.cols()), f.zero());
    for (size_t r = 0; r < pivots.size(); ++r)
      sol.particular[static_cast<size_t>(pivots[r])] = get(static_cast<int>(r), a.cols());
    // kernel of A = kernel of the augmented matrix restricted to x-columns
    std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    for (int free = 0; free < a.cols(); ++free) {
      if (is_pivot[static_cast<size_t>(free)]) continue;
      std::vector<Scalar> v(static_cast<size_t>(a.cols()), f.zero());
      v[static_cast<size_t>(free)] = f.one();
      for (size_t r = 0; r < pivots.size(); ++r)
        v[static_cast<size_t>(pivots[r])] = f.neg(get(static_cast<int>(r), free));
      sol.kernel.push_back(std::move(v));
    }
    (void)buf;
  };
  if (f.is_prime_field()) {
    PrimeBuf buf = to_prime(aug);
    auto pivots = rref_prime(buf);
    finish(buf, pivots, [&](int r, int c) { return Scalar::residue(buf.at(r, c)); });
  } else {
    GenBuf buf = to_gen(aug);
    auto pivots = rref_gen(buf);
    finish(buf, pivots, [&](int r, int c) { return buf.at(r, c); });
  }
  return sol;
}

}  // namespace mfc
