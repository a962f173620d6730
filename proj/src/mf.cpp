#include "mfcalc/mf.hpp"

#include <algorithm>

namespace mfc {

namespace {

// floor division for twist arithmetic with negative degrees
int floor_div2(int i) { return (i >= 0) ? i / 2 : -((-i + 1) / 2); }

std::vector<int> shifted(std::vector<int> v, int s) {
  for (auto& d : v) d += s;
  return v;
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

PolyMatrix with_labels(const PolyMatrix& m, std::vector<int> rd, std::vector<int> cd) {
  PolyMatrix r(m.ring(), std::move(rd), std::move(cd));
  if (r.rows() != m.rows() || r.cols() != m.cols()) throw Error("with_labels: shape mismatch");
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.set(i, j, m.at(i, j));
  return r;
}

}  // namespace

int MatrixFactorization::degW2() const {
  auto d = potential.wdeg2();
  if (d.kind != DegreeInfo::Kind::homogeneous)
    throw Error("potential must be nonzero homogeneous");
  return d.deg2;
}

bool MatrixFactorization::operator==(const MatrixFactorization& o) const {
  return *ring == *o.ring && potential == o.potential && deg0 == o.deg0 && deg1 == o.deg1 &&
         delta1 == o.delta1 && delta0 == o.delta0 && twist == o.twist;
}

MatrixFactorization make_mf(RingPtr ring, Poly potential, std::vector<int> deg0,
                            std::vector<int> deg1, PolyMatrix delta1, PolyMatrix delta0,
                            int twist) {
  MatrixFactorization mf;
  mf.ring = std::move(ring);
  mf.potential = std::move(potential);
  mf.deg0 = std::move(deg0);
  mf.deg1 = std::move(deg1);
  mf.delta1 = std::move(delta1);
  mf.delta0 = std::move(delta0);
  mf.twist = twist;
  return mf;
}

MatrixFactorization zero_mf(RingPtr ring, Poly potential) {
  PolyMatrix d1(ring, {}, {});
  PolyMatrix d0(ring, {}, {});
  return make_mf(std::move(ring), std::move(potential), {}, {}, d1, d0);
}

MatrixFactorization trivial_mf(RingPtr ring, Poly potential) {
  int w2 = potential.wdeg2().deg2;
  PolyMatrix d1(ring, {0}, {0});
  d1.set(0, 0, Poly::from_int(ring, 1));
  PolyMatrix d0(ring, {w2}, {0});
  d0.set(0, 0, potential);
  return make_mf(std::move(ring), std::move(potential), {0}, {0}, d1, d0);
}

VerifyReport verify(const MatrixFactorization& mf) {
  VerifyReport rep;
  if (mf.potential.is_zero()) {
    rep.add("potential is zero");
    return rep;
  }
  auto wd = mf.potential.wdeg2();
  if (wd.kind != DegreeInfo::Kind::homogeneous) {
    rep.add("potential is not homogeneous");
    return rep;
  }
  const int w2 = wd.deg2;
  if (mf.delta1.rows() != mf.rank0() || mf.delta1.cols() != mf.rank1())
    rep.add("delta1 has shape " + std::to_string(mf.delta1.rows()) + "x" +
            std::to_string(mf.delta1.cols()) + ", expected " + std::to_string(mf.rank0()) +
            "x" + std::to_string(mf.rank1()));
  if (mf.delta0.rows() != mf.rank1() || mf.delta0.cols() != mf.rank0())
    rep.add("delta0 has shape " + std::to_string(mf.delta0.rows()) + "x" +
            std::to_string(mf.delta0.cols()) + ", expected " + std::to_string(mf.rank1()) +
            "x" + std::to_string(mf.rank0()));
  if (!rep.ok) return rep;
  if (mf.delta1.row_deg() != mf.deg0 || mf.delta1.col_deg() != mf.deg1)
    rep.add("delta1 degree labels disagree with generator degrees");
  if (mf.delta0.row_deg() != shifted(mf.deg1, w2) || mf.delta0.col_deg() != mf.deg0)
    rep.add("delta0 degree labels disagree with generator degrees (rows must carry the "
            "deg-W shift)");
  for (auto& v : mf.delta1.homogeneity_violations("delta1")) rep.add(std::move(v));
  for (auto& v : mf.delta0.homogeneity_violations("delta0")) rep.add(std::move(v));

  PolyMatrix p10 = mf.delta1.mul(mf.delta0);  // E0 -> E0 ⊗ L
  for (int i = 0; i < mf.rank0(); ++i)
    for (int j = 0; j < mf.rank0(); ++j) {
      const Poly want = (i == j) ? mf.potential : Poly::zero(mf.ring);
      if (p10.at(i, j) != want)
        rep.add("delta1*delta0 cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                "): " + p10.at(i, j).str() + " != " + want.str());
    }
  PolyMatrix p01 = mf.delta0.mul(mf.delta1);  // E1 -> E1 ⊗ L
  for (int i = 0; i < mf.rank1(); ++i)
    for (int j = 0; j < mf.rank1(); ++j) {
      const Poly want = (i == j) ? mf.potential : Poly::zero(mf.ring);
      if (p01.at(i, j) != want)
        rep.add("delta0*delta1 cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                "): " + p01.at(i, j).str() + " != " + want.str());
    }
  return rep;
}

void require_verified(const MatrixFactorization& mf, const char* what) {
  auto rep = verify(mf);
  if (!rep.ok)
    throw Error(std::string(what) + ": matrix factorization fails verification: " +
                rep.violations.front());
}

MatrixFactorization shift(const MatrixFactorization& mf) {
  const int w2 = mf.degW2();
  MatrixFactorization r;
  r.ring = mf.ring;
  r.potential = mf.potential;
  r.deg0 = shifted(mf.deg1, w2);
  r.deg1 = mf.deg0;
  r.delta1 = -mf.delta0;  // labels already rows deg1+W2, cols deg0
  r.delta0 = with_labels(-mf.delta1, shifted(mf.deg0, w2), shifted(mf.deg1, w2));
  r.twist = mf.twist + 1;
  return r;
}

MatrixFactorization direct_sum(const MatrixFactorization& a, const MatrixFactorization& b) {
  if (*a.ring != *b.ring) throw Error("direct_sum: ring mismatch");
  if (a.potential != b.potential) throw Error("direct_sum: potential mismatch");
  if (a.twist != b.twist) throw Error("direct_sum: twist mismatch");
  const int w2 = a.degW2();
  MatrixFactorization r;
  r.ring = a.ring;
  r.potential = a.potential;
  r.twist = a.twist;
  r.deg0 = concat(a.deg0, b.deg0);
  r.deg1 = concat(a.deg1, b.deg1);
  r.delta1 = PolyMatrix::block2x2(a.delta1, PolyMatrix::zero_block(a.ring, a.deg0, b.deg1),
                                  PolyMatrix::zero_block(a.ring, b.deg0, a.deg1), b.delta1);
  r.delta0 = PolyMatrix::block2x2(
      a.delta0, PolyMatrix::zero_block(a.ring, shifted(a.deg1, w2), b.deg0),
      PolyMatrix::zero_block(a.ring, shifted(b.deg1, w2), a.deg0), b.delta0);
  return r;
}

MatrixFactorization pullback(const MatrixFactorization& mf, const RingPtr& target,
                             const std::vector<Poly>& images) {
  const Ring& src = *mf.ring;
  if (static_cast<int>(images.size()) != src.nvars())
    throw Error("pullback: need one image per source variable");
  for (int v = 0; v < src.nvars(); ++v) {
    const Poly& im = images[static_cast<size_t>(v)];
    if (im.is_zero() || !im.is_homogeneous_of(src.wdeg2(v)))
      throw Error("pullback: image of " + src.vars[static_cast<size_t>(v)] +
                  " must be nonzero homogeneous of doubled degree " +
                  std::to_string(src.wdeg2(v)));
  }
  MatrixFactorization r;
  r.ring = target;
  r.potential = mf.potential.substitute(target, images);
  if (r.potential.is_zero()) throw Error("pullback: substituted potential vanishes");
  r.deg0 = mf.deg0;
  r.deg1 = mf.deg1;
  r.delta1 = mf.delta1.substituted(target, images);
  r.delta0 = mf.delta0.substituted(target, images);
  r.twist = mf.twist;
  return r;
}

namespace {

// index packing for tensor blocks: (alpha, beta) -> alpha * nb + beta
PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b, std::vector<int> row_deg,
                std::vector<int> col_deg) {
  PolyMatrix r(a.ring(), std::move(row_deg), std::move(col_deg));
  for (int i = 0; i < a.rows(); ++i)
    for (int ip = 0; ip < a.cols(); ++ip) {
      if (a.at(i, ip).is_zero()) continue;
      for (int j = 0; j < b.rows(); ++j)
        for (int jp = 0; jp < b.cols(); ++jp) {
          if (b.at(j, jp).is_zero()) continue;
          r.set(i * b.rows() + j, ip * b.cols() + jp, a.at(i, ip) * b.at(j, jp));
        }
    }
  return r;
}

std::vector<int> pair_deg(const std::vector<int>& a, const std::vector<int>& b, int extra) {
  std::vector<int> r;
  r.reserve(a.size() * b.size());
  for (int x : a)
    for (int y : b) r.push_back(x + y + extra);
  return r;
}

}  // namespace

MatrixFactorization tensor_sum_potentials(const MatrixFactorization& a,
                                          const MatrixFactorization& b) {
  if (*a.ring != *b.ring) throw Error("tensor: ring mismatch");
  Poly w = a.potential + b.potential;
  if (w.is_zero()) throw Error("tensor: W1 + W2 = 0");
  if (a.degW2() != b.degW2()) throw Error("tensor: potentials of different degrees");
  if (a.twist != b.twist) throw Error("tensor: twist mismatch");
  const int w2 = a.degW2();
  const RingPtr& ring = a.ring;

  auto id_mat = [&](const std::vector<int>& degs) { return PolyMatrix::identity(ring, degs); };

  // C0 = (A0⊗B0) ⊕ (A1⊗B1⊗L), C1 = (A1⊗B0) ⊕ (A0⊗B1)
  std::vector<int> c00 = pair_deg(a.deg0, b.deg0, 0);
  std::vector<int> c01 = pair_deg(a.deg1, b.deg1, w2);
  std::vector<int> c10 = pair_deg(a.deg1, b.deg0, 0);
  std::vector<int> c11 = pair_deg(a.deg0, b.deg1, 0);

  MatrixFactorization c;
  c.ring = ring;
  c.potential = w;
  c.twist = a.twist;
  c.deg0 = concat(c00, c01);
  c.deg1 = concat(c10, c11);

  // delta1 : C1 -> C0 = [[d1A⊗I, I⊗d1B], [-I⊗d0B, d0A⊗I]]
  PolyMatrix ul = kron(a.delta1, id_mat(b.deg0), c00, c10);
  PolyMatrix ur = kron(id_mat(a.deg0), b.delta1, c00, c11);
  PolyMatrix ll = kron(-id_mat(a.deg1), b.delta0, c01, c10);
  PolyMatrix lr = kron(a.delta0, id_mat(b.deg1), c01, c11);
  c.delta1 = PolyMatrix::block2x2(ul, ur, ll, lr);

  // delta0 : C0 -> C1 ⊗ L = [[d0A⊗I, -I⊗d1B], [I⊗d0B, d1A⊗I]]
  std::vector<int> c10L = shifted(c10, w2), c11L = shifted(c11, w2);
  PolyMatrix ul0 = kron(a.delta0, id_mat(b.deg0), c10L, c00);
  PolyMatrix ur0 = kron(-id_mat(a.deg1), b.delta1, c10L, c01);
  PolyMatrix ll0 = kron(id_mat(a.deg0), b.delta0, c11L, c00);
  PolyMatrix lr0 = kron(a.delta1, id_mat(b.deg1), c11L, c01);
  c.delta0 = PolyMatrix::block2x2(ul0, ur0, ll0, lr0);
  return c;
}

MatrixFactorization koszul_factorization(const std::vector<Poly>& a,
                                         const std::vector<Poly>& b) {
  if (a.empty() || a.size() != b.size())
    throw Error("koszul: need equally many nonempty a and b lists");
  const RingPtr& ring = a.front().ring();
  int sum_deg = -1;
  for (size_t i = 0; i < a.size(); ++i) {
    require_same_ring(a[i], b[i], "koszul");
    require_same_ring(a[i], a.front(), "koszul");
    auto da = a[i].wdeg2(), db = b[i].wdeg2();
    if (da.kind != DegreeInfo::Kind::homogeneous || db.kind != DegreeInfo::Kind::homogeneous)
      throw Error("koszul: factor " + std::to_string(i + 1) +
                  " must be nonzero homogeneous");
    int s = da.deg2 + db.deg2;
    if (sum_deg < 0)
      sum_deg = s;
    else if (s != sum_deg)
      throw Error("koszul: deg a_i + deg b_i must be constant");
  }
  auto rank1 = [&](const Poly& ai, const Poly& bi) {
    int da = ai.wdeg2().deg2;
    PolyMatrix d1(ring, {0}, {-da});
    d1.set(0, 0, ai);
    PolyMatrix d0(ring, {sum_deg - da}, {0});
    d0.set(0, 0, bi);
    return make_mf(ring, ai * bi, {0}, {-da}, d1, d0);
  };
  MatrixFactorization acc = rank1(a[0], b[0]);
  for (size_t i = 1; i < a.size(); ++i)
    acc = tensor_sum_potentials(acc, rank1(a[i], b[i]));
  return acc;
}

MorphismShape morphism_shape(const MatrixFactorization& e, const MatrixFactorization& f,
                             int degree) {
  const int w2 = e.degW2();
  MorphismShape s;
  if (((degree % 2) + 2) % 2 == 0) {
    int n = floor_div2(degree);
    s.f0_row = shifted(f.deg0, n * w2);
    s.f0_col = e.deg0;
    s.f1_row = shifted(f.deg1, n * w2);
    s.f1_col = e.deg1;
  } else {
    int n = floor_div2(degree);  // degree = 2n + 1
    s.f0_row = shifted(f.deg1, (n + 1) * w2);
    s.f0_col = e.deg0;
    s.f1_row = shifted(f.deg0, n * w2);
    s.f1_col = e.deg1;
  }
  return s;
}

MfMorphism zero_morphism(const MatrixFactorization& e, const MatrixFactorization& f,
                         int degree) {
  if (*e.ring != *f.ring || e.potential != f.potential)
    throw Error("morphism: source and target must share ring and potential");
  MorphismShape s = morphism_shape(e, f, degree);
  MfMorphism m;
  m.source = e;
  m.target = f;
  m.degree = degree;
  m.f0 = PolyMatrix(e.ring, s.f0_row, s.f0_col);
  m.f1 = PolyMatrix(e.ring, s.f1_row, s.f1_col);
  return m;
}

MfMorphism identity_morphism(const MatrixFactorization& e) {
  MfMorphism m = zero_morphism(e, e, 0);
  m.f0 = PolyMatrix::identity(e.ring, e.deg0);
  m.f1 = PolyMatrix::identity(e.ring, e.deg1);
  return m;
}

MfMorphism potential_endomorphism(const MatrixFactorization& e) {
  MfMorphism m = zero_morphism(e, e, 2);
  const int w2 = e.degW2();
  m.f0 = PolyMatrix::diagonal(e.potential, shifted(e.deg0, w2), e.deg0);
  m.f1 = PolyMatrix::diagonal(e.potential, shifted(e.deg1, w2), e.deg1);
  return m;
}

MfMorphism delta_endomorphism(const MatrixFactorization& e) {
  MfMorphism m = zero_morphism(e, e, 1);
  m.f0 = e.delta0;
  m.f1 = e.delta1;
  return m;
}

MfMorphism differential_morphism(const MfMorphism& f) {
  const MatrixFactorization& e = f.source;
  const MatrixFactorization& t = f.target;
  MfMorphism d;
  d.source = e;
  d.target = t;
  d.degree = f.degree + 1;
  MorphismShape s = morphism_shape(e, t, d.degree);
  if (!f.parity_odd()) {
    // d f = (d0F f0 - f1 d0E, d1F f1 - f0 d1E)
    d.f0 = with_labels(t.delta0.mul(f.f0).add(-(f.f1.mul(e.delta0))), s.f0_row, s.f0_col);
    d.f1 = with_labels(t.delta1.mul(f.f1).add(-(f.f0.mul(e.delta1))), s.f1_row, s.f1_col);
  } else {
    // d f = (d1F f0 + f1 d0E, d0F f1 + f0 d1E)
    d.f0 = with_labels(t.delta1.mul(f.f0).add(f.f1.mul(e.delta0)), s.f0_row, s.f0_col);
    d.f1 = with_labels(t.delta0.mul(f.f1).add(f.f0.mul(e.delta1)), s.f1_row, s.f1_col);
  }
  return d;
}

bool is_closed(const MfMorphism& f) {
  MfMorphism d = differential_morphism(f);
  return d.f0.is_zero() && d.f1.is_zero();
}

bool morphism_blocks_equal(const MfMorphism& a, const MfMorphism& b) {
  return a.degree == b.degree && a.f0 == b.f0 && a.f1 == b.f1;
}

MatrixFactorization cone(const MfMorphism& f) {
  if (f.degree != 0) throw Error("cone: morphism must have degree 0");
  if (!is_closed(f)) throw Error("cone: morphism is not closed (df != 0)");
  const MatrixFactorization& e = f.source;
  const MatrixFactorization& t = f.target;
  if (e.twist != t.twist) throw Error("cone: twist mismatch");
  const int w2 = e.degW2();
  MatrixFactorization c;
  c.ring = e.ring;
  c.potential = e.potential;
  c.twist = e.twist;
  c.deg0 = concat(t.deg0, shifted(e.deg1, w2));
  c.deg1 = concat(t.deg1, e.deg0);
  c.delta1 = PolyMatrix::block2x2(t.delta1, f.f0,
                                  PolyMatrix::zero_block(e.ring, shifted(e.deg1, w2), t.deg1),
                                  -e.delta0);
  c.delta0 = PolyMatrix::block2x2(
      t.delta0, f.f1.shifted_labels(w2, w2),
      PolyMatrix::zero_block(e.ring, shifted(e.deg0, w2), t.deg0),
      with_labels(-e.delta1, shifted(e.deg0, w2), shifted(e.deg1, w2)));
  return c;
}

}  // namespace mfc
