#include "mfcalc/hom.hpp"

#include <algorithm>
#include <set>

namespace mfc {

namespace {

void require_compatible(const MatrixFactorization& e, const MatrixFactorization& f) {
  if (*e.ring != *f.ring) throw Error("hom: ring mismatch");
  if (e.potential != f.potential) throw Error("hom: potential mismatch");
}

int cell_required_deg(const std::vector<int>& row, const std::vector<int>& col, int r, int c,
                      int internal) {
  return row[static_cast<size_t>(r)] - col[static_cast<size_t>(c)] + internal;
}

}  // namespace

int HomPiece::index_of(int block, int row, int col, const Expo& m) const {
  auto it = index.find({block, row, col, m});
  return it == index.end() ? -1 : it->second;
}

HomPiece hom_piece(const MatrixFactorization& e, const MatrixFactorization& f, int coh_degree,
                   int internal_deg2) {
  require_compatible(e, f);
  const Ring& ring = *e.ring;
  MorphismShape s = morphism_shape(e, f, coh_degree);
  HomPiece p;
  p.coh_degree = coh_degree;
  p.internal_deg2 = internal_deg2;
  auto emit_block = [&](int block, const std::vector<int>& rd, const std::vector<int>& cd) {
    for (int r = 0; r < static_cast<int>(rd.size()); ++r)
      for (int c = 0; c < static_cast<int>(cd.size()); ++c)
        for (auto& m : monomials_of_wdeg2(ring, cell_required_deg(rd, cd, r, c, internal_deg2))) {
          p.index[{block, r, c, m}] = static_cast<int>(p.basis.size());
          p.basis.push_back({block, r, c, m});
        }
  };
  emit_block(0, s.f0_row, s.f0_col);
  emit_block(1, s.f1_row, s.f1_col);
  return p;
}

ScalarMat hom_differential(const MatrixFactorization& e, const MatrixFactorization& f,
                           const HomPiece& src, const HomPiece& dst) {
  if (dst.coh_degree != src.coh_degree + 1 || dst.internal_deg2 != src.internal_deg2)
    throw Error("hom_differential: pieces are not adjacent");
  const Field& k = e.ring->field;
  ScalarMat d(k, dst.size(), src.size());
  const bool odd = ((src.coh_degree % 2) + 2) % 2 == 1;

  auto contribute = [&](int col_idx, int block, int row, int col, const Expo& m,
                        const Poly& entry, bool negate) {
    for (const auto& t : entry.terms()) {
      Expo mm = m;
      for (size_t v = 0; v < mm.size(); ++v) mm[v] += t.m[v];
      int idx = dst.index_of(block, row, col, mm);
      if (idx < 0) throw Error("hom_differential: contribution outside the target piece");
      d.add_at(idx, col_idx, negate ? k.neg(t.c) : t.c);
    }
  };

  for (int jc = 0; jc < src.size(); ++jc) {
    const auto& el = src.basis[static_cast<size_t>(jc)];
    if (!odd) {
      // d f = (d0F f0 - f1 d0E, d1F f1 - f0 d1E)
      if (el.block == 0) {
        for (int i2 = 0; i2 < f.delta0.rows(); ++i2)
          contribute(jc, 0, i2, el.col, el.m, f.delta0.at(i2, el.row), false);
        for (int j = 0; j < e.delta1.cols(); ++j)
          contribute(jc, 1, el.row, j, el.m, e.delta1.at(el.col, j), true);
      } else {
        for (int j = 0; j < e.delta0.cols(); ++j)
          contribute(jc, 0, el.row, j, el.m, e.delta0.at(el.col, j), true);
        for (int i2 = 0; i2 < f.delta1.rows(); ++i2)
          contribute(jc, 1, i2, el.col, el.m, f.delta1.at(i2, el.row), false);
      }
    } else {
      // d f = (d1F f0 + f1 d0E, d0F f1 + f0 d1E)
      if (el.block == 0) {
        for (int i2 = 0; i2 < f.delta1.rows(); ++i2)
          contribute(jc, 0, i2, el.col, el.m, f.delta1.at(i2, el.row), false);
        for (int j = 0; j < e.delta1.cols(); ++j)
          contribute(jc, 1, el.row, j, el.m, e.delta1.at(el.col, j), false);
      } else {
        for (int j = 0; j < e.delta0.cols(); ++j)
          contribute(jc, 0, el.row, j, el.m, e.delta0.at(el.col, j), false);
        for (int i2 = 0; i2 < f.delta0.rows(); ++i2)
          contribute(jc, 1, i2, el.col, el.m, f.delta0.at(i2, el.row), false);
      }
    }
  }
  return d;
}

std::vector<HomComplexPiece> hom_complex(const MatrixFactorization& e,
                                         const MatrixFactorization& f, int lo2, int hi2) {
  std::vector<HomComplexPiece> out;
  for (int deg2 = lo2; deg2 <= hi2; ++deg2) {
    ScalarMat prev_d(e.ring->field, 0, 0);
    bool have_prev = false;
    for (int i = -1; i <= 2; ++i) {
      HomPiece cur = hom_piece(e, f, i, deg2);
      ScalarMat d(e.ring->field, 0, cur.size());
      if (i < 2) {
        HomPiece next = hom_piece(e, f, i + 1, deg2);
        d = hom_differential(e, f, cur, next);
        if (have_prev && !d.mul(prev_d).is_zero()) throw Error("hom_complex: d^2 != 0");
      }
      out.push_back({cur, d});
      prev_d = out.back().d;
      have_prev = i < 2;
    }
  }
  return out;
}

int stable_hom_dim(const MatrixFactorization& e, const MatrixFactorization& f, int parity,
                   int internal_deg2) {
  if (parity != 0 && parity != 1) throw Error("stable_hom_dim: parity must be 0 or 1");
  HomPiece below = hom_piece(e, f, parity - 1, internal_deg2);
  HomPiece at = hom_piece(e, f, parity, internal_deg2);
  HomPiece above = hom_piece(e, f, parity + 1, internal_deg2);
  ScalarMat d_in = hom_differential(e, f, below, at);
  ScalarMat d_out = hom_differential(e, f, at, above);
  return (at.size() - rank(d_out)) - rank(d_in);
}

HomWindowReport stable_hom_window(const MatrixFactorization& e, const MatrixFactorization& f,
                                  int lo2, int hi2) {
  HomWindowReport rep;
  rep.lo2 = lo2;
  rep.hi2 = hi2;
  for (int deg2 = lo2; deg2 <= hi2; ++deg2) {
    HomPiece pm1 = hom_piece(e, f, -1, deg2);
    HomPiece p0 = hom_piece(e, f, 0, deg2);
    HomPiece p1 = hom_piece(e, f, 1, deg2);
    HomPiece p2 = hom_piece(e, f, 2, deg2);
    int r_m1 = rank(hom_differential(e, f, pm1, p0));
    int r_0 = rank(hom_differential(e, f, p0, p1));
    int r_1 = rank(hom_differential(e, f, p1, p2));
    HomWindowReport::Spot s;
    s.internal_deg2 = deg2;
    s.dim_even = (p0.size() - r_0) - r_m1;
    s.dim_odd = (p1.size() - r_1) - r_0;
    rep.total_even += s.dim_even;
    rep.total_odd += s.dim_odd;
    rep.spots.push_back(s);
  }
  if (!rep.spots.empty()) {
    const auto& a = rep.spots.front();
    const auto& b = rep.spots.back();
    rep.stabilized = a.dim_even == 0 && a.dim_odd == 0 && b.dim_even == 0 && b.dim_odd == 0;
  }
  return rep;
}

std::pair<int, int> default_hom_window(const MatrixFactorization& e) {
  int w2 = e.degW2();
  return {-4 * w2, 4 * w2};
}

std::vector<int> morphism_internal_degrees(const MfMorphism& f) {
  std::set<int> degs;
  MorphismShape s = morphism_shape(f.source, f.target, f.degree);
  auto scan = [&](const PolyMatrix& m, const std::vector<int>& rd, const std::vector<int>& cd) {
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        for (const auto& t : m.at(r, c).terms())
          degs.insert(expo_wdeg2(*f.source.ring, t.m) -
                      (rd[static_cast<size_t>(r)] - cd[static_cast<size_t>(c)]));
  };
  scan(f.f0, s.f0_row, s.f0_col);
  scan(f.f1, s.f1_row, s.f1_col);
  return {degs.begin(), degs.end()};
}

std::vector<Scalar> morphism_coords(const MfMorphism& f, const HomPiece& piece) {
  if (piece.coh_degree != f.degree) throw Error("morphism_coords: degree mismatch");
  const Ring& ring = *f.source.ring;
  MorphismShape s = morphism_shape(f.source, f.target, f.degree);
  std::vector<Scalar> v(static_cast<size_t>(piece.size()), ring.field.zero());
  auto scan = [&](int block, const PolyMatrix& m, const std::vector<int>& rd,
                  const std::vector<int>& cd) {
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c)
        for (const auto& t : m.at(r, c).terms()) {
          int e = expo_wdeg2(ring, t.m) - (rd[static_cast<size_t>(r)] - cd[static_cast<size_t>(c)]);
          if (e != piece.internal_deg2) continue;
          int idx = piece.index_of(block, r, c, t.m);
          if (idx < 0) throw Error("morphism_coords: term missing from the piece basis");
          v[static_cast<size_t>(idx)] = t.c;
        }
  };
  scan(0, f.f0, s.f0_row, s.f0_col);
  scan(1, f.f1, s.f1_row, s.f1_col);
  return v;
}

MfMorphism morphism_from_coords(const MatrixFactorization& e, const MatrixFactorization& f,
                                const HomPiece& piece, const std::vector<Scalar>& coords) {
  if (static_cast<int>(coords.size()) != piece.size())
    throw Error("morphism_from_coords: coordinate count mismatch");
  MfMorphism m = zero_morphism(e, f, piece.coh_degree);
  const Field& k = e.ring->field;
  for (int i = 0; i < piece.size(); ++i) {
    if (k.is_zero(coords[static_cast<size_t>(i)])) continue;
    const auto& el = piece.basis[static_cast<size_t>(i)];
    PolyMatrix& blk = el.block == 0 ? m.f0 : m.f1;
    blk.set(el.row, el.col,
            blk.at(el.row, el.col) +
                Poly::monomial(e.ring, el.m, coords[static_cast<size_t>(i)]));
  }
  return m;
}

namespace {

MfMorphism add_morphisms(const MfMorphism& a, const MfMorphism& b) {
  MfMorphism r = a;
  r.f0 = a.f0.add(b.f0);
  r.f1 = a.f1.add(b.f1);
  return r;
}

}  // namespace

std::optional<MfMorphism> homotopy_solve(const MfMorphism& f) {
  if (!is_closed(f)) throw Error("homotopy_solve: morphism is not closed");
  MfMorphism h = zero_morphism(f.source, f.target, f.degree - 1);
  for (int e : morphism_internal_degrees(f)) {
    HomPiece below = hom_piece(f.source, f.target, f.degree - 1, e);
    HomPiece at = hom_piece(f.source, f.target, f.degree, e);
    ScalarMat d = hom_differential(f.source, f.target, below, at);
    LinearSolution sol = solve_linear(d, morphism_coords(f, at));
    if (!sol.solvable) return std::nullopt;
    h = add_morphisms(h, morphism_from_coords(f.source, f.target, below, sol.particular));
  }
  MfMorphism dh = differential_morphism(h);
  if (!morphism_blocks_equal(dh, f))
    throw Error("homotopy_solve: internal check dh = f failed");
  return h;
}

bool is_null_homotopic(const MfMorphism& f) { return homotopy_solve(f).has_value(); }

}  // namespace mfc
