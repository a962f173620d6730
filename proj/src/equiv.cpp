#include "mfcalc/equiv.hpp"

#include <algorithm>
#include <numeric>

namespace mfc {

long long GroupData::group_order() const {
  long long n = 1;
  for (int d : orders) n *= d;
  return n;
}

long long GroupData::exponent() const {
  long long e = 1;
  for (int d : orders) e = std::lcm(e, static_cast<long long>(d));
  return e;
}

CharVec GroupData::normalized(const CharVec& v) const {
  CharVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    int d = orders[i];
    r[i] = ((v[i] % d) + d) % d;
  }
  return r;
}

CharVec GroupData::add(const CharVec& a, const CharVec& b) const {
  CharVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return normalized(r);
}

CharVec GroupData::sub(const CharVec& a, const CharVec& b) const {
  CharVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return normalized(r);
}

CharVec GroupData::neg(const CharVec& a) const { return sub(zero_char(), a); }

CharVec GroupData::scale(const CharVec& a, int k) const {
  CharVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return normalized(r);
}

bool GroupData::is_zero(const CharVec& a) const {
  for (size_t i = 0; i < a.size(); ++i)
    if (((a[i] % orders[i]) + orders[i]) % orders[i] != 0) return false;
  return true;
}

CharVec GroupData::monomial_weight(const Expo& e) const {
  CharVec w = zero_char();
  for (size_t v = 0; v < e.size(); ++v)
    if (e[v] != 0) w = add(w, scale(action[v], e[v]));
  return w;
}

bool GroupData::is_semi_invariant(const Poly& p, const CharVec& want) const {
  CharVec want_n = normalized(want);
  for (const auto& t : p.terms())
    if (monomial_weight(t.m) != want_n) return false;
  return true;
}

std::vector<CharVec> GroupData::all_characters() const {
  std::vector<CharVec> out;
  CharVec cur(static_cast<size_t>(nfactors()), 0);
  for (;;) {
    out.push_back(cur);
    int i = nfactors() - 1;
    while (i >= 0) {
      if (++cur[static_cast<size_t>(i)] < orders[static_cast<size_t>(i)]) break;
      cur[static_cast<size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

std::vector<std::vector<int>> GroupData::all_elements() const { return all_characters(); }

void GroupData::validate(const Ring& ring) const {
  if (orders.empty()) throw Error("group: need at least one cyclic factor");
  for (int d : orders)
    if (d < 1) throw Error("group: cyclic orders must be >= 1");
  if (static_cast<int>(action.size()) != ring.nvars())
    throw Error("group: need one action tuple per variable");
  for (const auto& a : action)
    if (static_cast<int>(a.size()) != nfactors())
      throw Error("group: action tuples must have one entry per cyclic factor");
  if (static_cast<int>(chi.size()) != nfactors())
    throw Error("group: chi must have one entry per cyclic factor");
  long long n = group_order();
  if (ring.field.char_divides(n))
    throw Error("group: field characteristic divides |Γ| = " + std::to_string(n));
  // all characters must take values in the field
  long long e = exponent();
  if (ring.field.is_prime_field()) {
    if ((ring.field.p() - 1) % e != 0)
      throw Error("group: need p ≡ 1 (mod " + std::to_string(e) +
                  ") so characters take values in F_p");
  } else if (e > 2) {
    throw Error("group: over Q only groups of exponent <= 2 are supported");
  }
}

VerifyReport verify_equivariant(const EquivariantMF& emf) {
  VerifyReport rep = verify(emf.base);
  if (!rep.ok) return rep;
  const GroupData& g = emf.group;
  g.validate(*emf.base.ring);
  if (static_cast<int>(emf.w0.size()) != emf.base.rank0() ||
      static_cast<int>(emf.w1.size()) != emf.base.rank1()) {
    rep.add("generator weight lists do not match ranks");
    return rep;
  }
  if (!g.is_semi_invariant(emf.base.potential, g.chi))
    rep.add("W is not chi-semi-invariant");
  for (int i = 0; i < emf.base.rank0(); ++i)
    for (int j = 0; j < emf.base.rank1(); ++j) {
      CharVec want = g.sub(emf.w1[static_cast<size_t>(j)], emf.w0[static_cast<size_t>(i)]);
      if (!g.is_semi_invariant(emf.base.delta1.at(i, j), want))
        rep.add("delta1 entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                ") is not Γ-invariant for the generator weights");
    }
  for (int i = 0; i < emf.base.rank1(); ++i)
    for (int j = 0; j < emf.base.rank0(); ++j) {
      CharVec want = g.add(g.sub(emf.w0[static_cast<size_t>(j)], emf.w1[static_cast<size_t>(i)]),
                           g.chi);
      if (!g.is_semi_invariant(emf.base.delta0.at(i, j), want))
        rep.add("delta0 entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                ") does not land in E1 ⊗ chi for the generator weights");
    }
  return rep;
}

EquivariantMF equivariant_shift(const EquivariantMF& emf) {
  EquivariantMF r;
  r.base = shift(emf.base);
  r.group = emf.group;
  r.w0.reserve(emf.w1.size());
  for (const auto& w : emf.w1) r.w0.push_back(emf.group.sub(w, emf.group.chi));
  r.w1 = emf.w0;
  return r;
}

EquivariantMF equivariant_direct_sum(const EquivariantMF& a, const EquivariantMF& b) {
  EquivariantMF r;
  r.base = direct_sum(a.base, b.base);
  r.group = a.group;
  r.w0 = a.w0;
  r.w0.insert(r.w0.end(), b.w0.begin(), b.w0.end());
  r.w1 = a.w1;
  r.w1.insert(r.w1.end(), b.w1.begin(), b.w1.end());
  return r;
}

EquivariantMF equivariant_twist(const EquivariantMF& emf, const CharVec& psi) {
  EquivariantMF r = emf;
  for (auto& w : r.w0) w = emf.group.add(w, psi);
  for (auto& w : r.w1) w = emf.group.add(w, psi);
  return r;
}

EquivariantMF equivariant_cone(const EquivariantMF& e, const EquivariantMF& f,
                               const MfMorphism& g) {
  EquivariantMF r;
  r.base = cone(g);
  r.group = e.group;
  EquivariantMF es = equivariant_shift(e);
  r.w0 = f.w0;
  r.w0.insert(r.w0.end(), es.w0.begin(), es.w0.end());
  r.w1 = f.w1;
  r.w1.insert(r.w1.end(), es.w1.begin(), es.w1.end());
  return r;
}

namespace {

int floor_div2(int i) { return (i >= 0) ? i / 2 : -((-i + 1) / 2); }

}  // namespace

CharVec hom_elem_weight(const EquivariantMF& e, const EquivariantMF& f, const HomPiece& piece,
                        const HomPiece::Elem& el) {
  const GroupData& g = e.group;
  const bool odd = ((piece.coh_degree % 2) + 2) % 2 == 1;
  const int n = floor_div2(piece.coh_degree);
  // invariance requires wt(m) = wt(source gen) - wt(target gen) + k chi
  CharVec src, tgt;
  int k;
  if (!odd) {
    if (el.block == 0) {
      src = e.w0[static_cast<size_t>(el.col)];
      tgt = f.w0[static_cast<size_t>(el.row)];
    } else {
      src = e.w1[static_cast<size_t>(el.col)];
      tgt = f.w1[static_cast<size_t>(el.row)];
    }
    k = n;
  } else {
    if (el.block == 0) {
      src = e.w0[static_cast<size_t>(el.col)];
      tgt = f.w1[static_cast<size_t>(el.row)];
      k = n + 1;
    } else {
      src = e.w1[static_cast<size_t>(el.col)];
      tgt = f.w0[static_cast<size_t>(el.row)];
      k = n;
    }
  }
  CharVec want = g.add(g.sub(src, tgt), g.scale(g.chi, k));
  return g.sub(g.monomial_weight(el.m), want);
}

namespace {

std::vector<int> invariant_indices(const EquivariantMF& e, const EquivariantMF& f,
                                   const HomPiece& piece) {
  std::vector<int> keep;
  for (int i = 0; i < piece.size(); ++i)
    if (e.group.is_zero(hom_elem_weight(e, f, piece, piece.basis[static_cast<size_t>(i)])))
      keep.push_back(i);
  return keep;
}

ScalarMat select(const ScalarMat& m, const std::vector<int>& rows,
                 const std::vector<int>& cols) {
  ScalarMat r(m.field(), static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j)
      r.set(static_cast<int>(i), static_cast<int>(j), m.at(rows[i], cols[j]));
  return r;
}

/// Scalar by which the group element gamma acts on an elementary basis
/// element, via the diagonal action on monomials and generators.
Scalar elem_action(const EquivariantMF& e, const EquivariantMF& f, const HomPiece& piece,
                   const HomPiece::Elem& el, const std::vector<int>& gamma,
                   const std::vector<Scalar>& zetas) {
  const Field& k = e.base.ring->field;
  CharVec w = hom_elem_weight(e, f, piece, el);
  Scalar s = k.one();
  for (size_t i = 0; i < w.size(); ++i) {
    long long expo = static_cast<long long>(w[i]) * gamma[i];
    long long d = e.group.orders[i];
    s = k.mul(s, k.pow(zetas[i], expo % d));
  }
  return s;
}

ScalarMat averaging_matrix(const EquivariantMF& e, const EquivariantMF& f,
                           const HomPiece& piece) {
  const Field& k = e.base.ring->field;
  std::vector<Scalar> zetas;
  for (int d : e.group.orders) zetas.push_back(k.root_of_unity(d));
  ScalarMat p(k, piece.size(), piece.size());
  Scalar inv_order = k.inv(k.from_int(e.group.group_order()));
  for (const auto& gamma : e.group.all_elements())
    for (int i = 0; i < piece.size(); ++i)
      p.add_at(i, i, elem_action(e, f, piece, piece.basis[static_cast<size_t>(i)], gamma, zetas));
  for (int i = 0; i < piece.size(); ++i)
    for (int j = 0; j < piece.size(); ++j) p.set(i, j, k.mul(p.at(i, j), inv_order));
  return p;
}

void require_equiv_pair(const EquivariantMF& e, const EquivariantMF& f) {
  if (e.group.orders != f.group.orders || e.group.chi != f.group.chi ||
      e.group.action != f.group.action)
    throw Error("equivariant hom: group data mismatch");
}

}  // namespace

int equivariant_hom_dim(const EquivariantMF& e, const EquivariantMF& f, int parity,
                        int chi_power, int internal_deg2) {
  require_equiv_pair(e, f);
  const int i = 2 * chi_power + parity;
  HomPiece below = hom_piece(e.base, f.base, i - 1, internal_deg2);
  HomPiece at = hom_piece(e.base, f.base, i, internal_deg2);
  HomPiece above = hom_piece(e.base, f.base, i + 1, internal_deg2);
  std::vector<int> kb = invariant_indices(e, f, below);
  std::vector<int> ka = invariant_indices(e, f, at);
  std::vector<int> kv = invariant_indices(e, f, above);
  ScalarMat d_in = select(hom_differential(e.base, f.base, below, at), ka, kb);
  ScalarMat d_out = select(hom_differential(e.base, f.base, at, above), kv, ka);
  return (static_cast<int>(ka.size()) - rank(d_out)) - rank(d_in);
}

int equivariant_hom_dim_averaging(const EquivariantMF& e, const EquivariantMF& f, int parity,
                                  int chi_power, int internal_deg2) {
  require_equiv_pair(e, f);
  const int i = 2 * chi_power + parity;
  HomPiece below = hom_piece(e.base, f.base, i - 1, internal_deg2);
  HomPiece at = hom_piece(e.base, f.base, i, internal_deg2);
  HomPiece above = hom_piece(e.base, f.base, i + 1, internal_deg2);
  ScalarMat p_below = averaging_matrix(e, f, below);
  ScalarMat p_at = averaging_matrix(e, f, at);
  ScalarMat d_in = hom_differential(e.base, f.base, below, at);
  ScalarMat d_out = hom_differential(e.base, f.base, at, above);
  // homology of the projected complex: P commutes with d
  int dim_inv = rank(p_at);
  int r_out = rank(d_out.mul(p_at));
  int r_in = rank(d_in.mul(p_below));
  return (dim_inv - r_out) - r_in;
}

AveragingCheck averaging_operator_check(const EquivariantMF& e, const EquivariantMF& f,
                                        int coh_degree, int internal_deg2) {
  AveragingCheck chk;
  HomPiece at = hom_piece(e.base, f.base, coh_degree, internal_deg2);
  HomPiece above = hom_piece(e.base, f.base, coh_degree + 1, internal_deg2);
  ScalarMat p = averaging_matrix(e, f, at);
  ScalarMat q = averaging_matrix(e, f, above);
  ScalarMat d = hom_differential(e.base, f.base, at, above);
  chk.idempotent = p.mul(p) == p;
  chk.commutes = d.mul(p) == q.mul(d);
  return chk;
}

void GroupHom::validate() const {
  if (static_cast<int>(images.size()) != source.nfactors())
    throw Error("group hom: need one image per source factor generator");
  for (int i = 0; i < source.nfactors(); ++i) {
    const auto& im = images[static_cast<size_t>(i)];
    if (static_cast<int>(im.size()) != target.nfactors())
      throw Error("group hom: image tuples must match the target factor count");
    // order of the source generator must kill the image
    for (int j = 0; j < target.nfactors(); ++j) {
      long long v = static_cast<long long>(source.orders[static_cast<size_t>(i)]) *
                    im[static_cast<size_t>(j)];
      if (v % target.orders[static_cast<size_t>(j)] != 0)
        throw Error("group hom: image of generator " + std::to_string(i + 1) +
                    " is not killed by its order");
    }
  }
}

CharVec GroupHom::pull_character(const CharVec& chi) const {
  // (chi ∘ pi)_i with zeta_N bookkeeping; integrality follows from validate()
  long long n = 1;
  for (int d : source.orders) n = std::lcm(n, static_cast<long long>(d));
  for (int d : target.orders) n = std::lcm(n, static_cast<long long>(d));
  CharVec out(static_cast<size_t>(source.nfactors()), 0);
  for (int i = 0; i < source.nfactors(); ++i) {
    long long acc = 0;
    for (int j = 0; j < target.nfactors(); ++j)
      acc += static_cast<long long>(chi[static_cast<size_t>(j)]) *
             images[static_cast<size_t>(i)][static_cast<size_t>(j)] *
             (n / target.orders[static_cast<size_t>(j)]);
    long long di = source.orders[static_cast<size_t>(i)];
    long long s = (acc % n) * di;
    if (s % n != 0) throw Error("group hom: character does not pull back integrally");
    out[static_cast<size_t>(i)] = static_cast<int>(((s / n) % di + di) % di);
  }
  return out;
}

EquivariantMF equivariant_pullback(const EquivariantMF& emf, const RingPtr& target_ring,
                                   const std::vector<Poly>& images, const GroupHom& pi) {
  pi.validate();
  pi.source.validate(*target_ring);  // pi.source carries the Γ' action on the target ring
  // substitution must intertwine the actions through pi
  const Ring& src = *emf.base.ring;
  for (int v = 0; v < src.nvars(); ++v) {
    CharVec want = pi.pull_character(emf.group.action[static_cast<size_t>(v)]);
    if (!pi.source.is_semi_invariant(images[static_cast<size_t>(v)], want))
      throw Error("equivariant_pullback: image of " + src.vars[static_cast<size_t>(v)] +
                  " does not intertwine the group actions");
  }
  EquivariantMF r;
  r.base = pullback(emf.base, target_ring, images);
  r.group = pi.source;
  r.group.chi = pi.pull_character(emf.group.chi);
  for (const auto& w : emf.w0) r.w0.push_back(pi.pull_character(w));
  for (const auto& w : emf.w1) r.w1.push_back(pi.pull_character(w));
  r.group.validate(*target_ring);
  return r;
}

CorrespondenceReport quotient_correspondence_check(const EquivariantMF& e,
                                                   const EquivariantMF& f, int lo2, int hi2) {
  CorrespondenceReport rep;
  for (int parity = 0; parity <= 1; ++parity)
    for (int d = lo2; d <= hi2; ++d) {
      int a = equivariant_hom_dim(e, f, parity, 0, d);
      int b = equivariant_hom_dim_averaging(e, f, parity, 0, d);
      if (a != b) rep.failures.push_back({parity, 0, d, a, b});
    }
  return rep;
}

}  // namespace mfc
