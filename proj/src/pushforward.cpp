#include "mfcalc/pushforward.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mfc {

namespace {

int expo_deg2(const Ring& r, const Expo& e) { return expo_wdeg2(r, e); }

Poly image_of_monomial(const FiniteRingMap& map, const Expo& mu) {
  return Poly::monomial(map.source, mu, map.source->field.one())
      .substitute(map.target, map.images);
}

}  // namespace

FiniteRingMap make_finite_map(RingPtr source, RingPtr target, std::vector<Poly> images,
                              std::vector<Expo> basis) {
  FiniteRingMap map;
  map.source = std::move(source);
  map.target = std::move(target);
  map.images = std::move(images);
  map.basis = std::move(basis);
  const Ring& r = *map.source;
  const Ring& rp = *map.target;
  if (r.field != rp.field) throw Error("finite map: field mismatch");
  if (static_cast<int>(map.images.size()) != r.nvars())
    throw Error("finite map: need one image per source variable");
  int c = 0;
  for (int v = 0; v < r.nvars(); ++v) {
    const Poly& im = map.images[static_cast<size_t>(v)];
    auto d = im.wdeg2();
    if (d.kind != DegreeInfo::Kind::homogeneous)
      throw Error("finite map: image of " + r.vars[static_cast<size_t>(v)] +
                  " must be nonzero homogeneous");
    if (d.deg2 % r.wdeg2(v) != 0)
      throw Error("finite map: image degree of " + r.vars[static_cast<size_t>(v)] +
                  " is not a multiple of the variable degree");
    int cv = d.deg2 / r.wdeg2(v);
    if (c == 0)
      c = cv;
    else if (c != cv)
      throw Error("finite map: no single degree scale fits all images");
  }
  if (c <= 0) throw Error("finite map: degree scale must be positive");
  map.degree_scale = c;
  if (map.basis.empty()) throw Error("finite map: empty basis");
  std::set<Expo> seen;
  for (const auto& b : map.basis) {
    if (static_cast<int>(b.size()) != rp.nvars())
      throw Error("finite map: basis monomial has wrong arity");
    if (!seen.insert(b).second) throw Error("finite map: duplicate basis monomial");
  }
  // the action of every target variable on the basis must be expressible
  for (int u = 0; u < rp.nvars(); ++u)
    for (const auto& b : map.basis) {
      Expo e = b;
      e[static_cast<size_t>(u)] += 1;
      rewrite_in_basis(map, Poly::monomial(map.target, e, rp.field.one()));
    }
  return map;
}

std::vector<Poly> rewrite_in_basis(const FiniteRingMap& map, const Poly& q) {
  const Ring& r = *map.source;
  const Ring& rp = *map.target;
  const Field& k = rp.field;
  std::vector<Poly> out(map.basis.size(), Poly::zero(map.source));
  if (q.is_zero()) return out;

  for (const auto& [deg, comp] : q.homogeneous_components()) {
    // unknowns: pairs (basis index, source monomial mu)
    struct Unknown {
      int b;
      Expo mu;
    };
    std::vector<Unknown> unknowns;
    for (int bi = 0; bi < map.basis_size(); ++bi) {
      int rem = deg - expo_deg2(rp, map.basis[static_cast<size_t>(bi)]);
      if (rem < 0 || rem % map.degree_scale != 0) continue;
      for (auto& mu : monomials_of_wdeg2(r, rem / map.degree_scale))
        unknowns.push_back({bi, mu});
    }
    auto row_monos = monomials_of_wdeg2(rp, deg);
    std::map<Expo, int> row_index;
    for (int i = 0; i < static_cast<int>(row_monos.size()); ++i)
      row_index[row_monos[static_cast<size_t>(i)]] = i;
    ScalarMat a(k, static_cast<int>(row_monos.size()), static_cast<int>(unknowns.size()));
    for (int j = 0; j < static_cast<int>(unknowns.size()); ++j) {
      Poly col = image_of_monomial(map, unknowns[static_cast<size_t>(j)].mu)
                     .mul_monomial(map.basis[static_cast<size_t>(unknowns[static_cast<size_t>(j)].b)],
                                   k.one());
      for (const auto& t : col.terms()) {
        auto it = row_index.find(t.m);
        if (it == row_index.end()) throw Error("rewrite_in_basis: degree bookkeeping error");
        a.add_at(it->second, j, t.c);
      }
    }
    std::vector<Scalar> b(row_monos.size(), k.zero());
    for (const auto& t : comp.terms()) b[static_cast<size_t>(row_index.at(t.m))] = t.c;
    LinearSolution sol = solve_linear(a, b);
    if (!sol.solvable)
      throw Error("finite map: basis fails to express " + comp.str());
    if (!sol.kernel.empty())
      throw Error("finite map: basis is not free (ambiguous rewriting of " + comp.str() + ")");
    for (int j = 0; j < static_cast<int>(unknowns.size()); ++j) {
      const Scalar& cj = sol.particular[static_cast<size_t>(j)];
      if (k.is_zero(cj)) continue;
      const auto& u = unknowns[static_cast<size_t>(j)];
      out[static_cast<size_t>(u.b)] =
          out[static_cast<size_t>(u.b)] + Poly::monomial(map.source, u.mu, cj);
    }
  }
  return out;
}

namespace {

std::vector<int> pushed_twists(const FiniteRingMap& map, const std::vector<int>& taus) {
  const Ring& rp = *map.target;
  std::vector<int> out;
  out.reserve(taus.size() * map.basis.size());
  for (int tau : taus)
    for (const auto& b : map.basis) {
      int num = tau - expo_deg2(rp, b);
      if (num % map.degree_scale != 0)
        throw Error("restrict_scalars: twists do not regrade integrally (twist " +
                    std::to_string(tau) + ", basis degree " +
                    std::to_string(expo_deg2(rp, b)) + ", scale " +
                    std::to_string(map.degree_scale) + ")");
      out.push_back(num / map.degree_scale);
    }
  return out;
}

PolyMatrix pushed_matrix(const FiniteRingMap& map, const PolyMatrix& m,
                         const std::vector<int>& new_rows, const std::vector<int>& new_cols) {
  const int nb = map.basis_size();
  PolyMatrix out(map.source, new_rows, new_cols);
  for (int j = 0; j < m.cols(); ++j)
    for (int bj = 0; bj < nb; ++bj) {
      for (int i = 0; i < m.rows(); ++i) {
        const Poly& entry = m.at(i, j);
        if (entry.is_zero()) continue;
        Poly q = entry.mul_monomial(map.basis[static_cast<size_t>(bj)],
                                    map.target->field.one());
        std::vector<Poly> coeffs = rewrite_in_basis(map, q);
        for (int bi = 0; bi < nb; ++bi)
          if (!coeffs[static_cast<size_t>(bi)].is_zero())
            out.set(i * nb + bi, j * nb + bj, coeffs[static_cast<size_t>(bi)]);
      }
    }
  return out;
}

}  // namespace

MatrixFactorization restrict_scalars(const MatrixFactorization& mf, const Poly& w_source,
                                     const FiniteRingMap& map) {
  if (*mf.ring != *map.target) throw Error("restrict_scalars: mf is not over the target ring");
  if (!w_source.ring() || *w_source.ring() != *map.source)
    throw Error("restrict_scalars: source potential must live over the source ring");
  if (w_source.substitute(map.target, map.images) != mf.potential)
    throw Error("restrict_scalars: substituted potential does not match the factorization");
  if (w_source.is_zero() || !w_source.is_homogeneous())
    throw Error("restrict_scalars: source potential must be nonzero homogeneous");

  const int w2 = w_source.wdeg2().deg2;
  MatrixFactorization out;
  out.ring = map.source;
  out.potential = w_source;
  out.twist = mf.twist;
  out.deg0 = pushed_twists(map, mf.deg0);
  out.deg1 = pushed_twists(map, mf.deg1);
  out.delta1 = pushed_matrix(map, mf.delta1, out.deg0, out.deg1);
  std::vector<int> d0_rows = out.deg1;
  for (auto& d : d0_rows) d += w2;
  out.delta0 = pushed_matrix(map, mf.delta0, d0_rows, out.deg0);
  return out;
}

PushforwardCokerReport pushforward_coker_check(const MatrixFactorization& mf,
                                               const Poly& w_source, const FiniteRingMap& map,
                                               int max_deg2) {
  MatrixFactorization pushed = restrict_scalars(mf, w_source, map);
  GradedModulePresentation mp = coker_functor(pushed);
  GradedModulePresentation mo = coker_functor(mf);
  PushforwardCokerReport rep;
  int dmin = std::min(module_min_degree(mp), 0);
  for (int d = dmin; d <= max_deg2; ++d) {
    PushforwardCokerReport::Row row;
    row.deg2 = d;
    row.dim_pushforward = graded_dim(mp, d);
    row.dim_original = graded_dim(mo, d * map.degree_scale);
    if (row.dim_pushforward != row.dim_original) rep.ok = false;
    rep.rows.push_back(row);
  }
  return rep;
}

FiniteRingMap compose_maps(const FiniteRingMap& first, const FiniteRingMap& second) {
  if (*first.target != *second.source)
    throw Error("compose_maps: first.target must equal second.source");
  std::vector<Poly> images;
  for (const auto& im : first.images)
    images.push_back(im.substitute(second.target, second.images));
  // two-step restriction indexes (gen, b2) then ((gen, b2), b1), so the
  // product basis is second-major: element (b2, b1) -> image(b1) * b2
  std::vector<Expo> basis;
  for (const auto& b2 : second.basis)
    for (const auto& b1 : first.basis) {
      Poly p = Poly::monomial(first.target, b1, first.target->field.one())
                   .substitute(second.target, second.images);
      if (p.nterms() != 1 || !second.target->field.is_one(p.leading().c))
        throw Error("compose_maps: basis does not stay monomial under composition");
      Expo e = p.leading().m;
      for (size_t v = 0; v < e.size(); ++v) e[v] += b2[v];
      basis.push_back(e);
    }
  return make_finite_map(first.source, second.target, std::move(images), std::move(basis));
}

}  // namespace mfc
