#include "mfcalc/sing.hpp"

#include <algorithm>
#include <map>

namespace mfc {

namespace {

std::vector<int> shifted(std::vector<int> v, int s) {
  for (auto& d : v) d += s;
  return v;
}

/// Multiplication by W as a map T ⊗ L^{-1} -> T on the ambient free module.
PolyMatrix w_mult_matrix(const Poly& w, const std::vector<int>& twists) {
  int w2 = w.wdeg2().deg2;
  return PolyMatrix::diagonal(w, twists, shifted(twists, -w2));
}

/// Coordinates of the polynomial column (one Poly per ambient generator) in
/// the degree-d basis of the ambient module.
std::vector<Scalar> column_coords(const Ring& ring, const GradedBasis& basis,
                                  const std::vector<Poly>& col) {
  std::vector<Scalar> v(static_cast<size_t>(basis.size()), ring.field.zero());
  for (int g = 0; g < static_cast<int>(col.size()); ++g)
    for (const auto& t : col[static_cast<size_t>(g)].terms()) {
      int idx = basis.index_of(g, t.m);
      if (idx < 0) throw Error("column_coords: term outside the graded piece");
      v[static_cast<size_t>(idx)] = t.c;
    }
  return v;
}

ScalarMat column_matrix(const Field& f, const std::vector<std::vector<Scalar>>& cols, int rows) {
  ScalarMat m(f, rows, static_cast<int>(cols.size()));
  for (int j = 0; j < static_cast<int>(cols.size()); ++j)
    for (int i = 0; i < rows; ++i) m.set(i, j, cols[static_cast<size_t>(j)][static_cast<size_t>(i)]);
  return m;
}

}  // namespace

GradedModulePresentation coker_functor(const MatrixFactorization& mf) {
  require_verified(mf, "coker_functor");
  GradedModulePresentation m;
  m.ring = mf.ring;
  m.potential = mf.potential;
  m.gen_deg = mf.deg0;
  m.relations = mf.delta1.reduced_mod(mf.potential);
  return m;
}

int graded_dim(const GradedModulePresentation& m, int deg2) {
  GradedBasis b = module_piece_basis_mod(*m.ring, m.gen_deg, deg2, m.potential);
  if (b.size() == 0) return 0;
  return b.size() - rank(matrix_piece(m.relations, deg2, &m.potential));
}

int module_min_degree(const GradedModulePresentation& m) {
  return min_module_degree(m.gen_deg);
}

std::vector<int> hilbert_function(const GradedModulePresentation& m, int lo2, int hi2) {
  std::vector<int> h;
  for (int d = lo2; d <= hi2; ++d) h.push_back(graded_dim(m, d));
  return h;
}

bool potential_annihilates(const GradedModulePresentation& m, int max_deg2) {
  for (int d = module_min_degree(m); d <= max_deg2; ++d) {
    GradedBasis b = module_piece_basis_mod(*m.ring, m.gen_deg, d, m.potential);
    for (const auto& el : b.elems) {
      Poly prod = m.potential.mul_monomial(el.m, m.ring->field.one());
      if (!normal_form_mod(prod, m.potential).is_zero()) return false;
    }
  }
  return true;
}

TwoPeriodicComplex two_periodic_complex(const MatrixFactorization& mf, int length) {
  require_verified(mf, "two_periodic_complex");
  const int w2 = mf.degW2();
  PolyMatrix d1bar = mf.delta1.reduced_mod(mf.potential);
  PolyMatrix d0bar = mf.delta0.reduced_mod(mf.potential);
  TwoPeriodicComplex com;
  com.first_position = -length;
  for (int p = -length; p < length; ++p) {
    if (((p % 2) + 2) % 2 == 0) {
      int s = (p / 2) * w2;
      com.maps.push_back(d0bar.shifted_labels(s, s));
    } else {
      int s = ((p + 1) / 2) * w2;
      com.maps.push_back(d1bar.shifted_labels(s, s));
    }
  }
  return com;
}

ExactnessReport check_exactness(const MatrixFactorization& mf, int max_deg2,
                                std::vector<int> positions) {
  require_verified(mf, "check_exactness");
  const int w2 = mf.degW2();
  const Poly& w = mf.potential;
  PolyMatrix d1bar = mf.delta1.reduced_mod(w);
  PolyMatrix d0bar = mf.delta0.reduced_mod(w);

  std::map<int, int> rank1_cache, rank0_cache, dim0_cache, dim1_cache;
  auto r1 = [&](int d) {
    auto it = rank1_cache.find(d);
    if (it != rank1_cache.end()) return it->second;
    return rank1_cache[d] = rank(matrix_piece(d1bar, d, &w));
  };
  auto r0 = [&](int d) {
    auto it = rank0_cache.find(d);
    if (it != rank0_cache.end()) return it->second;
    return rank0_cache[d] = rank(matrix_piece(d0bar, d, &w));
  };
  auto dim0 = [&](int d) {
    auto it = dim0_cache.find(d);
    if (it != dim0_cache.end()) return it->second;
    return dim0_cache[d] = module_piece_basis_mod(*mf.ring, mf.deg0, d, w).size();
  };
  auto dim1 = [&](int d) {
    auto it = dim1_cache.find(d);
    if (it != dim1_cache.end()) return it->second;
    return dim1_cache[d] = module_piece_basis_mod(*mf.ring, mf.deg1, d, w).size();
  };

  ExactnessReport rep;
  rep.max_deg2 = max_deg2;
  rep.positions = positions;
  for (int p : positions) {
    const bool even = ((p % 2) + 2) % 2 == 0;
    // com is 2-periodic up to the deg-W label shift, so the defect at
    // position p and degree d only depends on the base position and d'.
    const int s = even ? (p / 2) * w2 : ((p + 1) / 2) * w2;
    const int dmin = (even ? min_module_degree(mf.deg0) : min_module_degree(mf.deg1)) - s;
    for (int d = dmin; d <= max_deg2; ++d) {
      const int dp = d + s;
      int defect = even ? dim0(dp) - r0(dp) - r1(dp) : dim1(dp) - r1(dp) - r0(dp - w2);
      if (defect != 0) rep.defects.push_back({p, d, defect});
    }
  }
  return rep;
}

namespace {

int free_piece_dim(const GradedModulePresentation& m, int d) {
  return module_piece_basis_mod(*m.ring, m.gen_deg, d, m.potential).size();
}

int rel_rank(const GradedModulePresentation& m, int d) {
  if (m.relations.cols() == 0) return 0;
  return rank(matrix_piece(m.relations, d, &m.potential));
}

/// Rank of the map induced on degree-d pieces by a matrix between the free
/// covers of two presentations.
int induced_rank(const PolyMatrix& g, const GradedModulePresentation& dst, int d) {
  ScalarMat gd = matrix_piece(g, d, &dst.potential);
  if (dst.relations.cols() == 0) return rank(gd);
  ScalarMat qd = matrix_piece(dst.relations, d, &dst.potential);
  return rank(hconcat(gd, qd)) - rank(qd);
}

}  // namespace

ConnectingReport connecting_sequence_check(const MatrixFactorization& mf, int max_deg2) {
  require_verified(mf, "connecting_sequence_check");
  const int w2 = mf.degW2();
  const Poly& w = mf.potential;

  GradedModulePresentation a = coker_functor(mf);
  GradedModulePresentation b;  // (E1 ⊗ L)|X0, free
  b.ring = mf.ring;
  b.potential = w;
  b.gen_deg = shifted(mf.deg1, w2);
  b.relations = PolyMatrix(mf.ring, b.gen_deg, {});
  GradedModulePresentation c;  // ℭ(mf[1])
  c.ring = mf.ring;
  c.potential = w;
  c.gen_deg = b.gen_deg;
  c.relations = mf.delta0.reduced_mod(w);

  PolyMatrix g = mf.delta0.reduced_mod(w);               // A -> B, induced by delta0
  PolyMatrix h = PolyMatrix::identity(mf.ring, b.gen_deg);  // B -> C, the projection

  ConnectingReport rep;
  rep.max_deg2 = max_deg2;
  int dmin = std::min(module_min_degree(a), min_module_degree(b.gen_deg));
  for (int d = dmin; d <= max_deg2; ++d) {
    int dim_a = free_piece_dim(a, d) - rel_rank(a, d);
    int dim_b = free_piece_dim(b, d);
    int dim_c = free_piece_dim(c, d) - rel_rank(c, d);
    int rank_g = induced_rank(g, b, d);
    int rank_h = induced_rank(h, c, d);
    if (rank_g != dim_a)
      rep.failures.push_back({d, "left: ℭ(mf) -> (E1⊗L)|X0 not injective"});
    if (dim_b - rank_h != rank_g)
      rep.failures.push_back({d, "middle: ker != im"});
    if (rank_h != dim_c)
      rep.failures.push_back({d, "right: (E1⊗L)|X0 -> ℭ(mf[1]) not surjective"});
  }
  return rep;
}

int default_stabilize_bound(const GradedModulePresentation& m) {
  int w2 = m.potential.wdeg2().deg2;
  int maxgen = 0;
  for (int t : m.gen_deg) maxgen = std::max(maxgen, -t);
  return 3 * maxgen + 3 * w2;
}

StabilizeResult stabilize(const GradedModulePresentation& m, int degree_bound2) {
  StabilizeResult res;
  res.bound2 = degree_bound2;
  const RingPtr& ring = m.ring;
  const Ring& r = *ring;
  const Poly& w = m.potential;
  const int w2 = w.wdeg2().deg2;

  if (!potential_annihilates(m, std::min(degree_bound2, module_min_degree(m) + 2 * w2))) {
    res.error = "module is not annihilated by W";
    return res;
  }

  const std::vector<int>& tau = m.gen_deg;
  PolyMatrix wmul = w_mult_matrix(w, tau);

  auto u_span = [&](int d) {
    // relation image plus W * (ambient piece one twist down)
    return hconcat(matrix_piece(m.relations, d, nullptr), matrix_piece(wmul, d, nullptr));
  };

  // Phase 1: minimal homogeneous generators of M, greedily by degree with
  // ties broken by the ambient basis order.
  struct Gen {
    int deg;
    std::vector<Poly> col;  // element of the ambient module
  };
  std::vector<Gen> gens;
  auto gen_matrix = [&]() {
    std::vector<int> cd;
    for (const auto& g : gens) cd.push_back(-g.deg);
    PolyMatrix gm(ring, tau, cd);
    for (int j = 0; j < static_cast<int>(gens.size()); ++j)
      for (int i = 0; i < static_cast<int>(tau.size()); ++i)
        gm.set(i, j, gens[static_cast<size_t>(j)].col[static_cast<size_t>(i)]);
    return gm;
  };

  int maxtgen = 0;
  for (int t : tau) maxtgen = std::max(maxtgen, -t);
  for (int d = min_module_degree(tau); d <= maxtgen; ++d) {
    GradedBasis td = module_piece_basis(r, tau, d);
    if (td.size() == 0) continue;
    ScalarMat ud = u_span(d);
    int ru = rank(ud);
    int dim_m = td.size() - ru;
    if (dim_m <= 0) continue;
    ScalarMat span = hconcat(ud, matrix_piece(gen_matrix(), d, nullptr));
    int have = rank(span) - ru;
    for (int k = 0; k < td.size() && have < dim_m; ++k) {
      ScalarMat cand(r.field, td.size(), 1);
      cand.set(k, 0, r.field.one());
      ScalarMat trial = hconcat(span, cand);
      if (rank(trial) > rank(span)) {
        const auto& el = td.elems[static_cast<size_t>(k)];
        Gen g;
        g.deg = d;
        g.col.assign(tau.size(), Poly::zero(ring));
        g.col[static_cast<size_t>(el.gen)] = Poly::monomial(ring, el.m, r.field.one());
        gens.push_back(std::move(g));
        span = trial;
        ++have;
      }
    }
  }

  PolyMatrix lift = gen_matrix();  // F0 -> ambient, columns = generators
  std::vector<int> f0_deg;
  for (const auto& g : gens) f0_deg.push_back(-g.deg);

  // Phase 2: the kernel K of F0 ->> M degree by degree; minimal generators
  // and the bound-relative freeness certificate.
  struct KGen {
    int deg;
    std::vector<Poly> col;  // element of F0
  };
  std::vector<KGen> kgens;
  auto kgen_matrix = [&]() {
    std::vector<int> cd;
    for (const auto& g : kgens) cd.push_back(-g.deg);
    PolyMatrix km(ring, f0_deg, cd);
    for (int j = 0; j < static_cast<int>(kgens.size()); ++j)
      for (int i = 0; i < static_cast<int>(f0_deg.size()); ++i)
        km.set(i, j, kgens[static_cast<size_t>(j)].col[static_cast<size_t>(i)]);
    return km;
  };

  if (!gens.empty()) {
    for (int d = min_module_degree(f0_deg); d <= degree_bound2; ++d) {
      GradedBasis f0d = module_piece_basis(r, f0_deg, d);
      if (f0d.size() == 0) continue;
      ScalarMat ud = u_span(d);
      ScalarMat phid = matrix_piece(lift, d, nullptr);
      ScalarMat aug = hconcat(phid, ud);
      int dim_k = f0d.size() - (rank(aug) - rank(ud));
      PolyMatrix km = kgen_matrix();
      ScalarMat span = matrix_piece(km, d, nullptr);
      int rs = rank(span);
      if (rs < dim_k) {
        auto ker = kernel_basis(aug);
        std::vector<std::vector<Scalar>> cands;
        for (const auto& v : ker)
          cands.emplace_back(v.begin(), v.begin() + f0d.size());
        ScalarMat cur = span;
        for (const auto& cand : cands) {
          if (rs >= dim_k) break;
          ScalarMat trial = hconcat(cur, column_matrix(r.field, {cand}, f0d.size()));
          if (rank(trial) > rs) {
            KGen g;
            g.deg = d;
            g.col.assign(f0_deg.size(), Poly::zero(ring));
            for (int i = 0; i < f0d.size(); ++i) {
              if (r.field.is_zero(cand[static_cast<size_t>(i)])) continue;
              const auto& el = f0d.elems[static_cast<size_t>(i)];
              g.col[static_cast<size_t>(el.gen)] =
                  g.col[static_cast<size_t>(el.gen)] +
                  Poly::monomial(ring, el.m, cand[static_cast<size_t>(i)]);
            }
            kgens.push_back(std::move(g));
            cur = trial;
            ++rs;
          }
        }
      }
      long long free_count = 0;
      for (const auto& g : kgens) free_count += count_monomials_of_wdeg2(r, d - g.deg);
      if (rs != dim_k || free_count != dim_k) {
        res.error = "not MCM at this bound: kernel Hilbert mismatch at degree " +
                    std::to_string(d) + " (kernel dim " + std::to_string(dim_k) +
                    ", free model " + std::to_string(free_count) + ")";
        return res;
      }
    }
  }

  std::vector<int> f1_deg;
  for (const auto& g : kgens) f1_deg.push_back(-g.deg);
  PolyMatrix delta1 = kgen_matrix();  // rows f0_deg, cols f1_deg

  // Phase 3: solve delta0 from W id factoring through delta1; unique since
  // delta1 is injective on the certified range.
  PolyMatrix delta0(ring, shifted(f1_deg, w2), f0_deg);
  PolyMatrix km = kgen_matrix();
  for (int k = 0; k < static_cast<int>(gens.size()); ++k) {
    int dtarget = gens[static_cast<size_t>(k)].deg + w2;
    if (dtarget > degree_bound2) {
      res.error = "degree bound too small to solve delta0 (need " + std::to_string(dtarget) +
                  ")";
      return res;
    }
    GradedBasis f0d = module_piece_basis(r, f0_deg, dtarget);
    GradedBasis f1d = module_piece_basis(r, f1_deg, dtarget);
    ScalarMat span = matrix_piece(km, dtarget, nullptr);
    std::vector<Poly> rhs_col(f0_deg.size(), Poly::zero(ring));
    rhs_col[static_cast<size_t>(k)] = w;
    LinearSolution sol = solve_linear(span, column_coords(r, f0d, rhs_col));
    if (!sol.solvable) {
      res.error = "not MCM at this bound: W e_" + std::to_string(k + 1) +
                  " is not in the span of the kernel generators";
      return res;
    }
    for (int idx = 0; idx < f1d.size(); ++idx) {
      if (r.field.is_zero(sol.particular[static_cast<size_t>(idx)])) continue;
      const auto& el = f1d.elems[static_cast<size_t>(idx)];
      delta0.set(el.gen, k,
                 delta0.at(el.gen, k) + Poly::monomial(ring, el.m,
                                                       sol.particular[static_cast<size_t>(idx)]));
    }
  }

  MatrixFactorization mf = make_mf(ring, w, f0_deg, f1_deg, delta1, delta0);
  VerifyReport vr = verify(mf);
  if (!vr.ok) {
    res.error = "stabilize produced an invalid factorization: " + vr.violations.front();
    return res;
  }
  res.ok = true;
  res.mf = std::move(mf);
  res.generator_lift = lift;
  return res;
}

RoundtripReport cokernel_roundtrip_check(const MatrixFactorization& mf, int degree_bound2,
                                         int window_lo2, int window_hi2) {
  RoundtripReport rep;
  GradedModulePresentation m = coker_functor(mf);
  int bound = degree_bound2 > 0 ? degree_bound2 : default_stabilize_bound(m);
  rep.bound2 = bound;
  const int w2 = mf.degW2();
  if (window_lo2 > window_hi2) {
    window_lo2 = -2 * w2;
    window_hi2 = 2 * w2;
  }
  rep.window_lo2 = window_lo2;
  rep.window_hi2 = window_hi2;

  StabilizeResult st = stabilize(m, bound);
  if (!st.ok) {
    rep.failures.push_back("stabilize failed: " + st.error);
    return rep;
  }
  rep.stabilized = st.mf;
  const MatrixFactorization& sm = st.mf;
  const Ring& r = *mf.ring;

  // comparison morphism g = (g0, g1): g0 is the generator lift, g1 solves
  // delta1 g1 = g0 delta1'.
  PolyMatrix g0 = st.generator_lift;  // rows mf.deg0, cols sm.deg0
  PolyMatrix rhs = g0.mul(sm.delta1);
  PolyMatrix g1(mf.ring, mf.deg1, sm.deg1);
  bool g_ok = true;
  for (int j = 0; j < sm.rank1() && g_ok; ++j) {
    int dcol = -sm.deg1[static_cast<size_t>(j)];
    GradedBasis src = module_piece_basis(r, mf.deg1, dcol);
    GradedBasis dst = module_piece_basis(r, mf.deg0, dcol);
    ScalarMat d1p = matrix_piece(mf.delta1, dcol, nullptr);
    std::vector<Poly> rhs_col;
    for (int i = 0; i < mf.rank0(); ++i) rhs_col.push_back(rhs.at(i, j));
    LinearSolution sol = solve_linear(d1p, column_coords(r, dst, rhs_col));
    if (!sol.solvable) {
      rep.failures.push_back("no g1 with delta1 g1 = g0 delta1' at column " +
                             std::to_string(j + 1));
      g_ok = false;
      break;
    }
    for (int idx = 0; idx < src.size(); ++idx) {
      if (r.field.is_zero(sol.particular[static_cast<size_t>(idx)])) continue;
      const auto& el = src.elems[static_cast<size_t>(idx)];
      g1.set(el.gen, j,
             g1.at(el.gen, j) +
                 Poly::monomial(mf.ring, el.m, sol.particular[static_cast<size_t>(idx)]));
    }
  }

  if (g_ok) {
    MfMorphism g = zero_morphism(sm, mf, 0);
    g.f0 = g0;
    g.f1 = g1;
    if (!is_closed(g)) {
      rep.failures.push_back("comparison morphism is not closed");
    } else {
      rep.comparison = g;
      // ℭ(g) bijective on graded pieces up to the bound
      GradedModulePresentation msm = coker_functor(sm);
      int dmin = std::min(module_min_degree(msm), module_min_degree(m));
      for (int d = dmin; d <= bound; ++d) {
        int dims = graded_dim(msm, d);
        int dimm = graded_dim(m, d);
        int rk = induced_rank(g0, m, d);
        if (dims != dimm || rk != dimm) {
          rep.failures.push_back("ℭ(g) not bijective in degree " + std::to_string(d) +
                                 " (dims " + std::to_string(dims) + " vs " +
                                 std::to_string(dimm) + ", rank " + std::to_string(rk) + ")");
          break;
        }
      }
    }
  }

  // stable Hom dims against the test family {mf} on the window, both orders
  HomWindowReport base = stable_hom_window(mf, mf, window_lo2, window_hi2);
  HomWindowReport fwd = stable_hom_window(mf, sm, window_lo2, window_hi2);
  HomWindowReport rev = stable_hom_window(sm, mf, window_lo2, window_hi2);
  for (size_t i = 0; i < base.spots.size(); ++i) {
    const auto& b = base.spots[i];
    const auto& f = fwd.spots[i];
    const auto& v = rev.spots[i];
    if (b.dim_even != f.dim_even || b.dim_odd != f.dim_odd || b.dim_even != v.dim_even ||
        b.dim_odd != v.dim_odd) {
      rep.failures.push_back("stable Hom dims disagree at internal degree " +
                             std::to_string(b.internal_deg2));
      break;
    }
  }

  rep.ok = rep.failures.empty();
  return rep;
}

}  // namespace mfc
