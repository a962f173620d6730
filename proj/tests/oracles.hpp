// Test-only helpers and independent oracles. The stable-Hom oracle here
// enumerates morphism coefficients itself and builds the closedness/boundary
// systems through plain matrix products, independent of the HomPiece engine.
#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "mfcalc/hom.hpp"
#include "mfcalc/mf.hpp"
#include "mfcalc/rng.hpp"

namespace mfctest {

using namespace mfc;

inline RingPtr ring_f(std::int64_t p, std::vector<std::string> vars, std::vector<int> weights) {
  return make_ring(Field::prime(p), std::move(vars), std::move(weights));
}

inline RingPtr ring_q(std::vector<std::string> vars, std::vector<int> weights) {
  return make_ring(Field::rationals(), std::move(vars), std::move(weights));
}

inline Poly P(const RingPtr& r, const std::string& s) { return parse_poly(r, s); }

/// Independent brute-force stable Hom dimension: dim ker(d at degree i) minus
/// dim im(d from degree i-1), with the differential evaluated by applying
/// differential_morphism to one unknown coefficient at a time.
class HomOracle {
 public:
  HomOracle(const MatrixFactorization& e, const MatrixFactorization& f) : e_(e), f_(f) {}

  int dim(int coh_degree, int internal_deg2) const {
    auto unknowns_at = enumerate(coh_degree, internal_deg2);
    auto unknowns_below = enumerate(coh_degree - 1, internal_deg2);
    int r_at = rank_of_differential(coh_degree, internal_deg2, unknowns_at);
    int r_below = rank_of_differential(coh_degree - 1, internal_deg2, unknowns_below);
    return (static_cast<int>(unknowns_at.size()) - r_at) - r_below;
  }

  long long total(int coh_degree, int lo2, int hi2) const {
    long long t = 0;
    for (int d = lo2; d <= hi2; ++d) t += dim(coh_degree, d);
    return t;
  }

 private:
  struct Unknown {
    int block, row, col;
    Expo m;
  };

  std::vector<Unknown> enumerate(int coh_degree, int internal_deg2) const {
    MorphismShape s = morphism_shape(e_, f_, coh_degree);
    std::vector<Unknown> out;
    auto emit = [&](int block, const std::vector<int>& rd, const std::vector<int>& cd) {
      for (int c = 0; c < static_cast<int>(cd.size()); ++c)
        for (int r = 0; r < static_cast<int>(rd.size()); ++r)
          for (auto& m : monomials_of_wdeg2(
                   *e_.ring, rd[static_cast<size_t>(r)] - cd[static_cast<size_t>(c)] +
                                 internal_deg2))
            out.push_back({block, r, c, m});
    };
    emit(0, s.f0_row, s.f0_col);
    emit(1, s.f1_row, s.f1_col);
    return out;
  }

  int rank_of_differential(int coh_degree, int internal_deg2,
                           const std::vector<Unknown>& unknowns) const {
    (void)internal_deg2;
    const Field& k = e_.ring->field;
    std::map<std::tuple<int, int, int, Expo>, int> rows;
    std::vector<std::vector<std::pair<int, Scalar>>> cols;
    for (const auto& u : unknowns) {
      MfMorphism m = zero_morphism(e_, f_, coh_degree);
      PolyMatrix& blk = u.block == 0 ? m.f0 : m.f1;
      blk.set(u.row, u.col, Poly::monomial(e_.ring, u.m, k.one()));
      MfMorphism d = differential_morphism(m);
      std::vector<std::pair<int, Scalar>> col;
      auto absorb = [&](int block, const PolyMatrix& dm) {
        for (int r = 0; r < dm.rows(); ++r)
          for (int c = 0; c < dm.cols(); ++c)
            for (const auto& t : dm.at(r, c).terms()) {
              auto key = std::make_tuple(block, r, c, t.m);
              auto it = rows.find(key);
              if (it == rows.end())
                it = rows.emplace(key, static_cast<int>(rows.size())).first;
              col.push_back({it->second, t.c});
            }
      };
      absorb(0, d.f0);
      absorb(1, d.f1);
      cols.push_back(std::move(col));
    }
    ScalarMat m(k, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
      for (const auto& [r, c] : cols[static_cast<size_t>(j)]) m.add_at(r, j, c);
    return rank(m);
  }

  MatrixFactorization e_, f_;
};

/// A_{n-1} boundary objects for W = x^n over one variable.
inline MatrixFactorization an_object(const RingPtr& ring, int n, int j) {
  Poly x = Poly::variable(ring, 0);
  Poly a = Poly::from_int(ring, 1), b = Poly::from_int(ring, 1);
  for (int i = 0; i < j; ++i) a = a * x;
  for (int i = 0; i < n - j; ++i) b = b * x;
  return koszul_factorization({a}, {b});
}

/// Small deterministic random polynomial for property tests.
inline Poly random_poly(SplitMix64& rng, const RingPtr& ring, int max_deg2, int max_terms) {
  const Field& k = ring->field;
  std::vector<Poly::Term> terms;
  for (int t = 0; t < max_terms; ++t) {
    int d = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_deg2 + 1)));
    auto monos = monomials_of_wdeg2(*ring, d);
    if (monos.empty()) continue;
    Expo m = monos[rng.below(monos.size())];
    std::int64_t c = k.is_prime_field()
                         ? static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(k.p())))
                         : static_cast<std::int64_t>(rng.range(-9, 9));
    terms.push_back({m, k.from_int(c)});
  }
  return Poly::collect(ring, std::move(terms));
}

}  // namespace mfctest
