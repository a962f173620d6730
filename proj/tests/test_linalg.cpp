#include <doctest.h>

#include "oracles.hpp"

using namespace mfc;
using namespace mfctest;

namespace {

ScalarMat random_mat(SplitMix64& rng, const Field& f, int rows, int cols) {
  ScalarMat m(f, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      m.set(i, j, f.from_int(rng.range(-6, 6)));
  return m;
}

}  // namespace

TEST_CASE("identity system") {
  Field f = Field::prime(101);
  ScalarMat id = ScalarMat::identity(f, 4);
  LinearSolution s = solve_linear(id, std::vector<Scalar>(4, f.zero()));
  REQUIRE(s.solvable);
  for (const auto& v : s.particular) CHECK(f.is_zero(v));
  CHECK(s.kernel.empty());
  CHECK(rank(id) == 4);
}

TEST_CASE("zero system has full kernel") {
  Field f = Field::prime(101);
  ScalarMat z(f, 2, 3);
  LinearSolution s = solve_linear(z, std::vector<Scalar>(2, f.zero()));
  REQUIRE(s.solvable);
  CHECK(s.kernel.size() == 3);
  CHECK(kernel_basis(z).size() == 3);
}

TEST_CASE("3a = 1 over F_7") {
  Field f = Field::prime(7);
  ScalarMat a(f, 1, 1);
  a.set(0, 0, f.from_int(3));
  LinearSolution s = solve_linear(a, {f.one()});
  REQUIRE(s.solvable);
  CHECK(s.particular[0] == f.from_int(5));
}

TEST_CASE("solutions substitute back exactly") {
  for (Field f : {Field::prime(101), Field::rationals()}) {
    SplitMix64 rng(42);
    for (int it = 0; it < 30; ++it) {
      int rows = 1 + static_cast<int>(rng.below(5));
      int cols = 1 + static_cast<int>(rng.below(5));
      ScalarMat a = random_mat(rng, f, rows, cols);
      // build a consistent rhs from a random x
      std::vector<Scalar> x;
      for (int j = 0; j < cols; ++j) x.push_back(f.from_int(rng.range(-5, 5)));
      std::vector<Scalar> b = a.apply(x);
      LinearSolution s = solve_linear(a, b);
      REQUIRE(s.solvable);
      CHECK(a.apply(s.particular) == b);
      for (const auto& kv : s.kernel) {
        auto img = a.apply(kv);
        for (const auto& c : img) CHECK(f.is_zero(c));
      }
      CHECK(rank(a) + static_cast<int>(kernel_basis(a).size()) == cols);
    }
  }
}

TEST_CASE("inconsistent systems are reported") {
  Field f = Field::prime(101);
  ScalarMat a(f, 2, 1);
  a.set(0, 0, f.one());
  a.set(1, 0, f.one());
  LinearSolution s = solve_linear(a, {f.one(), f.from_int(2)});
  CHECK_FALSE(s.solvable);
}

TEST_CASE("rank agrees between the fast and generic paths") {
  SplitMix64 rng(9);
  for (int it = 0; it < 20; ++it) {
    int rows = 1 + static_cast<int>(rng.below(6));
    int cols = 1 + static_cast<int>(rng.below(6));
    Field fp = Field::prime(101);
    Field fq = Field::rationals();
    ScalarMat ap(fp, rows, cols);
    ScalarMat aq(fq, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        long long v = rng.range(0, 4);  // small nonneg entries represent the same matrix
        ap.set(i, j, fp.from_int(v));
        aq.set(i, j, fq.from_int(v));
      }
    CHECK(rank(ap) == rank(aq));
  }
}
