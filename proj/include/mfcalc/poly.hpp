#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mfcalc/field.hpp"

namespace mfc {

/// A weighted-graded polynomial ring over an exact field. Weights are the
/// user-declared positive integers; all degrees elsewhere in the library are
/// "doubled": the weight of a variable in degree bookkeeping is 2*weights[i],
/// so the half-twist (half the degree of the potential) is always an integer.
struct Ring {
  Field field = Field::rationals();
  std::vector<std::string> vars;
  std::vector<int> weights;  // undoubled, >= 1

  int nvars() const { return static_cast<int>(vars.size()); }
  int wdeg2(int v) const { return 2 * weights[static_cast<size_t>(v)]; }
  int var_index(const std::string& name) const;

  bool operator==(const Ring& o) const {
    return field == o.field && vars == o.vars && weights == o.weights;
  }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  void validate() const;  // distinct names, weights >= 1
};

using RingPtr = std::shared_ptr<const Ring>;
RingPtr make_ring(Field field, std::vector<std::string> vars, std::vector<int> weights);

/// Exponent vector of a monomial; one entry per ring variable.
using Expo = std::vector<std::int32_t>;

int expo_wdeg2(const Ring& r, const Expo& e);
/// Weighted-grevlex comparison: +1 if a > b, 0 if equal, -1 if a < b.
/// Higher weighted degree wins; ties go to reverse lex in declared order.
int mono_cmp(const Ring& r, const Expo& a, const Expo& b);
bool expo_divides(const Expo& a, const Expo& b);  // a | b
std::string expo_str(const Ring& r, const Expo& e);

/// All monomials of the given doubled weighted degree, sorted descending in
/// the monomial order. Empty for negative or odd-unreachable degrees.
std::vector<Expo> monomials_of_wdeg2(const Ring& r, int deg2);
/// Number of monomials of the given doubled degree.
long long count_monomials_of_wdeg2(const Ring& r, int deg2);

/// Result of a weighted-degree query on a polynomial.
struct DegreeInfo {
  enum class Kind { zero, homogeneous, inhomogeneous };
  Kind kind = Kind::zero;
  int deg2 = 0;  // meaningful only when homogeneous

  bool is_zero() const { return kind == Kind::zero; }
  bool is_homogeneous() const { return kind != Kind::inhomogeneous; }
  std::string str() const;
};

/// Sparse multivariate polynomial with exact coefficients. Terms are kept
/// sorted descending in the monomial order with no zero coefficients, so
/// equal polynomials have identical representations.
class Poly {
 public:
  struct Term {
    Expo m;
    Scalar c;
  };

  Poly() = default;  // detached zero; usable only after assignment
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(RingPtr ring) { return Poly(std::move(ring)); }
  static Poly constant(RingPtr ring, const Scalar& c);
  static Poly from_int(RingPtr ring, std::int64_t n);
  static Poly variable(RingPtr ring, int v);
  static Poly monomial(RingPtr ring, Expo e, const Scalar& c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t nterms() const { return terms_.size(); }

  /// Leading term in the monomial order (throws on zero).
  const Term& leading() const;

  DegreeInfo wdeg2() const;
  bool is_homogeneous() const { return wdeg2().is_homogeneous(); }
  /// Homogeneous of exactly this degree, or zero.
  bool is_homogeneous_of(int deg2) const;
  /// Splits into homogeneous components keyed by doubled degree.
  std::map<int, Poly> homogeneous_components() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const Scalar& c) const;
  Poly mul_monomial(const Expo& e, const Scalar& c) const;

  Poly derivative(int v) const;
  /// Substitutes images[v] for variable v; images live in target_ring.
  Poly substitute(const RingPtr& target_ring, const std::vector<Poly>& images) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;

  std::string str() const;

  /// Builds a polynomial from unsorted (expo, coeff) pairs, combining and
  /// dropping zeros.
  static Poly collect(RingPtr ring, std::vector<Term> terms);

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

/// Quotient and canonical remainder of division by the single divisor w
/// under the fixed monomial order: a = q*w + r and no term of r is divisible
/// by the leading monomial of w.
struct DivisionResult {
  Poly quotient;
  Poly remainder;
};
DivisionResult divide_by(const Poly& a, const Poly& w);

/// Canonical representative of a modulo the principal ideal (w).
Poly normal_form_mod(const Poly& a, const Poly& w);

/// Syntax error with a 1-based character offset into the parsed text.
class PolySyntaxError : public Error {
 public:
  PolySyntaxError(size_t pos1, const std::string& msg)
      : Error("syntax error at position " + std::to_string(pos1) + ": " + msg), pos(pos1) {}
  size_t pos;
};

/// Parses the CLI polynomial syntax: integer coefficients, named variables,
/// '^' powers, optional '*', parentheses, and '+'/'-'. Throws PolySyntaxError
/// on bad input.
Poly parse_poly(const RingPtr& ring, const std::string& text);

void require_same_ring(const Poly& a, const Poly& b, const char* what);

}  // namespace mfc
