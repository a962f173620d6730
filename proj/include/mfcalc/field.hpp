#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace mfc {

/// Domain error thrown by library operations on invalid input.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Element of the ground field. Prime-field elements are residues in [0, p),
/// rationals are exact mpq values. All arithmetic goes through Field, which
/// knows the modulus; a Scalar by itself is just the payload.
class Scalar {
 public:
  Scalar() : v_(std::int64_t{0}) {}

  static Scalar residue(std::int64_t r) { return Scalar(Repr(r)); }
  static Scalar rational(mpq_class q) { return Scalar(Repr(std::move(q))); }

  bool holds_rational() const { return std::holds_alternative<mpq_class>(v_); }
  std::int64_t res() const { return std::get<std::int64_t>(v_); }
  const mpq_class& rat() const { return std::get<mpq_class>(v_); }

  bool operator==(const Scalar& o) const { return v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

 private:
  using Repr = std::variant<std::int64_t, mpq_class>;
  explicit Scalar(Repr v) : v_(std::move(v)) {}
  Repr v_;
};

/// The ground field k: either F_p for a prime p < 2^31 or the rationals.
class Field {
 public:
  enum class Kind { prime, rationals };

  static Field prime(std::int64_t p);
  static Field rationals() { return Field(Kind::rationals, 0); }

  Kind kind() const { return kind_; }
  std::int64_t p() const { return p_; }
  bool is_prime_field() const { return kind_ == Kind::prime; }

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t n) const;
  /// Parses an integer literal, or "a/b" over the rationals.
  Scalar from_string(const std::string& s) const;

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
  Scalar pow(const Scalar& a, std::int64_t e) const;

  std::string str(const Scalar& a) const;

  /// True when the field characteristic divides n (always false over Q).
  bool char_divides(std::int64_t n) const;

  /// A primitive root of unity of the given order. Requires order | p-1 over
  /// F_p; over Q only orders 1 and 2 exist.
  Scalar root_of_unity(std::int64_t order) const;

  std::string describe() const;

 private:
  Field(Kind k, std::int64_t p) : kind_(k), p_(p) {}
  std::int64_t norm(std::int64_t r) const;

  Kind kind_;
  std::int64_t p_;
};

}  // namespace mfc
