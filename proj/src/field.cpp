#include "mfcalc/field.hpp"

#include <cstdlib>

namespace mfc {

namespace {

bool is_prime_u64(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
  std::int64_t r = 1 % p;
  b %= p;
  while (e > 0) {
    if (e & 1) r = (r * b) % p;
    b = (b * b) % p;
    e >>= 1;
  }
  return r;
}

// inverse mod p by extended Euclid
std::int64_t mod_inv(std::int64_t a, std::int64_t p) {
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
  if (r != 1) throw Error("not invertible mod p");
  return t < 0 ? t + p : t;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> fs;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

Field Field::prime(std::int64_t p) {
  if (p < 2 || p >= (std::int64_t{1} << 31) || !is_prime_u64(p))
    throw Error("field modulus must be a prime < 2^31, got " + std::to_string(p));
  return Field(Kind::prime, p);
}

std::int64_t Field::norm(std::int64_t r) const {
  r %= p_;
  return r < 0 ? r + p_ : r;
}

Scalar Field::zero() const {
  return is_prime_field() ? Scalar::residue(0) : Scalar::rational(mpq_class(0));
}

Scalar Field::one() const {
  return is_prime_field() ? Scalar::residue(1 % p_) : Scalar::rational(mpq_class(1));
}

Scalar Field::from_int(std::int64_t n) const {
  if (is_prime_field()) return Scalar::residue(norm(n));
  return Scalar::rational(mpq_class(static_cast<long>(n)));
}

Scalar Field::from_string(const std::string& s) const {
  if (s.empty()) throw Error("empty numeric literal");
  if (is_prime_field()) {
    mpz_class z;
    if (z.set_str(s, 10) != 0) throw Error("bad integer literal '" + s + "'");
    mpz_class r = z % p_;
    if (r < 0) r += p_;
    return Scalar::residue(r.get_si());
  }
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error("bad rational literal '" + s + "'");
  q.canonicalize();
  if (q.get_den() == 0) throw Error("zero denominator in '" + s + "'");
  return Scalar::rational(q);
}

bool Field::is_zero(const Scalar& a) const {
  return is_prime_field() ? a.res() == 0 : a.rat() == 0;
}

bool Field::is_one(const Scalar& a) const {
  return is_prime_field() ? a.res() == 1 % p_ : a.rat() == 1;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (is_prime_field()) return Scalar::residue(norm(a.res() + b.res()));
  return Scalar::rational(a.rat() + b.rat());
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (is_prime_field()) return Scalar::residue(norm(a.res() - b.res()));
  return Scalar::rational(a.rat() - b.rat());
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (is_prime_field()) return Scalar::residue((a.res() * b.res()) % p_);
  return Scalar::rational(a.rat() * b.rat());
}

Scalar Field::neg(const Scalar& a) const {
  if (is_prime_field()) return Scalar::residue(norm(-a.res()));
  return Scalar::rational(-a.rat());
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) throw Error("division by zero");
  if (is_prime_field()) return Scalar::residue(mod_inv(a.res(), p_));
  return Scalar::rational(1 / a.rat());
}

Scalar Field::pow(const Scalar& a, std::int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  Scalar r = one(), b = a;
  while (e > 0) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

std::string Field::str(const Scalar& a) const {
  if (is_prime_field()) return std::to_string(a.res());
  return a.rat().get_str();
}

bool Field::char_divides(std::int64_t n) const {
  if (!is_prime_field()) return false;
  return n % p_ == 0;
}

Scalar Field::root_of_unity(std::int64_t order) const {
  if (order < 1) throw Error("root of unity order must be positive");
  if (order == 1) return one();
  if (!is_prime_field()) {
    if (order == 2) return from_int(-1);
    throw Error("the rationals contain no primitive root of unity of order " +
                std::to_string(order));
  }
  if ((p_ - 1) % order != 0)
    throw Error("F_" + std::to_string(p_) + " has no root of unity of order " +
                std::to_string(order) + " (order must divide p-1)");
  // find a generator of F_p^*, then take the (p-1)/order power
  auto fac = prime_factors(p_ - 1);
  for (std::int64_t g = 2; g < p_; ++g) {
    bool gen = true;
    for (auto q : fac)
      if (mod_pow(g, (p_ - 1) / q, p_) == 1) {
        gen = false;
        break;
      }
    if (gen) return Scalar::residue(mod_pow(g, (p_ - 1) / order, p_));
  }
  throw Error("no generator found");  // unreachable for prime p
}

std::string Field::describe() const {
  return is_prime_field() ? "F_" + std::to_string(p_) : "Q";
}

}  // namespace mfc
