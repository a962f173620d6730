#include "mfcalc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace mfc {

int Ring::var_index(const std::string& name) const {
  for (int i = 0; i < nvars(); ++i)
    if (vars[static_cast<size_t>(i)] == name) return i;
  return -1;
}

void Ring::validate() const {
  if (vars.size() != weights.size())
    throw Error("ring: need one weight per variable");
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.empty()) throw Error("ring: empty variable name");
    if (!seen.insert(v).second) throw Error("ring: duplicate variable '" + v + "'");
  }
  for (int w : weights)
    if (w < 1) throw Error("ring: weights must be >= 1");
}

RingPtr make_ring(Field field, std::vector<std::string> vars, std::vector<int> weights) {
  auto r = std::make_shared<Ring>();
  r->field = field;
  r->vars = std::move(vars);
  r->weights = std::move(weights);
  r->validate();
  return r;
}

int expo_wdeg2(const Ring& r, const Expo& e) {
  int d = 0;
  for (int v = 0; v < r.nvars(); ++v) d += e[static_cast<size_t>(v)] * r.wdeg2(v);
  return d;
}

int mono_cmp(const Ring& r, const Expo& a, const Expo& b) {
  int da = expo_wdeg2(r, a), db = expo_wdeg2(r, b);
  if (da != db) return da > db ? 1 : -1;
  for (int v = r.nvars() - 1; v >= 0; --v) {
    auto d = a[static_cast<size_t>(v)] - b[static_cast<size_t>(v)];
    if (d != 0) return d < 0 ? 1 : -1;  // grevlex: smaller tail exponent is larger
  }
  return 0;
}

bool expo_divides(const Expo& a, const Expo& b) {
  for (size_t v = 0; v < a.size(); ++v)
    if (a[v] > b[v]) return false;
  return true;
}

std::string expo_str(const Ring& r, const Expo& e) {
  std::string s;
  for (int v = 0; v < r.nvars(); ++v) {
    int ev = e[static_cast<size_t>(v)];
    if (ev == 0) continue;
    if (!s.empty()) s += "*";
    s += r.vars[static_cast<size_t>(v)];
    if (ev != 1) s += "^" + std::to_string(ev);
  }
  return s.empty() ? "1" : s;
}

namespace {

void enum_monomials(const Ring& r, int v, int remaining2, Expo& cur,
                    std::vector<Expo>& out) {
  if (v == r.nvars()) {
    if (remaining2 == 0) out.push_back(cur);
    return;
  }
  if (v == r.nvars() - 1) {
    int w = r.wdeg2(v);
    if (remaining2 >= 0 && remaining2 % w == 0) {
      cur[static_cast<size_t>(v)] = remaining2 / w;
      out.push_back(cur);
      cur[static_cast<size_t>(v)] = 0;
    }
    return;
  }
  int w = r.wdeg2(v);
  for (int e = 0; e * w <= remaining2; ++e) {
    cur[static_cast<size_t>(v)] = e;
    enum_monomials(r, v + 1, remaining2 - e * w, cur, out);
  }
  cur[static_cast<size_t>(v)] = 0;
}

}  // namespace

std::vector<Expo> monomials_of_wdeg2(const Ring& r, int deg2) {
  std::vector<Expo> out;
  if (deg2 < 0) return out;
  if (r.nvars() == 0) {
    if (deg2 == 0) out.push_back(Expo{});
    return out;
  }
  Expo cur(static_cast<size_t>(r.nvars()), 0);
  enum_monomials(r, 0, deg2, cur, out);
  std::sort(out.begin(), out.end(),
            [&r](const Expo& a, const Expo& b) { return mono_cmp(r, a, b) > 0; });
  return out;
}

long long count_monomials_of_wdeg2(const Ring& r, int deg2) {
  if (deg2 < 0) return 0;
  // small dimensions; enumeration is cheap enough
  return static_cast<long long>(monomials_of_wdeg2(r, deg2).size());
}

std::string DegreeInfo::str() const {
  switch (kind) {
    case Kind::zero:
      return "-inf";
    case Kind::homogeneous:
      return std::to_string(deg2);
    default:
      return "inhomogeneous";
  }
}

Poly Poly::constant(RingPtr ring, const Scalar& c) {
  Poly p(ring);
  if (!ring->field.is_zero(c))
    p.terms_.push_back({Expo(static_cast<size_t>(ring->nvars()), 0), c});
  return p;
}

Poly Poly::from_int(RingPtr ring, std::int64_t n) {
  Scalar c = ring->field.from_int(n);
  return constant(std::move(ring), c);
}

Poly Poly::variable(RingPtr ring, int v) {
  if (v < 0 || v >= ring->nvars()) throw Error("variable index out of range");
  Expo e(static_cast<size_t>(ring->nvars()), 0);
  e[static_cast<size_t>(v)] = 1;
  Scalar c = ring->field.one();
  return monomial(std::move(ring), std::move(e), c);
}

Poly Poly::monomial(RingPtr ring, Expo e, const Scalar& c) {
  Poly p(ring);
  if (!ring->field.is_zero(c)) p.terms_.push_back({std::move(e), c});
  return p;
}

const Poly::Term& Poly::leading() const {
  if (is_zero()) throw Error("leading term of zero polynomial");
  return terms_.front();
}

DegreeInfo Poly::wdeg2() const {
  DegreeInfo d;
  if (is_zero()) return d;
  d.kind = DegreeInfo::Kind::homogeneous;
  d.deg2 = expo_wdeg2(*ring_, terms_.front().m);
  for (const auto& t : terms_) {
    if (expo_wdeg2(*ring_, t.m) != d.deg2) {
      d.kind = DegreeInfo::Kind::inhomogeneous;
      return d;
    }
  }
  return d;
}

bool Poly::is_homogeneous_of(int deg2) const {
  auto d = wdeg2();
  if (d.kind == DegreeInfo::Kind::zero) return true;
  return d.kind == DegreeInfo::Kind::homogeneous && d.deg2 == deg2;
}

std::map<int, Poly> Poly::homogeneous_components() const {
  std::map<int, std::vector<Term>> buckets;
  for (const auto& t : terms_) buckets[expo_wdeg2(*ring_, t.m)].push_back(t);
  std::map<int, Poly> out;
  for (auto& [d, ts] : buckets) out.emplace(d, collect(ring_, std::move(ts)));
  return out;
}

Poly Poly::collect(RingPtr ring, std::vector<Term> terms) {
  const Ring& r = *ring;
  std::sort(terms.begin(), terms.end(),
            [&r](const Term& a, const Term& b) { return mono_cmp(r, a.m, b.m) > 0; });
  Poly p(ring);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m)
      p.terms_.back().c = r.field.add(p.terms_.back().c, t.c);
    else
      p.terms_.push_back(std::move(t));
    if (!p.terms_.empty() && r.field.is_zero(p.terms_.back().c)) p.terms_.pop_back();
  }
  return p;
}

Poly Poly::operator-() const {
  Poly p(ring_);
  p.terms_ = terms_;
  for (auto& t : p.terms_) t.c = ring_->field.neg(t.c);
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  require_same_ring(*this, o, "add");
  // merge of two sorted term lists
  const Ring& r = *ring_;
  Poly p(ring_);
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size())
      c = -1;
    else if (j == o.terms_.size())
      c = 1;
    else
      c = mono_cmp(r, terms_[i].m, o.terms_[j].m);
    if (c > 0) {
      p.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      p.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar s = r.field.add(terms_[i].c, o.terms_[j].c);
      if (!r.field.is_zero(s)) p.terms_.push_back({terms_[i].m, s});
      ++i;
      ++j;
    }
  }
  return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  require_same_ring(*this, o, "mul");
  if (is_zero() || o.is_zero()) return Poly::zero(ring_);
  std::vector<Term> acc;
  acc.reserve(terms_.size() * o.terms_.size());
  const Field& f = ring_->field;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      Expo m = a.m;
      for (size_t v = 0; v < m.size(); ++v) m[v] += b.m[v];
      acc.push_back({std::move(m), f.mul(a.c, b.c)});
    }
  return collect(ring_, std::move(acc));
}

bool Poly::operator==(const Poly& o) const {
  if (!ring_ || !o.ring_) return terms_.empty() && o.terms_.empty();
  if (*ring_ != *o.ring_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != o.terms_[i].m || terms_[i].c != o.terms_[i].c) return false;
  return true;
}

Poly Poly::scaled(const Scalar& c) const {
  const Field& f = ring_->field;
  if (f.is_zero(c)) return Poly::zero(ring_);
  Poly p(ring_);
  p.terms_ = terms_;
  for (auto& t : p.terms_) t.c = f.mul(t.c, c);
  return p;
}

Poly Poly::mul_monomial(const Expo& e, const Scalar& c) const {
  const Field& f = ring_->field;
  if (f.is_zero(c)) return Poly::zero(ring_);
  Poly p(ring_);
  p.terms_ = terms_;
  for (auto& t : p.terms_) {
    for (size_t v = 0; v < t.m.size(); ++v) t.m[v] += e[v];
    t.c = f.mul(t.c, c);
  }
  return p;  // multiplying by a monomial preserves the order
}

Poly Poly::derivative(int v) const {
  if (v < 0 || v >= ring_->nvars()) throw Error("derivative: bad variable");
  std::vector<Term> acc;
  const Field& f = ring_->field;
  for (const auto& t : terms_) {
    int e = t.m[static_cast<size_t>(v)];
    if (e == 0) continue;
    Term nt = t;
    nt.m[static_cast<size_t>(v)] = e - 1;
    nt.c = f.mul(t.c, f.from_int(e));
    if (!f.is_zero(nt.c)) acc.push_back(std::move(nt));
  }
  return collect(ring_, std::move(acc));
}

Poly Poly::substitute(const RingPtr& target_ring, const std::vector<Poly>& images) const {
  if (static_cast<int>(images.size()) != ring_->nvars())
    throw Error("substitute: need one image per variable");
  if (target_ring->field != ring_->field)
    throw Error("substitute: field mismatch");
  Poly acc = Poly::zero(target_ring);
  for (const auto& t : terms_) {
    Poly prod = Poly::constant(target_ring, t.c);
    for (size_t v = 0; v < t.m.size(); ++v)
      for (int k = 0; k < t.m[v]; ++k) prod = prod * images[v];
    acc = acc + prod;
  }
  return acc;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  if (static_cast<int>(point.size()) != ring_->nvars())
    throw Error("evaluate: need one coordinate per variable");
  const Field& f = ring_->field;
  Scalar acc = f.zero();
  for (const auto& t : terms_) {
    Scalar v = t.c;
    for (size_t i = 0; i < t.m.size(); ++i)
      if (t.m[i] != 0) v = f.mul(v, f.pow(point[i], t.m[i]));
    acc = f.add(acc, v);
  }
  return acc;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  const Field& f = ring_->field;
  std::string s;
  bool first = true;
  for (const auto& t : terms_) {
    std::string c = f.str(t.c);
    bool neg = !c.empty() && c[0] == '-';
    if (first) {
      first = false;
      if (neg) {
        s += "-";
        c = c.substr(1);
      }
    } else {
      s += neg ? " - " : " + ";
      if (neg) c = c.substr(1);
    }
    std::string m = expo_str(*ring_, t.m);
    if (m == "1")
      s += c;
    else if (c == "1")
      s += m;
    else
      s += c + "*" + m;
  }
  return s;
}

void require_same_ring(const Poly& a, const Poly& b, const char* what) {
  if (!a.ring() || !b.ring() || *a.ring() != *b.ring())
    throw Error(std::string(what) + ": ring mismatch");
}

DivisionResult divide_by(const Poly& a, const Poly& w) {
  require_same_ring(a, w, "divide");
  if (w.is_zero()) throw Error("division by zero polynomial");
  const Ring& r = *a.ring();
  const Field& f = r.field;
  const Expo& lm = w.leading().m;
  Scalar lc_inv = f.inv(w.leading().c);
  Poly q = Poly::zero(a.ring());
  Poly rem = a;
  for (;;) {
    // highest term of rem divisible by lm(w); terms are sorted descending
    const Poly::Term* hit = nullptr;
    for (const auto& t : rem.terms()) {
      if (expo_divides(lm, t.m)) {
        hit = &t;
        break;
      }
    }
    if (!hit) break;
    Expo e = hit->m;
    for (size_t v = 0; v < e.size(); ++v) e[v] -= lm[v];
    Scalar c = f.mul(hit->c, lc_inv);
    q = q + Poly::monomial(a.ring(), e, c);
    rem = rem - w.mul_monomial(e, c);
  }
  return {q, rem};
}

Poly normal_form_mod(const Poly& a, const Poly& w) { return divide_by(a, w).remainder; }

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, const std::string& text) : ring_(ring), s_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw PolySyntaxError(pos_ + 1, msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Poly expr() {
    bool neg = false;
    char c = peek();
    if (c == '+' || c == '-') {
      ++pos_;
      neg = (c == '-');
    }
    Poly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      c = peek();
      if (c == '+' || c == '-') {
        ++pos_;
        Poly t = term();
        acc = (c == '+') ? acc + t : acc - t;
      } else {
        break;
      }
    }
    return acc;
  }

  static bool starts_base(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) ||
           std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_base(c)) {
        acc = acc * factor();  // juxtaposition
      } else {
        break;
      }
    }
    return acc;
  }

  Poly factor() {
    Poly b = base();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        fail("expected a nonnegative integer exponent after '^'");
      long long e = integer_literal();
      if (e > 512) fail("exponent too large");
      Poly acc = Poly::from_int(ring_, 1);
      for (long long k = 0; k < e; ++k) acc = acc * b;
      return acc;
    }
    return b;
  }

  long long integer_literal() {
    size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string digits = s_.substr(start, pos_ - start);
    if (digits.size() > 12) fail("integer literal too large for an exponent");
    return std::stoll(digits);
  }

  Poly base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(ring_, ring_->field.from_string(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      int v = ring_->var_index(name);
      if (v < 0) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Poly::variable(ring_, v);
    }
    fail("expected a coefficient, variable or '('");
  }

  RingPtr ring_;
  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, const std::string& text) {
  return PolyParser(ring, text).parse();
}

}  // namespace mfc
