#include "mfcalc/problem.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mfc {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

int parse_int(const std::string& s, int line) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(line, 1, "expected an integer, got '" + s + "'");
  }
}

std::vector<int> parse_int_list(const std::string& s, int line) {
  std::vector<int> out;
  for (auto& tok : split(s, ',')) out.push_back(parse_int(tok, line));
  return out;
}

struct KeyLine {
  std::string key;      // first word
  std::string subject;  // optional second word
  std::string value;
  int line;
};

struct Section {
  std::string kind;  // ring | potential | mf | group | points | map
  std::string arg;   // mf name
  int line;
  std::vector<KeyLine> entries;
};

std::vector<Section> tokenize(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : text) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    lines.push_back(cur);
  }
  std::vector<Section> sections;
  for (size_t li = 0; li < lines.size(); ++li) {
    std::string raw = lines[li];
    if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
    std::string s = trim(raw);
    if (s.empty()) continue;
    int lineno = static_cast<int>(li) + 1;
    if (s.front() == '[' && s.back() == ']') {
      std::string inner = trim(s.substr(1, s.size() - 2));
      auto sp = inner.find(' ');
      Section sec;
      sec.kind = sp == std::string::npos ? inner : trim(inner.substr(0, sp));
      sec.arg = sp == std::string::npos ? "" : trim(inner.substr(sp + 1));
      sec.line = lineno;
      sections.push_back(std::move(sec));
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw ParseError(lineno, 1, "expected 'key = value' or a [section] header");
    if (sections.empty()) throw ParseError(lineno, 1, "entry outside of any section");
    std::string keypart = trim(s.substr(0, eq));
    std::string value = trim(s.substr(eq + 1));
    // matrix values may continue over several lines until brackets balance
    int depth = 0;
    for (char c : value) depth += (c == '[') - (c == ']');
    while (depth > 0 && li + 1 < lines.size()) {
      ++li;
      std::string cont = lines[li];
      if (auto h = cont.find('#'); h != std::string::npos) cont = cont.substr(0, h);
      value += " " + trim(cont);
      for (char c : trim(cont)) depth += (c == '[') - (c == ']');
    }
    if (depth != 0) throw ParseError(lineno, 1, "unbalanced brackets in value");
    KeyLine kl;
    auto sp = keypart.find(' ');
    kl.key = sp == std::string::npos ? keypart : trim(keypart.substr(0, sp));
    kl.subject = sp == std::string::npos ? "" : trim(keypart.substr(sp + 1));
    kl.value = value;
    kl.line = lineno;
    sections.back().entries.push_back(std::move(kl));
  }
  return sections;
}

Poly parse_poly_at(const RingPtr& ring, const std::string& text, int line) {
  try {
    return parse_poly(ring, text);
  } catch (const PolySyntaxError& e) {
    throw ParseError(line, static_cast<int>(e.pos), e.what());
  } catch (const Error& e) {
    throw ParseError(line, 1, e.what());
  }
}

/// [[p, q], [r, s]]; rows may be empty ([]).
std::vector<std::vector<Poly>> parse_matrix(const RingPtr& ring, const std::string& text,
                                            int line) {
  std::vector<std::vector<Poly>> rows;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= text.size() || text[i] != c)
      throw ParseError(line, static_cast<int>(i) + 1,
                       std::string("expected '") + c + "' in matrix");
    ++i;
  };
  expect('[');
  skip_ws();
  if (i < text.size() && text[i] == ']') {
    ++i;
    return rows;  // zero rows
  }
  for (;;) {
    expect('[');
    std::vector<Poly> row;
    skip_ws();
    if (i < text.size() && text[i] == ']') {
      ++i;  // empty row
    } else {
      for (;;) {
        size_t start = i;
        int depth = 0;
        while (i < text.size()) {
          char c = text[i];
          if (c == '(') ++depth;
          if (c == ')') --depth;
          if (depth == 0 && (c == ',' || c == ']')) break;
          ++i;
        }
        if (i >= text.size())
          throw ParseError(line, static_cast<int>(start) + 1, "unterminated matrix row");
        row.push_back(parse_poly_at(ring, text.substr(start, i - start), line));
        if (text[i] == ']') {
          ++i;
          break;
        }
        ++i;  // consume ','
      }
    }
    rows.push_back(std::move(row));
    skip_ws();
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    expect(']');
    break;
  }
  skip_ws();
  if (i != text.size())
    throw ParseError(line, static_cast<int>(i) + 1, "trailing text after matrix");
  return rows;
}

PolyMatrix build_matrix(const RingPtr& ring, const std::vector<std::vector<Poly>>& rows,
                        const std::vector<int>& row_deg, const std::vector<int>& col_deg,
                        const std::string& what, int line) {
  if (static_cast<int>(rows.size()) != static_cast<int>(row_deg.size()))
    throw ParseError(line, 1,
                     what + ": expected " + std::to_string(row_deg.size()) + " rows, got " +
                         std::to_string(rows.size()));
  PolyMatrix m(ring, row_deg, col_deg);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != static_cast<int>(col_deg.size()))
      throw ParseError(line, 1,
                       what + " row " + std::to_string(i + 1) + ": expected " +
                           std::to_string(col_deg.size()) + " entries, got " +
                           std::to_string(rows[i].size()));
    for (size_t j = 0; j < rows[i].size(); ++j)
      m.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
  }
  return m;
}

std::vector<CharVec> parse_weight_list(const std::string& s, int line) {
  std::vector<CharVec> out;
  if (trim(s).empty()) return out;
  for (auto& tup : split(s, ';')) {
    CharVec w;
    for (auto& tok : split(tup, ',')) w.push_back(parse_int(tok, line));
    out.push_back(std::move(w));
  }
  return out;
}

const KeyLine* find_entry(const Section& sec, const std::string& key,
                          const std::string& subject = "") {
  for (const auto& e : sec.entries)
    if (e.key == key && e.subject == subject) return &e;
  return nullptr;
}

const KeyLine& need_entry(const Section& sec, const std::string& key,
                          const std::string& subject = "") {
  const KeyLine* e = find_entry(sec, key, subject);
  if (!e)
    throw ParseError(sec.line, 1,
                     "[" + sec.kind + "] is missing '" + key +
                         (subject.empty() ? "" : " " + subject) + "'");
  return *e;
}

}  // namespace

const MfBlock* ProblemFile::find_mf(const std::string& name) const {
  for (const auto& b : mfs)
    if (b.name == name) return &b;
  return nullptr;
}

MatrixFactorization ProblemFile::mf(const std::string& name) const {
  const MfBlock* b = find_mf(name);
  if (!b) throw Error("no factorization named '" + name + "' in the problem file");
  return make_mf(ring, potential, b->deg0, b->deg1, b->delta1, b->delta0);
}

EquivariantMF ProblemFile::equivariant(const std::string& name) const {
  if (!group) throw Error("problem file has no [group] block");
  auto it0 = group->weights0.find(name);
  auto it1 = group->weights1.find(name);
  if (it0 == group->weights0.end() || it1 == group->weights1.end())
    throw Error("no group weights declared for factorization '" + name + "'");
  EquivariantMF e;
  e.base = mf(name);
  e.group = group->data;
  e.w0 = it0->second;
  e.w1 = it1->second;
  return e;
}

FiniteRingMap ProblemFile::finite_map() const {
  if (!map) throw Error("problem file has no [map] block");
  return make_finite_map(map->source_ring, ring, map->images, map->basis);
}

bool ProblemFile::operator==(const ProblemFile& o) const {
  if (!(*ring == *o.ring) || potential != o.potential || mfs != o.mfs ||
      points != o.points)
    return false;
  if (group.has_value() != o.group.has_value() || map.has_value() != o.map.has_value())
    return false;
  if (group && !(*group == *o.group)) return false;
  if (map && !(*map == *o.map)) return false;
  return true;
}

ProblemFile parse_problem(const std::string& text) {
  auto sections = tokenize(text);
  ProblemFile pf;

  // ring first
  const Section* ringsec = nullptr;
  for (const auto& s : sections)
    if (s.kind == "ring") {
      if (ringsec) throw ParseError(s.line, 1, "duplicate [ring] section");
      ringsec = &s;
    }
  if (!ringsec) throw ParseError(1, 1, "missing [ring] section");
  {
    const KeyLine& f = need_entry(*ringsec, "field");
    Field field = Field::rationals();
    if (f.value == "Q" || f.value == "q") {
      field = Field::rationals();
    } else {
      try {
        field = Field::prime(std::stoll(f.value));
      } catch (const Error& e) {
        throw ParseError(f.line, 1, e.what());
      } catch (...) {
        throw ParseError(f.line, 1, "field must be a prime or Q");
      }
    }
    const KeyLine& v = need_entry(*ringsec, "variables");
    const KeyLine& w = need_entry(*ringsec, "weights");
    try {
      pf.ring = make_ring(field, split(v.value, ','), parse_int_list(w.value, w.line));
    } catch (const Error& e) {
      throw ParseError(ringsec->line, 1, e.what());
    }
  }

  for (const auto& sec : sections) {
    if (sec.kind == "ring") continue;
    if (sec.kind == "potential") {
      const KeyLine& w = need_entry(sec, "W");
      pf.potential = parse_poly_at(pf.ring, w.value, w.line);
      if (pf.potential.is_zero()) throw ParseError(w.line, 1, "potential W must be nonzero");
      if (!pf.potential.is_homogeneous())
        throw ParseError(w.line, 1, "potential W must be homogeneous for the declared weights");
    } else if (sec.kind == "mf") {
      if (sec.arg.empty()) throw ParseError(sec.line, 1, "[mf] needs a name: [mf A]");
      if (pf.potential.is_zero())
        throw ParseError(sec.line, 1, "[potential] must come before any [mf] block");
      MfBlock b;
      b.name = sec.arg;
      if (pf.find_mf(b.name))
        throw ParseError(sec.line, 1, "duplicate factorization name '" + b.name + "'");
      const KeyLine& d0 = need_entry(sec, "degrees0");
      const KeyLine& d1 = need_entry(sec, "degrees1");
      b.deg0 = parse_int_list(d0.value, d0.line);
      b.deg1 = parse_int_list(d1.value, d1.line);
      const KeyLine& m1 = need_entry(sec, "delta1");
      const KeyLine& m0 = need_entry(sec, "delta0");
      int w2 = pf.potential.wdeg2().deg2;
      std::vector<int> d1rows = b.deg1;
      for (auto& t : d1rows) t += w2;
      b.delta1 =
          build_matrix(pf.ring, parse_matrix(pf.ring, m1.value, m1.line), b.deg0, b.deg1,
                       "delta1", m1.line);
      b.delta0 = build_matrix(pf.ring, parse_matrix(pf.ring, m0.value, m0.line), d1rows,
                              b.deg0, "delta0", m0.line);
      MatrixFactorization mf =
          make_mf(pf.ring, pf.potential, b.deg0, b.deg1, b.delta1, b.delta0);
      VerifyReport vr = verify(mf);
      if (!vr.ok)
        throw ParseError(sec.line, 1,
                         "factorization '" + b.name + "' is invalid: " + vr.violations.front());
      pf.mfs.push_back(std::move(b));
    } else if (sec.kind == "group") {
      if (pf.group) throw ParseError(sec.line, 1, "duplicate [group] section");
      if (pf.potential.is_zero())
        throw ParseError(sec.line, 1, "[potential] must come before [group]");
      GroupBlock g;
      const KeyLine& ord = need_entry(sec, "orders");
      g.data.orders = parse_int_list(ord.value, ord.line);
      const KeyLine& chi = need_entry(sec, "chi");
      g.data.chi = parse_int_list(chi.value, chi.line);
      g.data.action.assign(static_cast<size_t>(pf.ring->nvars()), {});
      for (int v = 0; v < pf.ring->nvars(); ++v) {
        const KeyLine& a = need_entry(sec, "action", pf.ring->vars[static_cast<size_t>(v)]);
        g.data.action[static_cast<size_t>(v)] = parse_int_list(a.value, a.line);
      }
      try {
        g.data.validate(*pf.ring);
        g.data.chi = g.data.normalized(g.data.chi);
        for (auto& a : g.data.action) a = g.data.normalized(a);
        if (!g.data.is_semi_invariant(pf.potential, g.data.chi))
          throw Error("W is not chi-semi-invariant for the declared action");
      } catch (const Error& e) {
        throw ParseError(sec.line, 1, e.what());
      }
      for (const auto& e : sec.entries) {
        if (e.key != "weights0" && e.key != "weights1") continue;
        if (e.subject.empty())
          throw ParseError(e.line, 1, e.key + " needs a factorization name");
        auto ws = parse_weight_list(e.value, e.line);
        for (auto& w : ws) {
          if (static_cast<int>(w.size()) != g.data.nfactors())
            throw ParseError(e.line, 1, "weight tuple size must match the factor count");
          w = g.data.normalized(w);
        }
        (e.key == "weights0" ? g.weights0 : g.weights1)[e.subject] = std::move(ws);
      }
      pf.group = std::move(g);
    } else if (sec.kind == "points") {
      for (const auto& e : sec.entries) {
        Point pt;
        for (auto& tok : split(e.value, ',')) {
          try {
            pt.push_back(pf.ring->field.from_string(tok));
          } catch (const Error& err) {
            throw ParseError(e.line, 1, err.what());
          }
        }
        if (static_cast<int>(pt.size()) != pf.ring->nvars())
          throw ParseError(e.line, 1, "point needs one coordinate per variable");
        pf.points.emplace_back(e.key, std::move(pt));
      }
    } else if (sec.kind == "map") {
      if (pf.map) throw ParseError(sec.line, 1, "duplicate [map] section");
      if (pf.potential.is_zero())
        throw ParseError(sec.line, 1, "[potential] must come before [map]");
      MapBlock mb;
      const KeyLine& v = need_entry(sec, "variables");
      const KeyLine& w = need_entry(sec, "weights");
      try {
        mb.source_ring =
            make_ring(pf.ring->field, split(v.value, ','), parse_int_list(w.value, w.line));
      } catch (const Error& e) {
        throw ParseError(sec.line, 1, e.what());
      }
      const KeyLine& pot = need_entry(sec, "potential");
      mb.source_potential = parse_poly_at(mb.source_ring, pot.value, pot.line);
      for (int i = 0; i < mb.source_ring->nvars(); ++i) {
        const KeyLine& im =
            need_entry(sec, "image", mb.source_ring->vars[static_cast<size_t>(i)]);
        mb.images.push_back(parse_poly_at(pf.ring, im.value, im.line));
      }
      const KeyLine& bs = need_entry(sec, "basis");
      for (auto& tok : split(bs.value, ',')) {
        Poly p = parse_poly_at(pf.ring, tok, bs.line);
        if (p.nterms() != 1 || !pf.ring->field.is_one(p.leading().c))
          throw ParseError(bs.line, 1, "basis entries must be monomials with coefficient 1");
        mb.basis.push_back(p.leading().m);
      }
      try {
        FiniteRingMap fm = make_finite_map(mb.source_ring, pf.ring, mb.images, mb.basis);
        if (mb.source_potential.substitute(pf.ring, fm.images) != pf.potential)
          throw Error("map potential does not pull back to the problem potential");
      } catch (const Error& e) {
        throw ParseError(sec.line, 1, e.what());
      }
      pf.map = std::move(mb);
    } else {
      throw ParseError(sec.line, 1, "unknown section [" + sec.kind + "]");
    }
  }
  if (pf.potential.is_zero()) throw ParseError(1, 1, "missing [potential] section");

  // group weights must reference existing factorizations and verify
  if (pf.group) {
    for (const auto& [name, ws] : pf.group->weights1) {
      (void)ws;
      if (!pf.group->weights0.count(name))
        throw ParseError(1, 1, "missing weights0 for factorization '" + name + "'");
    }
    for (const auto& [name, ws] : pf.group->weights0) {
      (void)ws;
      if (!pf.find_mf(name))
        throw ParseError(1, 1, "group weights reference unknown factorization '" + name + "'");
      if (!pf.group->weights1.count(name))
        throw ParseError(1, 1, "missing weights1 for factorization '" + name + "'");
      EquivariantMF emf = pf.equivariant(name);
      VerifyReport vr = verify_equivariant(emf);
      if (!vr.ok)
        throw ParseError(1, 1,
                         "equivariant structure on '" + name + "' is invalid: " +
                             vr.violations.front());
    }
  }
  return pf;
}

namespace {

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace

std::string serialize_problem(const ProblemFile& pf) {
  std::ostringstream os;
  os << "[ring]\n";
  os << "field = " << (pf.ring->field.is_prime_field() ? std::to_string(pf.ring->field.p())
                                                       : std::string("Q"))
     << "\n";
  os << "variables = ";
  for (size_t i = 0; i < pf.ring->vars.size(); ++i)
    os << (i ? ", " : "") << pf.ring->vars[i];
  os << "\nweights = " << join_ints(pf.ring->weights) << "\n\n";
  os << "[potential]\nW = " << pf.potential.str() << "\n";
  for (const auto& b : pf.mfs) {
    os << "\n[mf " << b.name << "]\n";
    os << "degrees0 = " << join_ints(b.deg0) << "\n";
    os << "degrees1 = " << join_ints(b.deg1) << "\n";
    os << "delta1 = " << b.delta1.str() << "\n";
    os << "delta0 = " << b.delta0.str() << "\n";
  }
  if (pf.group) {
    os << "\n[group]\n";
    os << "orders = " << join_ints(pf.group->data.orders) << "\n";
    for (int v = 0; v < pf.ring->nvars(); ++v)
      os << "action " << pf.ring->vars[static_cast<size_t>(v)] << " = "
         << join_ints(pf.group->data.action[static_cast<size_t>(v)]) << "\n";
    os << "chi = " << join_ints(pf.group->data.chi) << "\n";
    for (const auto& [name, ws] : pf.group->weights0) {
      auto fmt = [](const std::vector<CharVec>& list) {
        std::string s;
        for (size_t i = 0; i < list.size(); ++i) {
          if (i) s += " ; ";
          s += join_ints(list[i]);
        }
        return s;
      };
      os << "weights0 " << name << " = " << fmt(ws) << "\n";
      os << "weights1 " << name << " = " << fmt(pf.group->weights1.at(name)) << "\n";
    }
  }
  if (!pf.points.empty()) {
    os << "\n[points]\n";
    for (const auto& [name, pt] : pf.points) {
      os << name << " = ";
      for (size_t i = 0; i < pt.size(); ++i)
        os << (i ? ", " : "") << pf.ring->field.str(pt[i]);
      os << "\n";
    }
  }
  if (pf.map) {
    os << "\n[map]\n";
    os << "variables = ";
    for (size_t i = 0; i < pf.map->source_ring->vars.size(); ++i)
      os << (i ? ", " : "") << pf.map->source_ring->vars[i];
    os << "\nweights = " << join_ints(pf.map->source_ring->weights) << "\n";
    os << "potential = " << pf.map->source_potential.str() << "\n";
    for (int i = 0; i < pf.map->source_ring->nvars(); ++i)
      os << "image " << pf.map->source_ring->vars[static_cast<size_t>(i)] << " = "
         << pf.map->images[static_cast<size_t>(i)].str() << "\n";
    os << "basis = ";
    for (size_t i = 0; i < pf.map->basis.size(); ++i)
      os << (i ? ", " : "") << expo_str(*pf.ring, pf.map->basis[i]);
    os << "\n";
  }
  return os.str();
}

}  // namespace mfc
