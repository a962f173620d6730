#include "mfcalc/session.hpp"

#include <chrono>

#include "mfcalc/hom.hpp"
#include "mfcalc/sing.hpp"

namespace mfc {

namespace {

const char* names3[3] = {"x", "y", "z"};

Poly random_homog(SplitMix64& rng, const RingPtr& ring, int deg2) {
  auto monos = monomials_of_wdeg2(*ring, deg2);
  if (monos.empty()) throw Error("random_homog: empty degree piece");
  const Field& k = ring->field;
  for (;;) {
    std::vector<Poly::Term> terms;
    for (const auto& m : monos) {
      std::int64_t c = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(k.p())));
      if (c != 0) terms.push_back({m, Scalar::residue(c)});
    }
    Poly p = Poly::collect(ring, std::move(terms));
    if (!p.is_zero()) return p;
  }
}

}  // namespace

std::vector<MatrixFactorization> generate_corpus(const CorpusSpec& spec) {
  SplitMix64 rng(spec.seed);
  Field k = Field::prime(spec.p);
  std::vector<MatrixFactorization> out;
  while (static_cast<int>(out.size()) < spec.count) {
    int nvars = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(
                        std::min(spec.max_vars, 3))));
    std::vector<std::string> vars(names3, names3 + nvars);
    std::vector<int> weights(static_cast<size_t>(nvars), 1);
    if (nvars <= 2 && rng.below(100) < 15)
      weights[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(nvars)))] = 2;
    RingPtr ring = make_ring(k, vars, weights);

    // Koszul length; keep rank-4 objects out of the 3-variable ring
    int n = nvars == 3 ? 1 + static_cast<int>(rng.below(2))
                       : (rng.below(100) < 15 ? 3 : 1 + static_cast<int>(rng.below(2)));
    // doubled factor degrees reachable in this grading, small ones only
    std::vector<int> reach;
    const int maxd = nvars == 3 ? 4 : 8;
    for (int d = 2; d <= maxd; d += 2)
      if (count_monomials_of_wdeg2(*ring, d) > 0) reach.push_back(d);
    int a = reach[rng.below(reach.size())];
    int b = reach[rng.below(std::min<size_t>(reach.size(), 2))];
    int degw2 = a + b;
    std::vector<int> da2;
    for (int j = 0; j < n; ++j) {
      std::vector<int> ok;
      for (int d : reach)
        if (degw2 - d >= 2 && count_monomials_of_wdeg2(*ring, degw2 - d) > 0) ok.push_back(d);
      da2.push_back(ok[rng.below(ok.size())]);
    }
    std::vector<Poly> as, bs;
    for (int j = 0; j < n; ++j) {
      as.push_back(random_homog(rng, ring, da2[static_cast<size_t>(j)]));
      bs.push_back(random_homog(rng, ring, degw2 - da2[static_cast<size_t>(j)]));
    }
    // every prefix of the potential sum must stay nonzero for the tensor
    Poly w = Poly::zero(ring);
    bool degenerate = false;
    for (int j = 0; j < n; ++j) {
      w = w + as[static_cast<size_t>(j)] * bs[static_cast<size_t>(j)];
      if (w.is_zero()) degenerate = true;
    }
    if (degenerate) continue;
    out.push_back(koszul_factorization(as, bs));
  }
  return out;
}

std::string input_digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Session open_session(const std::string& text) {
  Session s;
  s.text = text;
  std::string stripped = text;
  bool blank = true;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  if (!blank) s.problem = parse_problem(text);
  return s;
}

namespace {

Json window_json(const HomWindowReport& rep) {
  Json spots = Json::array();
  for (const auto& s : rep.spots)
    spots.push_back(Json{{"internal_degree", s.internal_deg2},
                         {"dim_even", s.dim_even},
                         {"dim_odd", s.dim_odd}});
  return Json{{"window", {rep.lo2, rep.hi2}},
              {"spots", spots},
              {"total_even", rep.total_even},
              {"total_odd", rep.total_odd},
              {"stabilized", rep.stabilized}};
}

Json mf_json(const MatrixFactorization& mf) {
  return Json{{"degrees0", mf.deg0},
              {"degrees1", mf.deg1},
              {"delta1", mf.delta1.str()},
              {"delta0", mf.delta0.str()},
              {"twist", mf.twist}};
}

const ProblemFile& need_problem(const Session& s) {
  if (!s.problem) throw Error("this command needs a problem file");
  return *s.problem;
}

std::string need_mf_name(const ProblemFile& pf, const Json& options, const char* key = "mf") {
  if (options.contains(key)) return options.at(key).get<std::string>();
  if (pf.mfs.size() == 1) return pf.mfs.front().name;
  throw Error(std::string("option '") + key + "' is required when the file has several "
              "factorizations");
}

void check_field_override(const ProblemFile& pf, const Json& options) {
  if (!options.contains("field")) return;
  std::string f = options.at("field").get<std::string>();
  std::string have =
      pf.ring->field.is_prime_field() ? std::to_string(pf.ring->field.p()) : std::string("Q");
  if (f != have)
    throw Error("field override '" + f + "' conflicts with the problem file field " + have);
}

struct Handler {
  Json results;
  std::vector<std::string> warnings;
  bool ok = true;
};

Handler cmd_verify(const ProblemFile& pf, const Json& options) {
  Handler h;
  Json arr = Json::array();
  std::vector<std::string> names;
  if (options.contains("mfs"))
    for (const auto& n : options.at("mfs")) names.push_back(n.get<std::string>());
  else
    for (const auto& b : pf.mfs) names.push_back(b.name);
  for (const auto& name : names) {
    MatrixFactorization mf = pf.mf(name);
    VerifyReport rep = verify(mf);
    Json item{{"mf", name}, {"ok", rep.ok}, {"violations", rep.violations}};
    if (pf.group && pf.group->weights0.count(name)) {
      VerifyReport erep = verify_equivariant(pf.equivariant(name));
      item["equivariant_ok"] = erep.ok;
      item["equivariant_violations"] = erep.violations;
      if (!erep.ok) h.ok = false;
    }
    if (!rep.ok) h.ok = false;
    arr.push_back(std::move(item));
  }
  h.results["verified"] = arr;
  return h;
}

Handler cmd_hom(const ProblemFile& pf, const Json& options) {
  Handler h;
  std::string a = need_mf_name(pf, options, "source");
  std::string b = options.contains("target") ? options.at("target").get<std::string>() : a;
  MatrixFactorization e = pf.mf(a), f = pf.mf(b);
  int lo, hi;
  if (options.contains("window")) {
    lo = options.at("window").at(0).get<int>();
    hi = options.at("window").at(1).get<int>();
  } else {
    std::tie(lo, hi) = default_hom_window(e);
  }
  if (options.contains("internal_degree")) {
    int d = options.at("internal_degree").get<int>();
    lo = hi = d;
  }
  HomWindowReport rep = stable_hom_window(e, f, lo, hi);
  std::string parity = options.value("parity", "both");
  if (parity == "both") {
    h.results = window_json(rep);
  } else {
    if (parity != "even" && parity != "odd") throw Error("parity must be even, odd or both");
    bool odd = parity == "odd";
    Json spots = Json::array();
    for (const auto& s : rep.spots)
      spots.push_back(Json{{"internal_degree", s.internal_deg2},
                           {"dim", odd ? s.dim_odd : s.dim_even}});
    h.results = Json{{"window", {rep.lo2, rep.hi2}},
                     {"parity", parity},
                     {"spots", spots},
                     {"total", odd ? rep.total_odd : rep.total_even},
                     {"stabilized", rep.stabilized}};
  }
  h.results["source"] = a;
  h.results["target"] = b;
  if (!rep.stabilized)
    h.warnings.push_back("window edges carry nonzero dims; totals may be truncated");
  return h;
}

Handler cmd_exactness(const ProblemFile& pf, const Json& options) {
  Handler h;
  std::string name = need_mf_name(pf, options);
  int bound = options.value("degree_bound", 20);
  std::vector<int> positions = {-1, 0, 1};
  if (options.contains("positions"))
    positions = options.at("positions").get<std::vector<int>>();
  ExactnessReport rep = check_exactness(pf.mf(name), bound, positions);
  Json defects = Json::array();
  for (const auto& d : rep.defects)
    defects.push_back(Json{{"position", d.position}, {"degree", d.deg2}, {"defect", d.defect}});
  h.results = Json{{"mf", name},
                   {"degree_bound", bound},
                   {"positions", positions},
                   {"defects", defects},
                   {"exact", rep.ok()}};
  h.ok = rep.ok();
  return h;
}

Handler cmd_coker(const ProblemFile& pf, const Json& options) {
  Handler h;
  std::string name = need_mf_name(pf, options);
  int bound = options.value("degree_bound", 20);
  MatrixFactorization mf = pf.mf(name);
  GradedModulePresentation m = coker_functor(mf);
  Json hilb = Json::array();
  for (int d = module_min_degree(m); d <= bound; ++d)
    hilb.push_back(Json{{"degree", d}, {"dim", graded_dim(m, d)}});
  ConnectingReport con = connecting_sequence_check(mf, bound);
  h.results = Json{{"mf", name},
                   {"generator_degrees", m.gen_deg},
                   {"relations", m.relations.str()},
                   {"hilbert", hilb},
                   {"annihilated_by_W", potential_annihilates(m, bound)},
                   {"connecting_sequence_exact", con.ok()}};
  h.ok = con.ok();
  return h;
}

Handler cmd_stabilize(const ProblemFile& pf, const Json& options) {
  Handler h;
  std::string name = need_mf_name(pf, options);
  MatrixFactorization mf = pf.mf(name);
  int bound = options.value("degree_bound", -1);
  RoundtripReport rep = cokernel_roundtrip_check(mf, bound);
  h.results = Json{{"mf", name},
                   {"degree_bound", rep.bound2},
                   {"window", {rep.window_lo2, rep.window_hi2}},
                   {"stabilized", mf_json(rep.stabilized)},
                   {"failures", rep.failures},
                   {"ok", rep.ok}};
  h.ok = rep.ok;
  return h;
}

Handler cmd_support(const ProblemFile& pf, const Json& options) {
  Handler h;
  std::string name = need_mf_name(pf, options);
  MatrixFactorization mf = pf.mf(name);
  std::vector<Point> pts;
  Json names = Json::array();
  if (options.value("exhaustive", false)) {
    pts = enumerate_zero_locus(pf.potential);
    for (size_t i = 0; i < pts.size(); ++i) names.push_back("zero_locus_" + std::to_string(i));
  } else {
    if (pf.points.empty()) throw Error("no [points] block and no --exhaustive flag");
    for (const auto& [n, p] : pf.points) {
      if (!pf.ring->field.is_zero(pf.potential.evaluate(p))) {
        throw Error("point '" + n + "' is not on the zero locus of W");
      }
      pts.push_back(p);
      names.push_back(n);
    }
  }
  SupportReport rep = support_sample(mf, pts);
  Json arr = Json::array();
  for (size_t i = 0; i < rep.entries.size(); ++i) {
    const auto& e = rep.entries[i];
    Json coords = Json::array();
    for (const auto& c : e.pt) coords.push_back(pf.ring->field.str(c));
    arr.push_back(Json{{"name", names[i]},
                       {"point", coords},
                       {"h0", e.h0},
                       {"h1", e.h1},
                       {"singular", e.singular}});
  }
  Json supp = Json::array();
  for (int i : rep.support) supp.push_back(names[static_cast<size_t>(i)]);
  h.results = Json{{"mf", name},
                   {"points", arr},
                   {"support", supp},
                   {"hard_failure", rep.hard_failure}};
  h.warnings = rep.warnings;
  h.ok = !rep.hard_failure;
  return h;
}

Handler cmd_equivariant(const ProblemFile& pf, const Json& options) {
  Handler h;
  std::string a = need_mf_name(pf, options);
  std::string b = options.contains("target") ? options.at("target").get<std::string>() : a;
  EquivariantMF e = pf.equivariant(a);
  EquivariantMF f = pf.equivariant(b);
  VerifyReport vr = verify_equivariant(e);
  int w2 = e.base.degW2();
  int lo = -w2, hi = w2;
  if (options.contains("window")) {
    lo = options.at("window").at(0).get<int>();
    hi = options.at("window").at(1).get<int>();
  }
  AveragingCheck avg = averaging_operator_check(e, f, 0, 0);
  // character sum rule on each piece of the window
  bool sum_rule = true;
  Json dims = Json::array();
  for (int parity = 0; parity <= 1 && sum_rule; ++parity)
    for (int d = lo; d <= hi; ++d) {
      int total = 0;
      for (const auto& psi : e.group.all_characters())
        total += equivariant_hom_dim(e, equivariant_twist(f, psi), parity, 0, d);
      int plain = stable_hom_dim(e.base, f.base, parity, d);
      if (total != plain) {
        sum_rule = false;
        h.warnings.push_back("character sum rule fails at parity " + std::to_string(parity) +
                             ", degree " + std::to_string(d));
        break;
      }
      if (parity == 0)
        dims.push_back(Json{{"internal_degree", d},
                            {"invariant_dim_even", equivariant_hom_dim(e, f, 0, 0, d)},
                            {"invariant_dim_odd", equivariant_hom_dim(e, f, 1, 0, d)}});
    }
  CorrespondenceReport corr = quotient_correspondence_check(e, f, lo, hi);
  h.results = Json{{"mf", a},
                   {"target", b},
                   {"verify_ok", vr.ok},
                   {"violations", vr.violations},
                   {"averaging_idempotent", avg.idempotent},
                   {"averaging_commutes", avg.commutes},
                   {"character_sum_rule", sum_rule},
                   {"correspondence_ok", corr.ok()},
                   {"invariant_dims", dims}};
  h.ok = vr.ok && avg.idempotent && avg.commutes && sum_rule && corr.ok();
  return h;
}

Handler cmd_pushforward(const ProblemFile& pf, const Json& options) {
  Handler h;
  std::string name = need_mf_name(pf, options);
  int bound = options.value("degree_bound", 20);
  FiniteRingMap map = pf.finite_map();
  MatrixFactorization mf = pf.mf(name);
  MatrixFactorization pushed = restrict_scalars(mf, pf.map->source_potential, map);
  VerifyReport vr = verify(pushed);
  PushforwardCokerReport rep = pushforward_coker_check(mf, pf.map->source_potential, map, bound);
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back(Json{{"degree", r.deg2},
                        {"dim_pushforward", r.dim_pushforward},
                        {"dim_original", r.dim_original}});
  h.results = Json{{"mf", name},
                   {"degree_scale", map.degree_scale},
                   {"pushforward", mf_json(pushed)},
                   {"verify_ok", vr.ok},
                   {"coker_dims", rows},
                   {"coker_dims_agree", rep.ok}};
  h.ok = vr.ok && rep.ok;
  return h;
}

Handler cmd_corpus(const Json& options) {
  Handler h;
  CorpusSpec spec;
  spec.seed = options.value("seed", 1ULL);
  spec.count = options.value("count", 20);
  if (options.contains("field")) spec.p = std::stoll(options.at("field").get<std::string>());
  spec.max_vars = options.value("max_vars", 3);
  int bound = options.value("degree_bound", 20);
  bool with_roundtrip = options.value("roundtrip", false);

  auto corpus = generate_corpus(spec);
  SplitMix64 point_rng(spec.seed ^ 0x5eedULL);
  Json failures = Json::array();
  int n_verify = 0, n_exact = 0, n_connect = 0, n_cone = 0, n_support = 0, n_round = 0;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const auto& mf = corpus[i];
    auto fail = [&](const std::string& what) {
      failures.push_back(Json{{"index", i}, {"check", what}});
      h.ok = false;
    };
    if (verify(mf).ok)
      ++n_verify;
    else
      fail("verify");
    if (check_exactness(mf, bound).ok())
      ++n_exact;
    else
      fail("exactness");
    if (connecting_sequence_check(mf, bound).ok())
      ++n_connect;
    else
      fail("connecting");
    if (homotopy_solve(identity_morphism(cone(identity_morphism(mf)))).has_value())
      ++n_cone;
    else
      fail("cone_id_contractible");
    {
      std::vector<Point> pts;
      const Field& k = mf.ring->field;
      int want = 12;
      for (int tries = 0; tries < 400 && static_cast<int>(pts.size()) < want; ++tries) {
        Point pt;
        for (int v = 0; v < mf.ring->nvars(); ++v)
          pt.push_back(Scalar::residue(
              static_cast<std::int64_t>(point_rng.below(static_cast<std::uint64_t>(k.p())))));
        if (k.is_zero(mf.potential.evaluate(pt))) pts.push_back(pt);
      }
      SupportReport rep = support_sample(mf, pts);
      bool fine = !rep.hard_failure;
      for (const auto& e : rep.entries)
        if (e.h0 != e.h1) fine = false;
      if (fine)
        ++n_support;
      else
        fail("support");
    }
    if (with_roundtrip) {
      if (cokernel_roundtrip_check(mf).ok)
        ++n_round;
      else
        fail("roundtrip");
    }
  }
  h.results = Json{{"seed", spec.seed},
                   {"count", spec.count},
                   {"field", spec.p},
                   {"degree_bound", bound},
                   {"verify_passed", n_verify},
                   {"exactness_passed", n_exact},
                   {"connecting_passed", n_connect},
                   {"cone_id_passed", n_cone},
                   {"support_passed", n_support},
                   {"failures", failures}};
  if (with_roundtrip) h.results["roundtrip_passed"] = n_round;
  return h;
}

}  // namespace

CommandResult run_command(Session& session, const std::string& command, const Json& options) {
  auto t0 = std::chrono::steady_clock::now();
  CommandResult res;
  res.report = Json{{"command", command},
                    {"input_digest", input_digest(session.text)},
                    {"options", options}};
  try {
    Handler h;
    if (command == "corpus") {
      h = cmd_corpus(options);
    } else {
      const ProblemFile& pf = need_problem(session);
      check_field_override(pf, options);
      if (command == "verify")
        h = cmd_verify(pf, options);
      else if (command == "hom")
        h = cmd_hom(pf, options);
      else if (command == "exactness")
        h = cmd_exactness(pf, options);
      else if (command == "coker")
        h = cmd_coker(pf, options);
      else if (command == "stabilize")
        h = cmd_stabilize(pf, options);
      else if (command == "support")
        h = cmd_support(pf, options);
      else if (command == "equivariant")
        h = cmd_equivariant(pf, options);
      else if (command == "pushforward")
        h = cmd_pushforward(pf, options);
      else
        throw Error("unknown command '" + command + "'");
    }
    res.report["results"] = h.results;
    res.report["warnings"] = h.warnings;
    res.report["ok"] = h.ok;
    res.exit_code = h.ok ? 0 : 1;
  } catch (const Error& e) {
    res.report["error"] = e.what();
    res.report["ok"] = false;
    res.exit_code = 2;
  } catch (const std::exception& e) {
    res.report["error"] = std::string("invalid input: ") + e.what();
    res.report["ok"] = false;
    res.exit_code = 2;
  }
  auto t1 = std::chrono::steady_clock::now();
  res.report["timings"] = Json{
      {"total_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()}};
  return res;
}

}  // namespace mfc
