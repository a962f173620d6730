// Command line front end; talks to the library through the C API only.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mfcalc.h"

namespace {

using Json = nlohmann::ordered_json;

struct CommonOpts {
  std::string file;
  std::string json_out;
  std::string field;
  std::string window;
  std::uint64_t seed = 1;
  int degree_bound = -9999;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool needs_file) {
  if (needs_file) cmd->add_option("file", c.file, "problem file")->required();
  cmd->add_option("--json", c.json_out, "write the JSON report to this file");
  cmd->add_option("--field", c.field, "expected field (p or Q); corpus: the field to use");
  cmd->add_option("--degree-bound", c.degree_bound, "internal degree bound (doubled units)");
  cmd->add_option("--seed", c.seed, "PRNG seed");
  cmd->add_option("--window", c.window, "internal degree window LO..HI (doubled units)");
}

bool parse_window(const std::string& w, int& lo, int& hi) {
  auto dots = w.find("..");
  if (dots == std::string::npos) return false;
  try {
    lo = std::stoi(w.substr(0, dots));
    hi = std::stoi(w.substr(dots + 2));
  } catch (...) {
    return false;
  }
  return true;
}

void apply_common(const CommonOpts& c, Json& options) {
  if (!c.field.empty()) options["field"] = c.field;
  if (c.degree_bound != -9999) options["degree_bound"] = c.degree_bound;
  if (!c.window.empty()) {
    int lo, hi;
    if (!parse_window(c.window, lo, hi)) {
      std::cerr << "bad --window, expected LO..HI\n";
      std::exit(2);
    }
    options["window"] = Json::array({lo, hi});
  }
}

int status_to_exit(int status) {
  if (status == MFC_OK) return 0;
  if (status == MFC_ERROR_CHECK_FAILED) return 1;
  return 2;
}

int run(const CommonOpts& c, const std::string& command, const Json& options) {
  mfc_session* s = nullptr;
  int st;
  if (command == "corpus" && c.file.empty())
    st = mfc_session_open("", &s);
  else
    st = mfc_session_open_file(c.file.c_str(), &s);
  if (st != MFC_OK) {
    std::cerr << "error: " << (s ? mfc_session_error(s) : "cannot open session") << "\n";
    mfc_session_close(s);
    return 2;
  }
  char* report = nullptr;
  st = mfc_run(s, command.c_str(), options.dump().c_str(), &report);
  int code = status_to_exit(st);
  if (report) {
    if (!c.json_out.empty()) {
      std::ofstream out(c.json_out);
      out << report;
    } else {
      std::cout << report;
    }
    mfc_string_free(report);
  } else {
    std::cerr << "error: " << mfc_session_error(s) << "\n";
  }
  mfc_session_close(s);
  return code;
}

int run_format(const CommonOpts& c) {
  mfc_session* s = nullptr;
  int st = mfc_session_open_file(c.file.c_str(), &s);
  if (st != MFC_OK) {
    std::cerr << "error: " << (s ? mfc_session_error(s) : "cannot open session") << "\n";
    mfc_session_close(s);
    return 2;
  }
  char* text = nullptr;
  st = mfc_session_serialize(s, &text);
  if (st != MFC_OK || !text) {
    std::cerr << "error: " << mfc_session_error(s) << "\n";
    mfc_session_close(s);
    return 2;
  }
  if (!c.json_out.empty()) {
    std::ofstream out(c.json_out);
    out << text;
  } else {
    std::cout << text;
  }
  mfc_string_free(text);
  mfc_session_close(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(mfc_version()) +
               " - a calculus of graded matrix factorizations"};
  app.require_subcommand(1);

  CommonOpts c;
  std::string mf, source, target, parity = "both";
  std::vector<int> positions;
  std::vector<std::string> mfs;
  int internal_degree = -9999;
  int count = 20, max_vars = 3;
  bool exhaustive = false, roundtrip = false;

  auto* v = app.add_subcommand("verify", "verify factorizations in a problem file");
  add_common(v, c, true);
  v->add_option("--mfs", mfs, "names to verify (default: all)");

  auto* hm = app.add_subcommand("hom", "stable Hom dimensions per internal degree");
  add_common(hm, c, true);
  hm->add_option("source", source, "source factorization")->required();
  hm->add_option("target", target, "target factorization (default: source)");
  hm->add_option("--parity", parity, "even | odd | both");
  hm->add_option("--internal-degree", internal_degree, "restrict to one internal degree");

  auto* ex = app.add_subcommand("exactness", "2-periodic complex exactness check");
  add_common(ex, c, true);
  ex->add_option("--mf", mf, "factorization name");
  ex->add_option("--positions", positions, "complex positions to check");

  auto* ck = app.add_subcommand("coker", "cokernel presentation and Hilbert function");
  add_common(ck, c, true);
  ck->add_option("--mf", mf, "factorization name");

  auto* stz = app.add_subcommand("stabilize", "stabilization round trip for coker(mf)");
  add_common(stz, c, true);
  stz->add_option("--mf", mf, "factorization name");

  auto* sup = app.add_subcommand("support", "fiber cohomology over sample points");
  add_common(sup, c, true);
  sup->add_option("--mf", mf, "factorization name");
  sup->add_flag("--exhaustive", exhaustive, "enumerate all rational zero-locus points");

  auto* eq = app.add_subcommand("equivariant", "equivariant verification and invariant dims");
  add_common(eq, c, true);
  eq->add_option("--mf", mf, "factorization name");
  eq->add_option("--target", target, "second factorization (default: same)");

  auto* pf = app.add_subcommand("pushforward", "restriction of scalars along the [map] block");
  add_common(pf, c, true);
  pf->add_option("--mf", mf, "factorization name");

  auto* cp = app.add_subcommand("corpus", "seeded random corpus battery");
  add_common(cp, c, false);
  cp->add_option("--count", count, "number of instances");
  cp->add_option("--max-vars", max_vars, "variables per instance (1..3)");
  cp->add_flag("--roundtrip", roundtrip, "include the stabilization round trip");

  auto* fmt = app.add_subcommand("format", "parse and reprint the canonical problem file");
  add_common(fmt, c, true);

  CLI11_PARSE(app, argc, argv);

  Json options = Json::object();
  apply_common(c, options);
  if (v->parsed()) {
    if (!mfs.empty()) options["mfs"] = mfs;
    return run(c, "verify", options);
  }
  if (hm->parsed()) {
    options["source"] = source;
    if (!target.empty()) options["target"] = target;
    if (parity != "both") options["parity"] = parity;
    if (internal_degree != -9999) options["internal_degree"] = internal_degree;
    return run(c, "hom", options);
  }
  auto with_mf = [&](const char* cmdname) {
    if (!mf.empty()) options["mf"] = mf;
    return run(c, cmdname, options);
  };
  if (ex->parsed()) {
    if (!positions.empty()) options["positions"] = positions;
    return with_mf("exactness");
  }
  if (ck->parsed()) return with_mf("coker");
  if (stz->parsed()) return with_mf("stabilize");
  if (sup->parsed()) {
    if (exhaustive) options["exhaustive"] = true;
    return with_mf("support");
  }
  if (eq->parsed()) {
    if (!target.empty()) options["target"] = target;
    return with_mf("equivariant");
  }
  if (pf->parsed()) return with_mf("pushforward");
  if (cp->parsed()) {
    options["seed"] = c.seed;
    options["count"] = count;
    options["max_vars"] = max_vars;
    if (roundtrip) options["roundtrip"] = true;
    return run(c, "corpus", options);
  }
  if (fmt->parsed()) return run_format(c);
  return 2;
}
