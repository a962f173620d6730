#include "mfcalc.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "mfcalc/session.hpp"

using mfc::Json;

struct mfc_session {
  mfc::Session impl;
  std::string last_error;
  bool usable = false;
};

namespace {

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* mfc_version(void) { return "mfcalc 1.0.0"; }

int mfc_session_open(const char* problem_text, mfc_session** out_session) {
  if (!out_session) return MFC_ERROR_INVALID_ARGUMENT;
  *out_session = nullptr;
  auto* s = new (std::nothrow) mfc_session();
  if (!s) return MFC_ERROR_INTERNAL;
  *out_session = s;
  try {
    s->impl = mfc::open_session(problem_text ? problem_text : "");
    s->usable = true;
    return MFC_OK;
  } catch (const mfc::ParseError& e) {
    s->last_error = e.what();
    return MFC_ERROR_PARSE;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return MFC_ERROR_PARSE;
  }
}

int mfc_session_open_file(const char* path, mfc_session** out_session) {
  if (!path || !out_session) return MFC_ERROR_INVALID_ARGUMENT;
  std::ifstream in(path);
  if (!in) {
    *out_session = new (std::nothrow) mfc_session();
    if (*out_session) (*out_session)->last_error = std::string("cannot open ") + path;
    return MFC_ERROR_IO;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return mfc_session_open(ss.str().c_str(), out_session);
}

void mfc_session_close(mfc_session* s) { delete s; }

const char* mfc_session_error(const mfc_session* s) {
  return s ? s->last_error.c_str() : "null session";
}

int mfc_run(mfc_session* s, const char* command, const char* options_json,
            char** out_report_json) {
  if (!s || !command || !out_report_json) return MFC_ERROR_INVALID_ARGUMENT;
  *out_report_json = nullptr;
  if (!s->usable) {
    if (s->last_error.empty()) s->last_error = "session failed to open";
    return MFC_ERROR_PARSE;
  }
  try {
    Json options = Json::object();
    if (options_json && *options_json) {
      options = Json::parse(options_json, nullptr, true);
      if (!options.is_object()) {
        s->last_error = "options must be a JSON object";
        return MFC_ERROR_INVALID_ARGUMENT;
      }
    }
    mfc::CommandResult res = mfc::run_command(s->impl, command, options);
    *out_report_json = dup_string(res.report.dump(2) + "\n");
    if (!*out_report_json) return MFC_ERROR_INTERNAL;
    if (res.exit_code == 0) return MFC_OK;
    if (res.exit_code == 1) {
      s->last_error = "one or more checks failed";
      return MFC_ERROR_CHECK_FAILED;
    }
    s->last_error = res.report.contains("error")
                        ? res.report.at("error").get<std::string>()
                        : "input error";
    return MFC_ERROR_PARSE;
  } catch (const Json::exception& e) {
    s->last_error = std::string("bad options JSON: ") + e.what();
    return MFC_ERROR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return MFC_ERROR_INTERNAL;
  }
}

int mfc_session_serialize(mfc_session* s, char** out_text) {
  if (!s || !out_text) return MFC_ERROR_INVALID_ARGUMENT;
  *out_text = nullptr;
  if (!s->usable || !s->impl.problem) {
    s->last_error = "no problem file loaded";
    return MFC_ERROR_INVALID_ARGUMENT;
  }
  try {
    *out_text = dup_string(mfc::serialize_problem(*s->impl.problem));
    return *out_text ? MFC_OK : MFC_ERROR_INTERNAL;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return MFC_ERROR_INTERNAL;
  }
}

void mfc_string_free(char* p) { std::free(p); }

}  // extern "C"
