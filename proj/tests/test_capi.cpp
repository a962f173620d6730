#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <string>

#include "mfcalc.h"

namespace {

const char* kA1 = R"([ring]
field = 101
variables = x
weights = 1

[potential]
W = x^2

[mf A]
degrees0 = 0
degrees1 = -2
delta1 = [[x]]
delta0 = [[x]]
)";

}  // namespace

TEST_CASE("version string") {
  REQUIRE(mfc_version() != nullptr);
  CHECK(std::string(mfc_version()).find("mfcalc") != std::string::npos);
}

TEST_CASE("open, run, close") {
  mfc_session* s = nullptr;
  REQUIRE(mfc_session_open(kA1, &s) == MFC_OK);
  REQUIRE(s != nullptr);
  CHECK(std::string(mfc_session_error(s)).empty());

  char* report = nullptr;
  int st = mfc_run(s, "verify", nullptr, &report);
  CHECK(st == MFC_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"ok\": true") != std::string::npos);
  mfc_string_free(report);

  st = mfc_run(s, "hom", R"({"source": "A", "window": [-8, 8]})", &report);
  CHECK(st == MFC_OK);
  CHECK(std::string(report).find("total_even") != std::string::npos);
  mfc_string_free(report);
  mfc_session_close(s);
}

TEST_CASE("parse errors surface through the session") {
  mfc_session* s = nullptr;
  int st = mfc_session_open("[ring]\nfield = banana\n", &s);
  CHECK(st == MFC_ERROR_PARSE);
  REQUIRE(s != nullptr);
  CHECK(std::string(mfc_session_error(s)).find("line") != std::string::npos);
  char* report = nullptr;
  CHECK(mfc_run(s, "verify", nullptr, &report) == MFC_ERROR_PARSE);
  CHECK(report == nullptr);
  mfc_session_close(s);
}

TEST_CASE("check failures are distinguished from input errors") {
  mfc_session* s = nullptr;
  REQUIRE(mfc_session_open(kA1, &s) == MFC_OK);
  char* report = nullptr;
  int st = mfc_run(s, "stabilize", R"({"mf": "A", "degree_bound": 2})", &report);
  CHECK(st == MFC_ERROR_CHECK_FAILED);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"ok\": false") != std::string::npos);
  mfc_string_free(report);

  st = mfc_run(s, "no_such_command", nullptr, &report);
  CHECK(st == MFC_ERROR_PARSE);
  mfc_string_free(report);
  mfc_session_close(s);
}

TEST_CASE("bad option JSON is an invalid argument") {
  mfc_session* s = nullptr;
  REQUIRE(mfc_session_open(kA1, &s) == MFC_OK);
  char* report = nullptr;
  CHECK(mfc_run(s, "verify", "{not json", &report) == MFC_ERROR_INVALID_ARGUMENT);
  CHECK(mfc_run(s, "verify", "[1,2]", &report) == MFC_ERROR_INVALID_ARGUMENT);
  mfc_session_close(s);
}

TEST_CASE("serialization round trips through the C surface") {
  mfc_session* s = nullptr;
  REQUIRE(mfc_session_open(kA1, &s) == MFC_OK);
  char* canon = nullptr;
  REQUIRE(mfc_session_serialize(s, &canon) == MFC_OK);
  REQUIRE(canon != nullptr);

  mfc_session* s2 = nullptr;
  REQUIRE(mfc_session_open(canon, &s2) == MFC_OK);
  char* canon2 = nullptr;
  REQUIRE(mfc_session_serialize(s2, &canon2) == MFC_OK);
  CHECK(std::strcmp(canon, canon2) == 0);
  mfc_string_free(canon);
  mfc_string_free(canon2);
  mfc_session_close(s);
  mfc_session_close(s2);
}

TEST_CASE("corpus runs on an empty session") {
  mfc_session* s = nullptr;
  REQUIRE(mfc_session_open("", &s) == MFC_OK);
  char* report = nullptr;
  int st = mfc_run(s, "corpus", R"({"seed": 3, "count": 3})", &report);
  CHECK(st == MFC_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("\"verify_passed\": 3") != std::string::npos);
  mfc_string_free(report);
  mfc_session_close(s);
}

TEST_CASE("opening files") {
  mfc_session* s = nullptr;
  int st = mfc_session_open_file("/nonexistent/path.mfp", &s);
  CHECK(st == MFC_ERROR_IO);
  if (s) CHECK(std::string(mfc_session_error(s)).find("cannot open") != std::string::npos);
  mfc_session_close(s);

  const char* tmp = "/tmp/mfcalc_capi_test.mfp";
  {
    std::FILE* f = std::fopen(tmp, "w");
    REQUIRE(f != nullptr);
    std::fputs(kA1, f);
    std::fclose(f);
  }
  s = nullptr;
  REQUIRE(mfc_session_open_file(tmp, &s) == MFC_OK);
  char* report = nullptr;
  CHECK(mfc_run(s, "verify", nullptr, &report) == MFC_OK);
  mfc_string_free(report);
  mfc_session_close(s);
}

TEST_CASE("null argument handling") {
  CHECK(mfc_session_open(kA1, nullptr) == MFC_ERROR_INVALID_ARGUMENT);
  mfc_session* s = nullptr;
  REQUIRE(mfc_session_open(kA1, &s) == MFC_OK);
  CHECK(mfc_run(nullptr, "verify", nullptr, nullptr) == MFC_ERROR_INVALID_ARGUMENT);
  char* out = nullptr;
  CHECK(mfc_run(s, nullptr, nullptr, &out) == MFC_ERROR_INVALID_ARGUMENT);
  CHECK(mfc_run(s, "verify", nullptr, nullptr) == MFC_ERROR_INVALID_ARGUMENT);
  mfc_session_close(s);
  mfc_session_close(nullptr);  // must be a safe no-op
  mfc_string_free(nullptr);
}
