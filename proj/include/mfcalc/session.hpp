#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mfcalc/problem.hpp"
#include "mfcalc/rng.hpp"

namespace mfc {

using Json = nlohmann::ordered_json;

/// A loaded problem plus the raw text (for digests). Commands that need no
/// problem file (corpus) run on an empty session.
struct Session {
  std::string text;
  std::optional<ProblemFile> problem;
};

Session open_session(const std::string& text);  // throws ParseError on bad input

struct CommandResult {
  Json report;
  int exit_code = 0;  // 0 ok, 1 check failure, 2 input error
};

/// Dispatches one CLI command. Reports are deterministic for a fixed input
/// and seed except for the "timings" object.
CommandResult run_command(Session& session, const std::string& command, const Json& options);

/// FNV-1a hash of the input text, hex-encoded.
std::string input_digest(const std::string& text);

/// Seeded random Koszul factorizations over F_p in up to max_vars variables.
struct CorpusSpec {
  std::uint64_t seed = 1;
  int count = 100;
  std::int64_t p = 101;
  int max_vars = 3;
};
std::vector<MatrixFactorization> generate_corpus(const CorpusSpec& spec);

}  // namespace mfc
