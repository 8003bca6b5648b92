#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sgc/keyspace.hpp"
#include "sgc/scheme.hpp"

namespace sgc::cli {

// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kUnsolved = 3,
  kInternalFailure = 4,
  kRejected = 5,
};

// Runs `sgc` with args[0] as the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// The JSON document printed by `sgc bounds`.
std::string bounds_json(const KeyConfig& config);

// The JSON document printed by `sgc verify`. Sets `passed` and lists the
// offending receivers in `failures`.
std::string verify_json(const LinearScheme& scheme, bool with_oracle, bool& passed, std::string& failures);

}  // namespace sgc::cli
