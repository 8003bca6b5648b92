#pragma once

#include <cstdint>

#include "sgc/scheme.hpp"

namespace sgc {

struct OracleOptions {
  // Largest number of joint (W, S) states enumerated.
  std::uint64_t max_states = std::uint64_t{1} << 22;
};

// Reads SGC_ORACLE_CAP (a power of two) when set; the default otherwise.
// Throws InvalidConfig on a malformed value.
OracleOptions oracle_options_from_env();

// p^(L_W + D), saturating at UINT64_MAX.
std::uint64_t oracle_states(const LinearScheme& s);

// Brute-force check by enumerating every (W, S). For each receiver with an
// intended message: decodability from the joint counts and the constructed
// decoder on every state. For each receiver with an excluded message: the
// exact mutual information in bits between the excluded messages and
// (X, S_known). Throws TooLarge beyond the cap.
VerifyReport oracle_verify(const LinearScheme& s, const OracleOptions& options = {});

}  // namespace sgc
