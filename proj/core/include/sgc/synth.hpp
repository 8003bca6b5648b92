#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgc/keyspace.hpp"
#include "sgc/scheme.hpp"

namespace sgc {

enum class FieldPolicy {
  // p = least prime >= the largest Cauchy dimension sum.
  cauchy_threshold,
  // Try smaller primes with seeded random matrices first, keep the first
  // one that verifies, fall back to cauchy_threshold.
  compact,
};

struct SynthOptions {
  std::uint64_t seed = 0;
  FieldPolicy field_policy = FieldPolicy::cauchy_threshold;
  int max_escalations = 8;
  int compact_attempts = 64;
};

// One (u, i) group of the symmetric construction.
struct GroupContribution {
  int u = 0;
  int i = 0;
  Symbols rate = 0;
  Symbols bandwidth = 0;
};

struct SynthMeta {
  std::string builder;
  std::uint64_t seed = 0;
  int escalations = 0;
  std::string branch;
  std::vector<GroupContribution> groups;
  std::vector<std::string> notes;
};

struct SynthResult {
  LinearScheme scheme;
  SynthMeta meta;
};

// Each builder returns a scheme in the config's own labels, laid out over
// every key of the config, that passed verify(). Degenerate configs (C = 0)
// give an empty scheme. VerificationFailed signals an internal bug.
SynthResult synth_unicast(const KeyConfig& config, const SynthOptions& options = {});
SynthResult synth_multicast(const KeyConfig& config, const SynthOptions& options = {});
SynthResult synth_multicast_k4_bw(const KeyConfig& config, const SynthOptions& options = {});
SynthResult synth_groupcast_2of4(const KeyConfig& config, const SynthOptions& options = {});
SynthResult synth_symmetric(const KeyConfig& config, const SynthOptions& options = {});
SynthResult synth_instance_2of5(Symbols key_size);
SynthResult synth_instance_2of5(const KeyConfig& config);

// Dispatch on the config's shape. Throws Unsolved outside the solved settings.
SynthResult synthesize(const KeyConfig& config, const SynthOptions& options = {});

// Three messages W1 -> {1}, W2 -> {2}, W12 -> {1,2}; receiver 3 holds no key.
struct RegionSizes {
  Symbols l1 = 0, l2 = 0, l12 = 0;
};
struct RegionRates {
  Symbols r1 = 0, r2 = 0, r12 = 0;
};

// The first violated region inequality, or nullopt when feasible.
std::optional<std::string> region_violation(const RegionSizes& sizes, const RegionRates& rates);
Symbols region_bandwidth(const RegionSizes& sizes, const RegionRates& rates);
KeyConfig region_config(const RegionSizes& sizes);

// Throws Infeasible naming the violated inequality.
SynthResult synth_multimessage(const RegionSizes& sizes, const RegionRates& rates);

}  // namespace sgc
