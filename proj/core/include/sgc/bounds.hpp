#pragma once

#include <cstddef>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "sgc/keyspace.hpp"
#include "sgc/rational.hpp"

namespace sgc {

// min over qualified q and eavesdropper e of H(z_q | z_e).
Symbols rate_converse(const KeyConfig& config);

struct BwOptions {
  // Largest number of key sub-collections u_e enumerated per eavesdropper.
  // Beyond it only {}, all keys, and each single key are tried.
  std::size_t max_subcollections = std::size_t{1} << 16;
  // Checked between (e, Q) work chunks.
  std::stop_token stop{};
};

struct BwBound {
  Rational value{0};
  // Some eavesdropper had too many keys for the full enumeration.
  bool heuristic = false;
  // The stop token fired; value is the best bound found so far.
  bool interrupted = false;
  // Witness of the maximum (eavesdropper 0 when value comes from R <= 0).
  int eavesdropper = 0;
  ReceiverSet group{};
  std::vector<ReceiverSet> conditioning{};
};

// max over e, nonempty Q within the qualified set and key sub-collections
// u of e's keys of |Q| R - (sum_q H(z_q|u) - H(z_Q|u)).
BwBound bw_converse(const KeyConfig& config, Rational rate, const BwOptions& options = {});

enum class Setting { unicast, multicast, groupcast_2of4, symmetric, instance_2of5 };
const char* to_string(Setting s);

struct ExactResult {
  Setting setting;
  Rational capacity;
  // nullopt: the minimum bandwidth is not characterized for this shape.
  std::optional<Rational> beta_star;
};

// Capacity and minimum bandwidth when the config falls in a solved setting.
std::optional<ExactResult> exact_capacity(const KeyConfig& config);

// The two-of-five alignment topology: keys {1},{1,2,3},{1,4,5},{2,4},{2,5},
// qualified {1,2}, all of size `key_size`. `relabeling` maps the config's
// labels onto these canonical ones.
struct Fig4Match {
  Symbols key_size;
  Relabeling relabeling;
};
std::optional<Fig4Match> match_fig4(const KeyConfig& config);
KeyConfig fig4_config(Symbols key_size);

struct PriorityCheck {
  bool gap = false;
  Symbols rate_upper = 0;
  std::optional<Rational> capacity;
  std::string message;
};

// Flags configs where the conditional-entropy rate bound is loose.
PriorityCheck priority_check(const KeyConfig& config);

struct BoundsReport {
  Symbols rate_upper = 0;
  // Rate at which the bandwidth bound is evaluated: C if known, else rate_upper.
  Rational bw_rate{0};
  BwBound bw_lower;
  std::optional<ExactResult> exact;
  bool gap = false;
};

BoundsReport compute_bounds(const KeyConfig& config, const BwOptions& options = {});

std::int64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace sgc
