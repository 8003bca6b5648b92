#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "sgc/keyspace.hpp"
#include "sgc/scheme.hpp"

namespace sgc {

// Building blocks of the two-of-four scheme (qualified {1,2}, K = 4, GF(2)).
enum class Component { otp12, cmp1, cmp2, cmp3, cmp4, cmp5, cmp6 };
inline constexpr std::size_t kComponentCount = 7;

struct ComponentSig {
  Component id;
  const char* name;
  // Key bits used per invocation.
  std::map<ReceiverSet, int> consumes;
  int msg_bits;
  int tx_bits;
};

const std::array<ComponentSig, kComponentCount>& component_signatures();
const ComponentSig& signature(Component c);

// One invocation: one message bit, one bit of each consumed key.
LinearScheme component_scheme(Component c);

// Key sizes of a normalized two-of-four config (L_1 <= L_2, L_124 <= L_123).
struct TwoOfFourSizes {
  Symbols s1 = 0, s2 = 0, s12 = 0, s13 = 0, s14 = 0, s23 = 0, s24 = 0, s123 = 0, s124 = 0;

  static TwoOfFourSizes of(const KeyConfig& normalized);
};

struct TwoOfFourPlan {
  std::array<Symbols, kComponentCount> count{};
  // Case label, e.g. "1.2.3.1".
  std::string branch;

  Symbols rate() const;
  Symbols bandwidth() const;
  // Key bits used per subset.
  std::map<ReceiverSet, Symbols> consumption() const;
};

// Walks the case tree. Requires normalized sizes; throws WrongShape otherwise.
TwoOfFourPlan plan_2of4(const TwoOfFourSizes& sizes);

}  // namespace sgc
