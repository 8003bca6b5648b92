#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace sgc {

inline constexpr int kMaxReceivers = 20;

// A set of receivers drawn from [1..K], stored as a bitmask (bit k-1 is
// receiver k). Doubles as the label of a combinatorial key s_U.
class ReceiverSet {
 public:
  constexpr ReceiverSet() = default;
  constexpr ReceiverSet(std::initializer_list<int> receivers) {
    for (int k : receivers) bits_ |= bit(k);
  }
  static constexpr ReceiverSet from_bits(std::uint32_t bits) {
    ReceiverSet s;
    s.bits_ = bits;
    return s;
  }
  static constexpr ReceiverSet single(int k) { return from_bits(bit(k)); }
  // {1, ..., k}
  static constexpr ReceiverSet range(int k) { return from_bits(k <= 0 ? 0u : ((1u << k) - 1u)); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(int k) const { return k >= 1 && k <= kMaxReceivers && (bits_ & bit(k)) != 0; }
  constexpr bool intersects(ReceiverSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(ReceiverSet o) const { return (bits_ & ~o.bits_) == 0; }
  // Largest member, 0 for the empty set.
  constexpr int max_member() const { return bits_ == 0 ? 0 : 32 - std::countl_zero(bits_); }

  constexpr ReceiverSet with(int k) const { return from_bits(bits_ | bit(k)); }
  constexpr ReceiverSet without(int k) const { return from_bits(bits_ & ~bit(k)); }

  friend constexpr ReceiverSet operator|(ReceiverSet a, ReceiverSet b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr ReceiverSet operator&(ReceiverSet a, ReceiverSet b) { return from_bits(a.bits_ & b.bits_); }
  // Set difference.
  friend constexpr ReceiverSet operator-(ReceiverSet a, ReceiverSet b) { return from_bits(a.bits_ & ~b.bits_); }
  friend constexpr auto operator<=>(ReceiverSet, ReceiverSet) = default;

  std::vector<int> members() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  // "{1,3,4}"
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int k : members()) {
      if (!first) s += ",";
      s += std::to_string(k);
      first = false;
    }
    return s + "}";
  }

 private:
  static constexpr std::uint32_t bit(int k) { return std::uint32_t{1} << (k - 1); }
  std::uint32_t bits_ = 0;
};

// Nonempty subsets of `universe`, in increasing bitmask order.
inline std::vector<ReceiverSet> nonempty_subsets(ReceiverSet universe) {
  std::vector<ReceiverSet> out;
  const std::uint32_t u = universe.bits();
  for (std::uint32_t s = u; s != 0; s = (s - 1) & u) out.push_back(ReceiverSet::from_bits(s));
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace sgc
