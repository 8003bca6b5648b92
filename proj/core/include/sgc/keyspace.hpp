#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sgc/receiver_set.hpp"

namespace sgc {

// Key and entropy sizes, counted in field symbols (multiply by log2 p for bits).
using Symbols = std::int64_t;

// A permutation of receiver labels 1..K. image()[k-1] is the new label of
// receiver k.
class Relabeling {
 public:
  static Relabeling identity(int receivers);
  // Throws InvalidConfig unless `image` is a permutation of 1..K.
  explicit Relabeling(std::vector<int> image);

  int receivers() const { return static_cast<int>(image_.size()); }
  int operator()(int k) const { return image_[static_cast<std::size_t>(k - 1)]; }
  ReceiverSet operator()(ReceiverSet s) const;
  Relabeling inverse() const;
  bool is_identity() const;
  const std::vector<int>& image() const { return image_; }

  friend bool operator==(const Relabeling&, const Relabeling&) = default;

 private:
  std::vector<int> image_;
};

// Combinatorial key configuration: an independent uniform key s_U of L_U
// symbols for each nonempty U within [1..K]. Receiver k holds every s_U
// with k in U. Only keys with L_U > 0 are stored.
class KeyConfig {
 public:
  // Throws InvalidConfig on K outside [2, 20], a qualified set that is empty,
  // total, or outside [1..K], or an invalid key subset / negative size.
  KeyConfig(int receivers, ReceiverSet qualified, const std::map<ReceiverSet, Symbols>& keys);

  int receivers() const { return receivers_; }
  ReceiverSet all_receivers() const { return ReceiverSet::range(receivers_); }
  ReceiverSet qualified() const { return qualified_; }
  ReceiverSet eavesdroppers() const { return all_receivers() - qualified_; }
  const std::map<ReceiverSet, Symbols>& keys() const { return keys_; }

  Symbols size_of(ReceiverSet key) const;
  Symbols total_symbols() const;
  // Keys held by receiver k (z_k), in key order.
  std::vector<ReceiverSet> keys_of(int k) const;

  KeyConfig scaled(Symbols factor) const;
  KeyConfig relabeled(const Relabeling& r) const;
  // Drops keys every eavesdropper holds and keys no qualified receiver holds;
  // neither can contribute to any scheme.
  KeyConfig without_useless_keys() const;

  friend bool operator==(const KeyConfig&, const KeyConfig&) = default;

 private:
  int receivers_;
  ReceiverSet qualified_;
  std::map<ReceiverSet, Symbols> keys_;
};

struct SymbolRange {
  Symbols begin = 0;
  Symbols end = 0;
};

// A sub-collection of key symbols: whole keys or index ranges within keys.
// Used as the conditioning variable of the entropy calculus.
class KeyCollection {
 public:
  KeyCollection() = default;

  static KeyCollection whole(std::span<const ReceiverSet> keys);
  // Everything receiver k holds (z_k).
  static KeyCollection held_by(const KeyConfig& config, int k);

  KeyCollection& add_whole(ReceiverSet key);
  // Throws InvalidConfig for an empty or negative range.
  KeyCollection& add(ReceiverSet key, SymbolRange range);

  // Symbols of s_key covered, given L_key = size. Throws InvalidConfig if a
  // stored range reaches outside [0, size).
  Symbols covered(ReceiverSet key, Symbols size) const;
  bool empty() const { return whole_.empty() && ranges_.empty(); }

 private:
  std::vector<ReceiverSet> whole_;
  std::map<ReceiverSet, std::vector<SymbolRange>> ranges_;
};

// H(z_A | given) in symbols: sum of the unconditioned parts of every key
// that some receiver in A holds.
Symbols entropy_of(const KeyConfig& config, ReceiverSet receivers, const KeyCollection& given = {});

// I(z_A; z_B | given) in symbols: the unconditioned parts of keys reaching
// both A and B.
Symbols mutual_info(const KeyConfig& config, ReceiverSet a, ReceiverSet b, const KeyCollection& given = {});

// Per-cardinality key sizes L^[u] (index u, entry 0 unused) when every
// subset of equal cardinality has equal size; nullopt otherwise.
std::optional<std::vector<Symbols>> symmetric_profile(const KeyConfig& config);
bool is_symmetric(const KeyConfig& config);

enum class NormalForm {
  // K = 4, one eavesdropper relabeled to 4; H(z1|z4) <= H(z2|z4), H(z3|z4)
  // and L_12 <= L_13.
  multicast_k4,
  // K = 4, qualified {1,2}; L_1 <= L_2 and L_124 <= L_123.
  groupcast_2of4,
};

struct Normalized {
  KeyConfig config;
  // Maps original labels to normalized ones; apply inverse() to undo.
  Relabeling relabeling;
};

// Throws WrongShape when K or the qualified count do not fit the form.
Normalized normalize_labels(const KeyConfig& config, NormalForm form);

}  // namespace sgc
