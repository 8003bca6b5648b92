#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "sgc/fmatrix.hpp"
#include "sgc/keyspace.hpp"
#include "sgc/rational.hpp"

namespace sgc {

// A run of key columns of B drawn from s_U.
struct Segment {
  ReceiverSet subset;
  std::size_t width = 0;
  friend bool operator==(const Segment&, const Segment&) = default;
};

// A run of message columns of A meant for `intended`; every other receiver
// must learn nothing about it.
struct MessagePart {
  ReceiverSet intended;
  std::size_t width = 0;
  friend bool operator==(const MessagePart&, const MessagePart&) = default;
};

// X = A W + B S over GF(p), with S laid out as key segments. L is the number
// of key blocks the scheme spans; rate = L_W / L, bandwidth = L_X / L.
class LinearScheme {
 public:
  // Single message for the whole qualified set. Throws ShapeMismatch when the
  // matrices, layout and message parts disagree.
  LinearScheme(PrimeField field, std::int64_t blocks, int receivers, ReceiverSet qualified, std::vector<Segment> layout,
               FMatrix a, FMatrix b);
  LinearScheme(PrimeField field, std::int64_t blocks, int receivers, ReceiverSet qualified, std::vector<Segment> layout,
               std::vector<MessagePart> messages, FMatrix a, FMatrix b);

  static LinearScheme empty(PrimeField field, int receivers, ReceiverSet qualified, std::int64_t blocks = 1);

  const PrimeField& field() const { return field_; }
  std::int64_t blocks() const { return blocks_; }
  int receivers() const { return receivers_; }
  ReceiverSet qualified() const { return qualified_; }
  const std::vector<Segment>& layout() const { return layout_; }
  const std::vector<MessagePart>& messages() const { return messages_; }
  const FMatrix& a() const { return a_; }
  const FMatrix& b() const { return b_; }

  std::size_t message_symbols() const { return a_.cols(); }
  std::size_t transmit_symbols() const { return a_.rows(); }
  std::size_t key_symbols() const { return b_.cols(); }
  Rational rate() const { return {static_cast<std::int64_t>(a_.cols()), blocks_}; }
  Rational bandwidth() const { return {static_cast<std::int64_t>(a_.rows()), blocks_}; }

  // Message columns receiver k must decode / must learn nothing about.
  std::vector<std::size_t> intended_columns(int k) const;
  std::vector<std::size_t> excluded_columns(int k) const;

  friend bool operator==(const LinearScheme&, const LinearScheme&) = default;

 private:
  PrimeField field_;
  std::int64_t blocks_;
  int receivers_;
  ReceiverSet qualified_;
  std::vector<Segment> layout_;
  std::vector<MessagePart> messages_;
  FMatrix a_;
  FMatrix b_;
};

// Columns of B whose segment subset contains k.
std::vector<std::size_t> known_columns(const LinearScheme& s, int k);
std::vector<std::size_t> unknown_columns(const LinearScheme& s, int k);

// rank([A_int | A_exc | B_unk]) = |int| + rank([A_exc | B_unk]).
bool verify_correctness(const LinearScheme& s, int k);
// rank([A_exc | A_int | B_unk]) - rank([A_int | B_unk]), in symbols.
Symbols verify_security(const LinearScheme& s, int k);

struct VerifyReport {
  std::uint64_t field = 2;
  bool oracle_used = false;
  // Receivers with at least one intended message.
  std::map<int, bool> correct;
  // Receivers with at least one excluded message.
  std::map<int, double> leakage_bits;
  // Oracle only: the constructed decoder recovered W on every state.
  std::map<int, bool> decoder_ok;

  bool passed(double tolerance = 1e-9) const;
};

VerifyReport verify(const LinearScheme& s);

// M with M [X; S_known] = W_intended for every input. Throws NotDecodable.
FMatrix decoder_for(const LinearScheme& s, int k);

// Block-diagonal composition. Throws FieldMismatch on differing fields and
// ShapeMismatch on differing K, qualified sets or block counts.
LinearScheme concat(std::span<const LinearScheme> parts);
LinearScheme concat(PrimeField field, int receivers, ReceiverSet qualified, std::span<const LinearScheme> parts);

// One segment per subset, in subset order; B columns permuted to match.
LinearScheme merge_layout(const LinearScheme& s);

// Lays the key vector out as every key of `config` with width L_U * L, in
// key order; unused symbols become zero columns. Throws InvalidConfig when
// the scheme needs more of some key than the config provides.
LinearScheme fit_to_config(const LinearScheme& s, const KeyConfig& config);

LinearScheme relabeled(const LinearScheme& s, const Relabeling& r);

// Key symbols used from each subset (columns of B that are not all zero).
std::map<ReceiverSet, std::size_t> key_usage(const LinearScheme& s);

struct Transcript {
  std::vector<FieldElem> message;
  std::vector<FieldElem> keys;
  std::vector<FieldElem> transmit;
  // Decoded intended symbols per receiver.
  std::map<int, std::vector<FieldElem>> decoded;
};

// Draws W and S from mt19937_64(seed), encodes, and runs every receiver's
// decoder. Throws DecodeFailure when a decoder misses.
Transcript simulate(const LinearScheme& s, std::uint64_t seed);

}  // namespace sgc
