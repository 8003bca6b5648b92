#include "sgc/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sgc/error.hpp"

namespace sgc {
namespace {

std::vector<MessagePart> single_message(ReceiverSet qualified, const FMatrix& a) {
  if (a.cols() == 0) return {};
  return {MessagePart{qualified, a.cols()}};
}

std::vector<std::size_t> complement(std::vector<std::size_t> cols, std::size_t n) {
  std::vector<bool> in(n, false);
  for (auto c : cols) in[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < n; ++c)
    if (!in[c]) out.push_back(c);
  return out;
}

}  // namespace

LinearScheme::LinearScheme(PrimeField field, std::int64_t blocks, int receivers, ReceiverSet qualified,
                           std::vector<Segment> layout, FMatrix a, FMatrix b)
    : LinearScheme(field, blocks, receivers, qualified, std::move(layout), single_message(qualified, a), a, b) {}

LinearScheme::LinearScheme(PrimeField field, std::int64_t blocks, int receivers, ReceiverSet qualified,
                           std::vector<Segment> layout, std::vector<MessagePart> messages, FMatrix a, FMatrix b)
    : field_(field),
      blocks_(blocks),
      receivers_(receivers),
      qualified_(qualified),
      layout_(std::move(layout)),
      messages_(std::move(messages)),
      a_(std::move(a)),
      b_(std::move(b)) {
  if (!(a_.field() == field_) || !(b_.field() == field_)) throw FieldMismatch("scheme matrices over another field");
  if (blocks_ < 1) throw ShapeMismatch("L must be positive");
  if (receivers_ < 2 || receivers_ > kMaxReceivers) throw ShapeMismatch("K outside [2, 20]");
  const ReceiverSet all = ReceiverSet::range(receivers_);
  if (!qualified_.subset_of(all)) throw ShapeMismatch("qualified set outside [1..K]");
  if (a_.rows() != b_.rows()) {
    throw ShapeMismatch("A has " + std::to_string(a_.rows()) + " rows, B has " + std::to_string(b_.rows()));
  }
  std::size_t width = 0;
  for (const auto& s : layout_) {
    if (s.subset.empty() || !s.subset.subset_of(all)) throw ShapeMismatch("layout subset " + s.subset.to_string());
    width += s.width;
  }
  if (width != b_.cols()) {
    throw ShapeMismatch("layout width " + std::to_string(width) + " vs " + std::to_string(b_.cols()) + " key columns");
  }
  // Canonical partition: no empty parts, adjacent parts with equal targets merged.
  std::vector<MessagePart> merged;
  for (const auto& m : messages_) {
    if (m.width == 0) continue;
    if (!merged.empty() && merged.back().intended == m.intended) {
      merged.back().width += m.width;
    } else {
      merged.push_back(m);
    }
  }
  messages_ = std::move(merged);
  std::size_t msg = 0;
  for (const auto& m : messages_) {
    if (!m.intended.subset_of(all)) throw ShapeMismatch("message intended set " + m.intended.to_string());
    msg += m.width;
  }
  if (msg != a_.cols()) {
    throw ShapeMismatch("message parts cover " + std::to_string(msg) + " of " + std::to_string(a_.cols()) +
                        " columns");
  }
}

LinearScheme LinearScheme::empty(PrimeField field, int receivers, ReceiverSet qualified, std::int64_t blocks) {
  return LinearScheme(field, blocks, receivers, qualified, {}, {}, FMatrix(field, 0, 0), FMatrix(field, 0, 0));
}

std::vector<std::size_t> LinearScheme::intended_columns(int k) const {
  std::vector<std::size_t> out;
  std::size_t offset = 0;
  for (const auto& m : messages_) {
    if (m.intended.contains(k))
      for (std::size_t i = 0; i < m.width; ++i) out.push_back(offset + i);
    offset += m.width;
  }
  return out;
}

std::vector<std::size_t> LinearScheme::excluded_columns(int k) const {
  return complement(intended_columns(k), a_.cols());
}

std::vector<std::size_t> known_columns(const LinearScheme& s, int k) {
  std::vector<std::size_t> out;
  std::size_t offset = 0;
  for (const auto& seg : s.layout()) {
    if (seg.subset.contains(k))
      for (std::size_t i = 0; i < seg.width; ++i) out.push_back(offset + i);
    offset += seg.width;
  }
  return out;
}

std::vector<std::size_t> unknown_columns(const LinearScheme& s, int k) {
  return complement(known_columns(s, k), s.key_symbols());
}

bool verify_correctness(const LinearScheme& s, int k) {
  const auto intended = s.intended_columns(k);
  const FMatrix a_int = s.a().select_columns(intended);
  const FMatrix a_exc = s.a().select_columns(s.excluded_columns(k));
  const FMatrix b_unk = s.b().select_columns(unknown_columns(s, k));
  const FMatrix noise = hstack(a_exc, b_unk);
  return rank(hstack(a_int, noise)) == intended.size() + rank(noise);
}

Symbols verify_security(const LinearScheme& s, int k) {
  const FMatrix a_exc = s.a().select_columns(s.excluded_columns(k));
  const FMatrix a_int = s.a().select_columns(s.intended_columns(k));
  const FMatrix b_unk = s.b().select_columns(unknown_columns(s, k));
  const FMatrix noise = hstack(a_int, b_unk);
  return static_cast<Symbols>(rank(hstack(a_exc, noise))) - static_cast<Symbols>(rank(noise));
}

bool VerifyReport::passed(double tolerance) const {
  for (const auto& [k, ok] : correct)
    if (!ok) return false;
  for (const auto& [k, ok] : decoder_ok)
    if (!ok) return false;
  for (const auto& [k, bits] : leakage_bits)
    if (bits > tolerance) return false;
  return true;
}

VerifyReport verify(const LinearScheme& s) {
  VerifyReport r;
  r.field = s.field().modulus();
  const double log_p = std::log2(static_cast<double>(r.field));
  for (int k = 1; k <= s.receivers(); ++k) {
    if (!s.intended_columns(k).empty()) r.correct[k] = verify_correctness(s, k);
    if (!s.excluded_columns(k).empty()) r.leakage_bits[k] = static_cast<double>(verify_security(s, k)) * log_p;
  }
  return r;
}

FMatrix decoder_for(const LinearScheme& s, int k) {
  const auto& f = s.field();
  const auto known = known_columns(s, k);
  const auto intended = s.intended_columns(k);
  const std::size_t lx = s.transmit_symbols(), lw = s.message_symbols(), d = s.key_symbols();
  // Observation map G: [X; S_known] = G [W; S].
  FMatrix g(f, lx + known.size(), lw + d);
  for (std::size_t r = 0; r < lx; ++r) {
    for (std::size_t c = 0; c < lw; ++c) g.set(r, c, s.a().at(r, c));
    for (std::size_t c = 0; c < d; ++c) g.set(r, lw + c, s.b().at(r, c));
  }
  for (std::size_t i = 0; i < known.size(); ++i) g.set(lx + i, lw + known[i], f.one());
  // Target: rows selecting the intended message symbols.
  FMatrix target(f, intended.size(), lw + d);
  for (std::size_t i = 0; i < intended.size(); ++i) target.set(i, intended[i], f.one());
  auto m = solve_right(g.transpose(), target.transpose());
  if (!m) throw NotDecodable("receiver " + std::to_string(k) + " cannot decode its messages");
  return m->transpose();
}

LinearScheme concat(PrimeField field, int receivers, ReceiverSet qualified, std::span<const LinearScheme> parts) {
  std::int64_t blocks = parts.empty() ? 1 : parts.front().blocks();
  std::vector<FMatrix> as, bs;
  std::vector<Segment> layout;
  std::vector<MessagePart> messages;
  for (const auto& p : parts) {
    if (!(p.field() == field)) {
      throw FieldMismatch("concat of GF(" + std::to_string(field.modulus()) + ") and GF(" +
                          std::to_string(p.field().modulus()) + ") schemes");
    }
    if (p.receivers() != receivers || p.qualified() != qualified) {
      throw ShapeMismatch("concat needs equal K and qualified sets");
    }
    if (p.blocks() != blocks) throw ShapeMismatch("concat needs equal block counts");
    as.push_back(p.a());
    bs.push_back(p.b());
    layout.insert(layout.end(), p.layout().begin(), p.layout().end());
    messages.insert(messages.end(), p.messages().begin(), p.messages().end());
  }
  return LinearScheme(field, blocks, receivers, qualified, std::move(layout), std::move(messages),
                      block_diagonal(field, as), block_diagonal(field, bs));
}

LinearScheme concat(std::span<const LinearScheme> parts) {
  if (parts.empty()) return LinearScheme::empty(PrimeField(2), 2, ReceiverSet{1});
  const auto& first = parts.front();
  return concat(first.field(), first.receivers(), first.qualified(), parts);
}

namespace {

// Groups the key columns by subset, keeping their relative order.
std::map<ReceiverSet, std::vector<std::size_t>> columns_by_subset(const LinearScheme& s) {
  std::map<ReceiverSet, std::vector<std::size_t>> out;
  std::size_t offset = 0;
  for (const auto& seg : s.layout()) {
    auto& cols = out[seg.subset];
    for (std::size_t i = 0; i < seg.width; ++i) cols.push_back(offset + i);
    offset += seg.width;
  }
  return out;
}

LinearScheme with_key_columns(const LinearScheme& s, std::vector<Segment> layout, FMatrix b) {
  return LinearScheme(s.field(), s.blocks(), s.receivers(), s.qualified(), std::move(layout), s.messages(), s.a(),
                      std::move(b));
}

}  // namespace

LinearScheme merge_layout(const LinearScheme& s) {
  std::vector<Segment> layout;
  std::vector<std::size_t> order;
  for (const auto& [subset, cols] : columns_by_subset(s)) {
    if (cols.empty()) continue;
    layout.push_back({subset, cols.size()});
    order.insert(order.end(), cols.begin(), cols.end());
  }
  return with_key_columns(s, std::move(layout), s.b().select_columns(order));
}

LinearScheme fit_to_config(const LinearScheme& s, const KeyConfig& config) {
  if (config.receivers() != s.receivers()) throw InvalidConfig("scheme and config disagree on K");
  const auto by_subset = columns_by_subset(s);
  for (const auto& [subset, cols] : by_subset) {
    const auto available = static_cast<std::size_t>(config.size_of(subset) * s.blocks());
    if (cols.size() > available) {
      throw InvalidConfig("scheme uses " + std::to_string(cols.size()) + " symbols of key " + subset.to_string() +
                          ", config provides " + std::to_string(available));
    }
  }
  std::vector<Segment> layout;
  std::size_t width = 0;
  for (const auto& [subset, size] : config.keys()) {
    layout.push_back({subset, static_cast<std::size_t>(size * s.blocks())});
    width += layout.back().width;
  }
  FMatrix b(s.field(), s.transmit_symbols(), width);
  std::size_t offset = 0;
  for (const auto& seg : layout) {
    auto it = by_subset.find(seg.subset);
    if (it != by_subset.end()) {
      for (std::size_t i = 0; i < it->second.size(); ++i)
        for (std::size_t r = 0; r < b.rows(); ++r) b.set(r, offset + i, s.b().at(r, it->second[i]));
    }
    offset += seg.width;
  }
  return with_key_columns(s, std::move(layout), std::move(b));
}

LinearScheme relabeled(const LinearScheme& s, const Relabeling& r) {
  if (r.receivers() != s.receivers()) throw ShapeMismatch("relabeling size differs from K");
  std::vector<Segment> layout;
  for (const auto& seg : s.layout()) layout.push_back({r(seg.subset), seg.width});
  std::vector<MessagePart> messages;
  for (const auto& m : s.messages()) messages.push_back({r(m.intended), m.width});
  return LinearScheme(s.field(), s.blocks(), s.receivers(), r(s.qualified()), std::move(layout), std::move(messages),
                      s.a(), s.b());
}

std::map<ReceiverSet, std::size_t> key_usage(const LinearScheme& s) {
  std::map<ReceiverSet, std::size_t> out;
  std::size_t offset = 0;
  for (const auto& seg : s.layout()) {
    auto& used = out[seg.subset];
    for (std::size_t i = 0; i < seg.width; ++i) {
      bool nonzero = false;
      for (std::size_t r = 0; r < s.transmit_symbols() && !nonzero; ++r) nonzero = !s.b().at(r, offset + i).is_zero();
      if (nonzero) ++used;
    }
    offset += seg.width;
  }
  return out;
}

Transcript simulate(const LinearScheme& s, std::uint64_t seed) {
  const auto& f = s.field();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> draw(0, f.modulus() - 1);
  Transcript t;
  for (std::size_t i = 0; i < s.message_symbols(); ++i) t.message.push_back(FieldElem{draw(rng)});
  for (std::size_t i = 0; i < s.key_symbols(); ++i) t.keys.push_back(FieldElem{draw(rng)});
  const auto xa = s.a().apply(t.message);
  const auto xb = s.b().apply(t.keys);
  for (std::size_t i = 0; i < xa.size(); ++i) t.transmit.push_back(f.add(xa[i], xb[i]));

  for (int k = 1; k <= s.receivers(); ++k) {
    const auto intended = s.intended_columns(k);
    if (intended.empty()) continue;
    const FMatrix m = decoder_for(s, k);
    std::vector<FieldElem> view = t.transmit;
    for (auto c : known_columns(s, k)) view.push_back(t.keys[c]);
    auto decoded = m.apply(view);
    for (std::size_t i = 0; i < intended.size(); ++i) {
      if (decoded[i] != t.message[intended[i]]) {
        throw DecodeFailure("receiver " + std::to_string(k) + " decoded symbol " + std::to_string(intended[i]) +
                            " wrongly");
      }
    }
    t.decoded[k] = std::move(decoded);
  }
  return t;
}

}  // namespace sgc
