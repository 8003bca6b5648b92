#include "sgc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "sgc/error.hpp"

namespace sgc {
namespace {

using u64 = std::uint64_t;

// A linear image y = M (W; S) over GF(p), kept packed while the state runs
// through an odometer. Each lane holds one coordinate in b bits, where the
// top bit is spare room for the modular reduction.
class LinearView {
 public:
  // rows[i][j] is the coefficient of state digit j in coordinate i.
  LinearView(u64 p, std::size_t digits, const std::vector<std::vector<u64>>& rows) : p_(p), digits_(digits) {
    lane_bits_ = static_cast<std::size_t>(std::bit_width(p - 1)) + 1;
    if (lane_bits_ > 63) throw TooLarge("field too large for the oracle");
    per_word_ = 64 / lane_bits_;
    lanes_ = rows.size();
    words_ = (lanes_ + per_word_ - 1) / per_word_;
    for (std::size_t i = 0; i < per_word_; ++i) {
      high_ |= u64{1} << (i * lane_bits_ + lane_bits_ - 1);
      bias_ |= ((u64{1} << (lane_bits_ - 1)) - p) << (i * lane_bits_);
    }
    columns_.assign(digits_ * words_, 0);
    for (std::size_t j = 0; j < digits_; ++j)
      for (std::size_t i = 0; i < lanes_; ++i)
        columns_[j * words_ + i / per_word_] |= (rows[i][j] % p) << ((i % per_word_) * lane_bits_);
  }

  std::size_t words() const { return words_; }
  std::size_t used_bits() const { return lanes_ * lane_bits_; }

  // Calls visit(y) once per state, y pointing at words() packed words.
  template <typename Visit>
  void run(Visit&& visit) const {
    std::vector<u64> digit(digits_, 0), y(words_, 0);
    while (true) {
      visit(y.data());
      std::size_t j = 0;
      for (; j < digits_; ++j) {
        const u64* col = &columns_[j * words_];
        for (std::size_t w = 0; w < words_; ++w) y[w] = add(y[w], col[w]);
        if (++digit[j] < p_) break;
        digit[j] = 0;
      }
      if (j == digits_) return;
    }
  }

 private:
  // Lane-wise (a + b) mod p for reduced lanes.
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    const u64 over = ((s + bias_) & high_) >> (lane_bits_ - 1);
    return s - over * p_;
  }

  u64 p_;
  std::size_t digits_;
  std::size_t lane_bits_ = 2;
  std::size_t per_word_ = 32;
  std::size_t lanes_ = 0;
  std::size_t words_ = 0;
  u64 high_ = 0;
  u64 bias_ = 0;
  std::vector<u64> columns_;
};

// Entropy in bits and support size of a uniformly weighted multiset.
struct Counts {
  double entropy_bits = 0;
  std::size_t distinct = 0;
};

// LSD radix sort on the low `bits` bits, 11 bits per pass.
void radix_sort(std::vector<u64>& keys, std::size_t bits) {
  constexpr std::size_t kDigit = 11;
  constexpr std::size_t kBuckets = std::size_t{1} << kDigit;
  std::vector<u64> tmp(keys.size());
  std::vector<std::size_t> count(kBuckets);
  for (std::size_t shift = 0; shift < bits; shift += kDigit) {
    std::fill(count.begin(), count.end(), 0);
    for (u64 k : keys) ++count[(k >> shift) & (kBuckets - 1)];
    std::size_t sum = 0;
    for (auto& c : count) {
      const std::size_t n = c;
      c = sum;
      sum += n;
    }
    for (u64 k : keys) tmp[count[(k >> shift) & (kBuckets - 1)]++] = k;
    keys.swap(tmp);
  }
}

Counts count_keys(std::vector<u64>& keys, std::size_t width, std::size_t bits, std::size_t states) {
  std::vector<std::size_t> runs;
  if (width == 0) {
    runs.push_back(states);
  } else if (width == 1) {
    radix_sort(keys, bits);
    std::size_t start = 0;
    for (std::size_t i = 1; i <= states; ++i) {
      if (i == states || keys[i] != keys[start]) {
        runs.push_back(i - start);
        start = i;
      }
    }
  } else {
    std::vector<std::size_t> order(states);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const auto less = [&](std::size_t a, std::size_t b) {
      return std::lexicographical_compare(&keys[a * width], &keys[a * width] + width, &keys[b * width],
                                          &keys[b * width] + width);
    };
    std::sort(order.begin(), order.end(), less);
    std::size_t start = 0;
    for (std::size_t i = 1; i <= states; ++i) {
      if (i == states || less(order[start], order[i])) {
        runs.push_back(i - start);
        start = i;
      }
    }
  }
  const double n = static_cast<double>(states);
  double acc = 0;
  for (auto c : runs) acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
  return {std::log2(n) - acc / n, runs.size()};
}

Counts measure(u64 p, std::size_t digits, std::size_t states, const std::vector<std::vector<u64>>& rows) {
  const LinearView view(p, digits, rows);
  const std::size_t w = view.words();
  std::vector<u64> keys(states * w);
  std::size_t i = 0;
  view.run([&](const u64* y) {
    std::copy(y, y + w, &keys[w * i]);
    ++i;
  });
  return count_keys(keys, w, view.used_bits(), states);
}

std::vector<u64> unit_row(std::size_t n, std::size_t j) {
  std::vector<u64> r(n, 0);
  r[j] = 1;
  return r;
}

}  // namespace

std::uint64_t oracle_states(const LinearScheme& s) {
  const u64 p = s.field().modulus();
  const std::size_t n = s.message_symbols() + s.key_symbols();
  u64 states = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (states > std::numeric_limits<u64>::max() / p) return std::numeric_limits<u64>::max();
    states *= p;
  }
  return states;
}

OracleOptions oracle_options_from_env() {
  OracleOptions o;
  const char* raw = std::getenv("SGC_ORACLE_CAP");
  if (raw == nullptr || *raw == '\0') return o;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (*end != '\0' || v == 0 || !std::has_single_bit(static_cast<u64>(v))) {
    throw InvalidConfig(std::string("SGC_ORACLE_CAP must be a power of two, got '") + raw + "'");
  }
  o.max_states = v;
  return o;
}

VerifyReport oracle_verify(const LinearScheme& s, const OracleOptions& options) {
  const u64 states64 = oracle_states(s);
  if (states64 > options.max_states) {
    throw TooLarge("oracle needs " + (states64 == std::numeric_limits<u64>::max() ? std::string("> 2^64")
                                                                                   : std::to_string(states64)) +
                   " states, cap is " + std::to_string(options.max_states));
  }
  const auto states = static_cast<std::size_t>(states64);
  const PrimeField& f = s.field();
  const u64 p = f.modulus();
  const std::size_t lw = s.message_symbols();
  const std::size_t n = lw + s.key_symbols();

  // Row r of X as a function of the state (W; S).
  std::vector<std::vector<u64>> transmit(s.transmit_symbols(), std::vector<u64>(n, 0));
  for (std::size_t r = 0; r < s.transmit_symbols(); ++r)
    for (std::size_t j = 0; j < n; ++j)
      transmit[r][j] = (j < lw ? s.a().at(r, j) : s.b().at(r, j - lw)).value();

  VerifyReport report;
  report.field = p;
  report.oracle_used = true;
  for (int k = 1; k <= s.receivers(); ++k) {
    const auto intended = s.intended_columns(k);
    const auto excluded = s.excluded_columns(k);
    if (intended.empty() && excluded.empty()) continue;

    // Receiver k sees X and its own key symbols.
    std::vector<std::vector<u64>> view = transmit;
    for (auto c : known_columns(s, k)) view.push_back(unit_row(n, lw + c));
    const auto with_messages = [&](const std::vector<std::size_t>& cols) {
      auto out = view;
      for (auto c : cols) out.push_back(unit_row(n, c));
      return out;
    };

    const Counts v = measure(p, n, states, view);
    if (!intended.empty()) {
      const Counts iv = measure(p, n, states, with_messages(intended));
      report.correct[k] = iv.distinct == v.distinct;

      // Decoder output minus the intended symbols, tracked over every state.
      bool ok = true;
      try {
        const FMatrix m = decoder_for(s, k);
        std::vector<std::vector<u64>> residual(intended.size(), std::vector<u64>(n, 0));
        for (std::size_t i = 0; i < intended.size(); ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            FieldElem acc = f.zero();
            for (std::size_t o = 0; o < view.size(); ++o)
              acc = f.add(acc, f.mul(m.at(i, o), FieldElem{view[o][j]}));
            if (j == intended[i]) acc = f.sub(acc, f.one());
            residual[i][j] = acc.value();
          }
        }
        const LinearView check(p, n, residual);
        check.run([&](const u64* y) {
          for (std::size_t w = 0; w < check.words(); ++w) ok = ok && y[w] == 0;
        });
      } catch (const NotDecodable&) {
        ok = false;
      }
      report.decoder_ok[k] = ok;
    }
    if (!excluded.empty()) {
      std::vector<std::vector<u64>> msg;
      for (auto c : excluded) msg.push_back(unit_row(n, c));
      const Counts w = measure(p, n, states, msg);
      const Counts wv = measure(p, n, states, with_messages(excluded));
      report.leakage_bits[k] = std::max(0.0, w.entropy_bits + v.entropy_bits - wv.entropy_bits);
    }
  }
  return report;
}

}  // namespace sgc
