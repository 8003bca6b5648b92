#pragma once

// Worked instances and brute-force reference formulas shared by the tests.

#include <algorithm>
#include <array>
#include <map>
#include <random>

#include "sgc/keyspace.hpp"

namespace sgc::testing {

inline KeyConfig example_unicast() {
  return KeyConfig(4, ReceiverSet{1}, {{{1, 2}, 4}, {{1, 3}, 2}, {{1, 4}, 1}, {{1, 3, 4}, 3}});
}

inline KeyConfig example_multicast() {
  return KeyConfig(4, ReceiverSet{1, 2, 3}, {{{1}, 1}, {{1, 3}, 2}, {{2, 3}, 3}});
}

// (L1, L2, L13, L14, L23, L24, L123, L124) in that order.
inline KeyConfig two_of_four(const std::array<Symbols, 8>& s, Symbols l12 = 0) {
  const ReceiverSet subsets[8] = {{1}, {2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {1, 2, 3}, {1, 2, 4}};
  std::map<ReceiverSet, Symbols> keys;
  for (int i = 0; i < 8; ++i) keys[subsets[i]] = s[static_cast<std::size_t>(i)];
  keys[ReceiverSet{1, 2}] = l12;
  return KeyConfig(4, ReceiverSet{1, 2}, keys);
}

inline KeyConfig example_two_of_four() { return two_of_four({1, 2, 2, 3, 1, 2, 2, 1}); }

inline KeyConfig example_symmetric() {
  std::map<ReceiverSet, Symbols> keys;
  for (auto u : nonempty_subsets(ReceiverSet::range(6)))
    if (u.size() == 3) keys[u] = 1;
  return KeyConfig(6, ReceiverSet{1, 2, 3}, keys);
}

inline KeyConfig two_of_five(Symbols l) {
  return KeyConfig(5, ReceiverSet{1, 2},
                   {{{1}, l}, {{1, 2, 3}, l}, {{1, 4, 5}, l}, {{2, 4}, l}, {{2, 5}, l}});
}

// H(z_A | z_B): total size of keys reaching A and missing B.
inline Symbols ref_entropy(const KeyConfig& c, ReceiverSet a, ReceiverSet b = {}) {
  Symbols h = 0;
  for (std::uint32_t m = 1; m < (1u << c.receivers()); ++m) {
    const auto u = ReceiverSet::from_bits(m);
    if (u.intersects(a) && !u.intersects(b)) h += c.size_of(u);
  }
  return h;
}

// I(z_A; z_B | z_C): keys reaching both A and B, missing C.
inline Symbols ref_mutual(const KeyConfig& c, ReceiverSet a, ReceiverSet b, ReceiverSet given = {}) {
  Symbols h = 0;
  for (std::uint32_t m = 1; m < (1u << c.receivers()); ++m) {
    const auto u = ReceiverSet::from_bits(m);
    if (u.intersects(a) && u.intersects(b) && !u.intersects(given)) h += c.size_of(u);
  }
  return h;
}

inline KeyConfig random_config(std::mt19937_64& rng, int k, ReceiverSet qualified, Symbols max_size,
                               double density = 0.5) {
  std::map<ReceiverSet, Symbols> keys;
  std::bernoulli_distribution keep(density);
  for (std::uint32_t m = 1; m < (1u << k); ++m)
    if (keep(rng)) keys[ReceiverSet::from_bits(m)] = static_cast<Symbols>(rng() % (max_size + 1));
  return KeyConfig(k, qualified, keys);
}

// A uniformly random permutation of 1..K that maps `qualified` onto itself.
inline Relabeling random_relabeling(std::mt19937_64& rng, int k, ReceiverSet qualified) {
  std::vector<int> q = qualified.members(), e = (ReceiverSet::range(k) - qualified).members();
  std::vector<int> qi = q, ei = e;
  std::shuffle(qi.begin(), qi.end(), rng);
  std::shuffle(ei.begin(), ei.end(), rng);
  std::vector<int> image(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < q.size(); ++i) image[static_cast<std::size_t>(q[i] - 1)] = qi[i];
  for (std::size_t i = 0; i < e.size(); ++i) image[static_cast<std::size_t>(e[i] - 1)] = ei[i];
  return Relabeling(image);
}

}  // namespace sgc::testing

#include "sgc/scheme.hpp"

namespace sgc::testing {

// Random X = A W + B S with p^(Lw + D) <= max_states. Sometimes carries
// several message parts.
inline LinearScheme random_scheme(std::mt19937_64& rng, std::uint64_t max_states = 1u << 16) {
  static constexpr std::uint64_t primes[] = {2, 3, 5};
  const PrimeField f(primes[rng() % 3]);
  const int k = 2 + static_cast<int>(rng() % 3);
  std::size_t budget = 0;
  for (std::uint64_t s = 1; s * f.modulus() <= max_states; s *= f.modulus()) ++budget;
  const std::size_t lw = 1 + rng() % std::min<std::size_t>(3, budget);
  std::size_t d_budget = budget - lw;
  std::vector<Segment> layout;
  while (d_budget > 0 && layout.size() < 4) {
    const auto subset = ReceiverSet::from_bits(1 + static_cast<std::uint32_t>(rng() % ((1u << k) - 1)));
    const std::size_t w = 1 + rng() % std::min<std::size_t>(2, d_budget);
    layout.push_back({subset, w});
    d_budget -= w;
    if (rng() % 3 == 0) break;
  }
  std::size_t d = 0;
  for (const auto& s : layout) d += s.width;
  const ReceiverSet qualified = ReceiverSet::range(1 + static_cast<int>(rng() % static_cast<unsigned>(k - 1)));
  std::vector<MessagePart> messages;
  if (rng() % 4 == 0 && lw >= 2) {
    messages.push_back({ReceiverSet{1}, 1});
    messages.push_back({ReceiverSet::from_bits(1 + static_cast<std::uint32_t>(rng() % ((1u << k) - 1))), lw - 1});
  } else {
    messages.push_back({qualified, lw});
  }
  const std::size_t lx = 1 + rng() % 4;
  return LinearScheme(f, 1, k, qualified, layout, messages, random_matrix(lx, lw, f, rng),
                      random_matrix(lx, d, f, rng));
}

inline LinearScheme one_time_pad(const PrimeField& f, int receivers, ReceiverSet key_holders) {
  return LinearScheme(f, 1, receivers, ReceiverSet{1}, {{key_holders, 1}}, FMatrix::identity(f, 1),
                      FMatrix::identity(f, 1));
}

}  // namespace sgc::testing
