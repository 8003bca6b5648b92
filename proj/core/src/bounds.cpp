#include "sgc/bounds.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace sgc {

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

Symbols rate_converse(const KeyConfig& config) {
  Symbols best = std::numeric_limits<Symbols>::max();
  for (int e : config.eavesdroppers().members()) {
    const auto given = KeyCollection::held_by(config, e);
    for (int q : config.qualified().members()) best = std::min(best, entropy_of(config, ReceiverSet::single(q), given));
  }
  return best;
}

namespace {

std::vector<std::vector<ReceiverSet>> conditioning_family(const std::vector<ReceiverSet>& keys, std::size_t cap,
                                                          bool& heuristic) {
  std::vector<std::vector<ReceiverSet>> family;
  const std::size_t n = keys.size();
  if (n < 63 && (std::size_t{1} << n) <= cap) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::vector<ReceiverSet> u;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) u.push_back(keys[i]);
      family.push_back(std::move(u));
    }
    return family;
  }
  heuristic = true;
  family.push_back({});
  family.push_back(keys);
  for (auto k : keys) family.push_back({k});
  return family;
}

}  // namespace

BwBound bw_converse(const KeyConfig& config, Rational rate, const BwOptions& options) {
  BwBound best;
  if (rate <= Rational{0}) return best;
  bool have = false;
  const auto qualified = config.qualified();
  const auto groups = nonempty_subsets(qualified);
  for (int e : config.eavesdroppers().members()) {
    const auto family = conditioning_family(config.keys_of(e), options.max_subcollections, best.heuristic);
    for (const auto& u : family) {
      if (options.stop.stop_requested()) {
        best.interrupted = true;
        return best;
      }
      const auto given = KeyCollection::whole(u);
      std::vector<Symbols> single(static_cast<std::size_t>(kMaxReceivers) + 1, 0);
      for (int q : qualified.members()) single[static_cast<std::size_t>(q)] = entropy_of(config, ReceiverSet::single(q), given);
      for (auto group : groups) {
        Symbols overlap = -entropy_of(config, group, given);
        for (int q : group.members()) overlap += single[static_cast<std::size_t>(q)];
        const Rational value = Rational{group.size()} * rate - Rational{overlap};
        if (!have || value > best.value) {
          have = true;
          best.value = value;
          best.eavesdropper = e;
          best.group = group;
          best.conditioning = u;
        }
      }
    }
  }
  return best;
}

const char* to_string(Setting s) {
  switch (s) {
    case Setting::unicast: return "unicast";
    case Setting::multicast: return "multicast";
    case Setting::groupcast_2of4: return "groupcast_2of4";
    case Setting::symmetric: return "symmetric";
    case Setting::instance_2of5: return "instance_2of5";
  }
  return "unknown";
}

KeyConfig fig4_config(Symbols key_size) {
  return KeyConfig(5, ReceiverSet{1, 2},
                   {{ReceiverSet{1}, key_size},
                    {ReceiverSet{1, 2, 3}, key_size},
                    {ReceiverSet{1, 4, 5}, key_size},
                    {ReceiverSet{2, 4}, key_size},
                    {ReceiverSet{2, 5}, key_size}});
}

std::optional<Fig4Match> match_fig4(const KeyConfig& config) {
  if (config.receivers() != 5 || config.qualified().size() != 2) return std::nullopt;
  const KeyConfig pruned = config.without_useless_keys();
  if (pruned.keys().size() != 5) return std::nullopt;
  const Symbols size = pruned.keys().begin()->second;
  for (const auto& [key, s] : pruned.keys())
    if (s != size) return std::nullopt;
  const KeyConfig target = fig4_config(size);

  std::vector<int> image{1, 2, 3, 4, 5};
  do {
    Relabeling r(image);
    if (r(pruned.qualified()) != target.qualified()) continue;
    if (pruned.relabeled(r) == target) return Fig4Match{size, r};
  } while (std::next_permutation(image.begin(), image.end()));
  return std::nullopt;
}

namespace {

ExactResult multicast_exact(const KeyConfig& config) {
  const int k = config.receivers();
  const int eve = config.eavesdroppers().members().front();
  const auto given = KeyCollection::held_by(config, eve);
  std::vector<Symbols> h;
  for (int q : config.qualified().members()) h.push_back(entropy_of(config, ReceiverSet::single(q), given));
  const Symbols c = *std::min_element(h.begin(), h.end());
  ExactResult out{Setting::multicast, Rational{c}, std::nullopt};
  if (std::all_of(h.begin(), h.end(), [&](Symbols x) { return x == c; })) {
    Symbols sum = 0;
    for (const auto& [key, size] : config.keys())
      if (key.subset_of(config.qualified())) sum += size;
    out.beta_star = Rational{sum};
  } else if (k == 4) {
    const KeyConfig n = normalize_labels(config, NormalForm::multicast_k4).config;
    const auto l = [&](ReceiverSet u) { return n.size_of(u); };
    const Symbols l1 = l({1}), l12 = l({1, 2}), l13 = l({1, 3}), l23 = l({2, 3}), l123 = l({1, 2, 3});
    out.beta_star = Rational{l123 + std::max(2 * l1 + l12 + 2 * l13, 3 * l1 + 2 * l12 + 2 * l13 - l23)};
  }
  return out;
}

ExactResult groupcast_2of4_exact(const KeyConfig& config) {
  const Symbols c = rate_converse(config);
  const auto q = config.qualified();
  const auto e = config.eavesdroppers().members();
  const Symbols beta = 2 * c - config.size_of(q) - std::min(config.size_of(q.with(e[0])), config.size_of(q.with(e[1])));
  return {Setting::groupcast_2of4, Rational{c}, Rational{beta}};
}

ExactResult symmetric_exact(const KeyConfig& config, const std::vector<Symbols>& profile) {
  const std::int64_t k = config.receivers();
  const std::int64_t n = config.qualified().size();
  Symbols c = 0, beta = 0;
  for (std::int64_t u = 1; u <= k; ++u) {
    const Symbols lu = profile[static_cast<std::size_t>(u)];
    c += binomial(k - 2, u - 1) * lu;
    beta += (binomial(k - 1, u) - binomial(k - n - 1, u)) * lu;
  }
  return {Setting::symmetric, Rational{c}, Rational{beta}};
}

}  // namespace

std::optional<ExactResult> exact_capacity(const KeyConfig& config) {
  const int k = config.receivers();
  const int n = config.qualified().size();
  if (n == 1) {
    const Rational c{rate_converse(config)};
    return ExactResult{Setting::unicast, c, c};
  }
  if (n == k - 1) return multicast_exact(config);
  if (n == 2 && k == 4) return groupcast_2of4_exact(config);
  if (auto profile = symmetric_profile(config)) return symmetric_exact(config, *profile);
  if (auto m = match_fig4(config)) {
    return ExactResult{Setting::instance_2of5, Rational{5 * m->key_size, 3}, Rational{10 * m->key_size, 3}};
  }
  return std::nullopt;
}

PriorityCheck priority_check(const KeyConfig& config) {
  PriorityCheck out;
  out.rate_upper = rate_converse(config);
  const auto exact = exact_capacity(config);
  if (!exact) {
    out.message = "capacity not characterized; rate bound " + std::to_string(out.rate_upper) + " may be loose";
    return out;
  }
  out.capacity = exact->capacity;
  out.gap = exact->capacity < Rational{out.rate_upper};
  out.message = out.gap ? "rate bound " + std::to_string(out.rate_upper) + " exceeds capacity " +
                              exact->capacity.to_string()
                        : "rate bound is tight";
  return out;
}

BoundsReport compute_bounds(const KeyConfig& config, const BwOptions& options) {
  BoundsReport r;
  r.rate_upper = rate_converse(config);
  r.exact = exact_capacity(config);
  r.bw_rate = r.exact ? r.exact->capacity : Rational{r.rate_upper};
  r.bw_lower = bw_converse(config, r.bw_rate, options);
  r.gap = r.exact && r.exact->capacity < Rational{r.rate_upper};
  return r;
}

}  // namespace sgc
