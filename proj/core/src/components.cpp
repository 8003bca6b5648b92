#include "sgc/components.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "sgc/error.hpp"

namespace sgc {
namespace {

constexpr int K = 4;
constexpr ReceiverSet kQualified{1, 2};

struct Rows {
  std::vector<ReceiverSet> keys;
  // Per transmit row: coefficient of W, then one per key in `keys`.
  std::vector<std::vector<std::int64_t>> rows;
};

Rows component_rows(Component c) {
  switch (c) {
    case Component::otp12:
      return {{{1, 2}}, {{1, 1}}};
    case Component::cmp1:
      return {{{1, 2, 3}, {1, 2, 4}}, {{1, 1, 1}}};
    case Component::cmp2:
      return {{{1}, {2}}, {{1, 1, 0}, {1, 0, 1}}};
    case Component::cmp3:
      return {{{2}, {1, 3}, {1, 4}}, {{1, 1, 0, 0}, {1, 0, 1, 1}}};
    case Component::cmp4:
      // Eavesdropper 4 sees W + s123 twice.
      return {{{1, 2, 3}, {1, 4}, {2, 4}}, {{1, 1, 0, 1}, {1, 1, 1, 0}}};
    case Component::cmp5:
      return {{{2}, {1, 4}, {1, 2, 3}}, {{1, 1, 0, 0}, {1, 0, 1, 1}}};
    case Component::cmp6:
      return {{{1, 3}, {1, 4}, {2, 3}, {2, 4}}, {{1, 1, 1, 0, 0}, {1, 0, 0, 1, 1}}};
  }
  throw WrongShape("unknown component");
}

std::map<ReceiverSet, int> ones(std::initializer_list<ReceiverSet> keys) {
  std::map<ReceiverSet, int> m;
  for (auto k : keys) m[k] = 1;
  return m;
}

// Index and value of the first minimum.
std::pair<std::size_t, Symbols> first_min(std::initializer_list<Symbols> values) {
  std::size_t best = 0, i = 0;
  Symbols value = *values.begin();
  for (auto v : values) {
    if (v < value) {
      value = v;
      best = i;
    }
    ++i;
  }
  return {best, value};
}

}  // namespace

const std::array<ComponentSig, kComponentCount>& component_signatures() {
  static const std::array<ComponentSig, kComponentCount> sigs{{
      {Component::otp12, "OTP12", ones({{1, 2}}), 1, 1},
      {Component::cmp1, "Cmp1", ones({{1, 2, 3}, {1, 2, 4}}), 1, 1},
      {Component::cmp2, "Cmp2", ones({{1}, {2}}), 1, 2},
      {Component::cmp3, "Cmp3", ones({{2}, {1, 3}, {1, 4}}), 1, 2},
      {Component::cmp4, "Cmp4", ones({{1, 2, 3}, {1, 4}, {2, 4}}), 1, 2},
      {Component::cmp5, "Cmp5", ones({{2}, {1, 4}, {1, 2, 3}}), 1, 2},
      {Component::cmp6, "Cmp6", ones({{1, 3}, {1, 4}, {2, 3}, {2, 4}}), 1, 2},
  }};
  return sigs;
}

const ComponentSig& signature(Component c) { return component_signatures()[static_cast<std::size_t>(c)]; }

LinearScheme component_scheme(Component c) {
  const PrimeField f(2);
  const Rows spec = component_rows(c);
  FMatrix a(f, spec.rows.size(), 1), b(f, spec.rows.size(), spec.keys.size());
  for (std::size_t r = 0; r < spec.rows.size(); ++r) {
    a.set(r, 0, spec.rows[r][0]);
    for (std::size_t j = 0; j < spec.keys.size(); ++j) b.set(r, j, spec.rows[r][j + 1]);
  }
  std::vector<Segment> layout;
  for (auto k : spec.keys) layout.push_back({k, 1});
  return LinearScheme(f, 1, K, kQualified, std::move(layout), std::move(a), std::move(b));
}

TwoOfFourSizes TwoOfFourSizes::of(const KeyConfig& n) {
  TwoOfFourSizes s;
  s.s1 = n.size_of({1});
  s.s2 = n.size_of({2});
  s.s12 = n.size_of({1, 2});
  s.s13 = n.size_of({1, 3});
  s.s14 = n.size_of({1, 4});
  s.s23 = n.size_of({2, 3});
  s.s24 = n.size_of({2, 4});
  s.s123 = n.size_of({1, 2, 3});
  s.s124 = n.size_of({1, 2, 4});
  return s;
}

Symbols TwoOfFourPlan::rate() const {
  Symbols r = 0;
  for (const auto& sig : component_signatures()) r += count[static_cast<std::size_t>(sig.id)] * sig.msg_bits;
  return r;
}

Symbols TwoOfFourPlan::bandwidth() const {
  Symbols b = 0;
  for (const auto& sig : component_signatures()) b += count[static_cast<std::size_t>(sig.id)] * sig.tx_bits;
  return b;
}

std::map<ReceiverSet, Symbols> TwoOfFourPlan::consumption() const {
  std::map<ReceiverSet, Symbols> used;
  for (const auto& sig : component_signatures())
    for (const auto& [key, bits] : sig.consumes) used[key] += count[static_cast<std::size_t>(sig.id)] * bits;
  return used;
}

TwoOfFourPlan plan_2of4(const TwoOfFourSizes& a) {
  if (a.s1 > a.s2 || a.s124 > a.s123) throw WrongShape("sizes not normalized: need L_1 <= L_2 and L_124 <= L_123");
  TwoOfFourPlan plan;
  auto& n = plan.count;
  const auto at = [](Component c) { return static_cast<std::size_t>(c); };
  n[at(Component::otp12)] = a.s12;
  n[at(Component::cmp1)] = a.s124;
  n[at(Component::cmp2)] = a.s1;

  const Symbols gap = a.s2 - a.s1;
  if (gap >= std::min(a.s13, a.s14)) {
    n[at(Component::cmp3)] = std::min(a.s13, a.s14);
    if (a.s14 <= a.s13) {
      plan.branch = "1.1";
      return plan;
    }
    const auto [which, cmp4] = first_min({a.s14 - a.s13, a.s123 - a.s124, a.s24});
    n[at(Component::cmp4)] = cmp4;
    plan.branch = "1.2." + std::to_string(which + 1);
    if (which == 2) {
      const auto [sub, cmp5] = first_min({gap - a.s13, a.s14 - a.s13 - a.s24, a.s123 - a.s124 - a.s24});
      n[at(Component::cmp5)] = cmp5;
      plan.branch += "." + std::to_string(sub + 1);
    }
    return plan;
  }

  n[at(Component::cmp3)] = gap;
  const auto [which, cmp4] = first_min({a.s24, a.s14 - gap, a.s123 - a.s124});
  n[at(Component::cmp4)] = cmp4;
  plan.branch = "2." + std::to_string(which + 1);
  if (which == 2) {
    const auto [sub, cmp6] =
        first_min({a.s14 - gap - a.s123 + a.s124, a.s13 - gap, a.s24 - a.s123 + a.s124, a.s23});
    n[at(Component::cmp6)] = cmp6;
    plan.branch += "." + std::to_string(sub + 1);
  }
  return plan;
}

}  // namespace sgc
