#include "sgc/synth.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "sgc/bounds.hpp"
#include "sgc/components.hpp"
#include "sgc/error.hpp"

namespace sgc {
namespace {

// Hands out the precoding matrices of one synthesis attempt.
class MatrixSource {
 public:
  MatrixSource(PrimeField field, std::mt19937_64& rng, bool generic) : field_(field), rng_(rng), generic_(generic) {}

  const PrimeField& field() const { return field_; }
  FMatrix make(std::size_t rows, std::size_t cols) {
    return generic_ ? random_matrix(rows, cols, field_, rng_) : random_cauchy(rows, cols, field_, rng_);
  }

 private:
  PrimeField field_;
  std::mt19937_64& rng_;
  bool generic_;
};

using Build = std::function<LinearScheme(MatrixSource&)>;

std::size_t to_size(Symbols s) { return static_cast<std::size_t>(s); }

// Builds at the Cauchy threshold and escalates to larger primes until the
// verifier accepts; the compact policy first tries smaller primes.
SynthResult run_loop(const std::string& builder, std::uint64_t threshold, const Build& build,
                     const SynthOptions& options) {
  std::mt19937_64 rng(options.seed);
  SynthMeta meta;
  meta.builder = builder;
  meta.seed = options.seed;
  const std::uint64_t start = least_prime_at_least(std::max<std::uint64_t>(threshold, 2));

  if (options.field_policy == FieldPolicy::compact) {
    for (std::uint64_t p = 2; p < start; p = least_prime_at_least(p + 1)) {
      for (int t = 0; t < options.compact_attempts; ++t) {
        MatrixSource src(PrimeField(p), rng, true);
        LinearScheme s = build(src);
        if (verify(s).passed()) {
          meta.notes.push_back("compact field GF(" + std::to_string(p) + ") after " + std::to_string(t + 1) +
                               " draws");
          return {std::move(s), std::move(meta)};
        }
      }
    }
    meta.notes.push_back("compact search failed below GF(" + std::to_string(start) + ")");
  }

  std::uint64_t p = start;
  for (int esc = 0; esc <= options.max_escalations; ++esc) {
    MatrixSource src(PrimeField(p), rng, false);
    LinearScheme s = build(src);
    if (verify(s).passed()) {
      meta.escalations = esc;
      if (esc > 0) meta.notes.push_back("escalated to GF(" + std::to_string(p) + ")");
      return {std::move(s), std::move(meta)};
    }
    p = least_prime_at_least(p + 1);
  }
  throw VerificationFailed(builder + ": no verified scheme after " + std::to_string(options.max_escalations) +
                           " field escalations");
}

SynthResult checked(LinearScheme s, const std::string& builder) {
  if (!verify(s).passed()) throw VerificationFailed(builder + ": emitted scheme fails verification");
  SynthMeta meta;
  meta.builder = builder;
  return {std::move(s), std::move(meta)};
}

SynthResult empty_result(const KeyConfig& config, const std::string& builder, const SynthOptions& options) {
  SynthMeta meta;
  meta.builder = builder;
  meta.seed = options.seed;
  meta.notes.push_back("capacity is zero");
  return {fit_to_config(LinearScheme::empty(PrimeField(2), config.receivers(), config.qualified()), config), meta};
}

// Finishes a scheme built in working labels: back to the config's labels and
// laid out over every key of the config.
SynthResult finish(SynthResult r, const KeyConfig& config, const Relabeling& to_original) {
  LinearScheme s = to_original.is_identity() ? r.scheme : relabeled(r.scheme, to_original);
  r.scheme = fit_to_config(merge_layout(s), config);
  return r;
}

std::vector<ReceiverSet> subsets_of_size(ReceiverSet universe, int size) {
  if (size == 0) return {ReceiverSet{}};
  std::vector<ReceiverSet> out;
  for (auto s : nonempty_subsets(universe))
    if (s.size() == size) out.push_back(s);
  return out;
}

// Rows of X masked one-to-one by key symbols: B is the identity over `layout`.
FMatrix identity_keys(const PrimeField& f, std::size_t rows) { return FMatrix::identity(f, rows); }

void require_shape(const KeyConfig& config, bool ok, const std::string& what) {
  if (!ok) {
    throw WrongShape(what + " does not apply to K=" + std::to_string(config.receivers()) +
                     ", N=" + std::to_string(config.qualified().size()));
  }
}

}  // namespace

SynthResult synth_unicast(const KeyConfig& config, const SynthOptions& options) {
  require_shape(config, config.qualified().size() == 1, "unicast");
  const Symbols c = rate_converse(config);
  if (c == 0) return empty_result(config, "unicast", options);
  const int q = config.qualified().members().front();
  const KeyConfig pruned = config.without_useless_keys();
  std::vector<Segment> layout;
  std::size_t d = 0;
  for (auto key : pruned.keys_of(q)) {
    layout.push_back({key, to_size(pruned.size_of(key))});
    d += layout.back().width;
  }
  const std::size_t lw = to_size(c);
  const Build build = [&](MatrixSource& src) {
    return LinearScheme(src.field(), 1, config.receivers(), config.qualified(), layout,
                        FMatrix::identity(src.field(), lw), src.make(lw, d));
  };
  auto r = run_loop("unicast", lw + d, build, options);
  return finish(std::move(r), config, Relabeling::identity(config.receivers()));
}

SynthResult synth_multicast(const KeyConfig& config, const SynthOptions& options) {
  require_shape(config, config.qualified().size() == config.receivers() - 1, "multicast");
  const Symbols c = rate_converse(config);
  if (c == 0) return empty_result(config, "multicast", options);
  std::vector<Segment> layout;
  std::size_t lx = 0;
  for (const auto& [key, size] : config.keys()) {
    if (!key.subset_of(config.qualified())) continue;
    layout.push_back({key, to_size(size)});
    lx += to_size(size);
  }
  const std::size_t lw = to_size(c);
  const Build build = [&](MatrixSource& src) {
    return LinearScheme(src.field(), 1, config.receivers(), config.qualified(), layout, src.make(lx, lw),
                        identity_keys(src.field(), lx));
  };
  auto r = run_loop("multicast", lx + lw, build, options);
  return finish(std::move(r), config, Relabeling::identity(config.receivers()));
}

SynthResult synth_multicast_k4_bw(const KeyConfig& config, const SynthOptions& options) {
  require_shape(config, config.receivers() == 4 && config.qualified().size() == 3, "multicast_k4_bw");
  const Normalized norm = normalize_labels(config, NormalForm::multicast_k4);
  const KeyConfig& n = norm.config;
  const auto l = [&](ReceiverSet u) { return n.size_of(u); };
  const Symbols l1 = l({1}), l12 = l({1, 2}), l13 = l({1, 3}), l23 = l({2, 3}), l123 = l({1, 2, 3});
  const Symbols c = l1 + l12 + l13 + l123;
  if (c == 0) return empty_result(config, "multicast_k4_bw", options);

  std::vector<Segment> layout{{{1}, to_size(l1)}, {{1, 2}, to_size(l12)}, {{1, 3}, to_size(l13)},
                              {{1, 2, 3}, to_size(l123)}};
  std::string branch;
  if (l23 >= l1 + l13) {
    branch = "case 1";
    layout.push_back({{2, 3}, to_size(l1 + l13)});
  } else if (l23 >= l1 + l12) {
    branch = "case 2";
    layout.push_back({{2}, to_size(l1 + l13 - l23)});
    layout.push_back({{2, 3}, to_size(l23)});
  } else {
    branch = "case 3";
    layout.push_back({{2}, to_size(l1 + l13 - l23)});
    layout.push_back({{3}, to_size(l1 + l12 - l23)});
    layout.push_back({{2, 3}, to_size(l23)});
  }
  std::erase_if(layout, [](const Segment& s) { return s.width == 0; });
  std::size_t lx = 0;
  for (const auto& s : layout) lx += s.width;
  const std::size_t lw = to_size(c);

  const Build build = [&](MatrixSource& src) {
    return LinearScheme(src.field(), 1, 4, n.qualified(), layout, src.make(lx, lw), identity_keys(src.field(), lx));
  };
  auto r = run_loop("multicast_k4_bw", lx + lw, build, options);
  r.meta.branch = branch;
  return finish(std::move(r), config, norm.relabeling.inverse());
}

SynthResult synth_groupcast_2of4(const KeyConfig& config, const SynthOptions& options) {
  require_shape(config, config.receivers() == 4 && config.qualified().size() == 2, "groupcast_2of4");
  const Normalized norm = normalize_labels(config, NormalForm::groupcast_2of4);
  const TwoOfFourPlan plan = plan_2of4(TwoOfFourSizes::of(norm.config));
  std::vector<LinearScheme> parts;
  for (const auto& sig : component_signatures()) {
    const LinearScheme one = component_scheme(sig.id);
    for (Symbols i = 0; i < plan.count[static_cast<std::size_t>(sig.id)]; ++i) parts.push_back(one);
  }
  const PrimeField f(2);
  LinearScheme s = concat(f, 4, ReceiverSet{1, 2}, parts);
  auto r = checked(std::move(s), "groupcast_2of4");
  r.meta.seed = options.seed;
  r.meta.branch = plan.branch;
  for (const auto& sig : component_signatures()) {
    const Symbols n = plan.count[static_cast<std::size_t>(sig.id)];
    if (n > 0) r.meta.notes.push_back(std::to_string(n) + " x " + sig.name);
  }
  return finish(std::move(r), config, norm.relabeling.inverse());
}

SynthResult synth_symmetric(const KeyConfig& config, const SynthOptions& options) {
  const auto profile = symmetric_profile(config);
  if (!profile) throw NotSymmetric("key sizes differ within some cardinality");
  const int k = config.receivers();
  const int n = config.qualified().size();
  const ReceiverSet eves = config.eavesdroppers();

  struct Block {
    ReceiverSet group;               // I
    std::vector<ReceiverSet> keys;   // U with U ∩ Q = I, |U| = u
  };
  struct Group {
    GroupContribution info;
    std::size_t rows_per_block = 0;  // r
    std::size_t width = 0;           // message symbols
    std::size_t key_size = 0;        // L^[u]
    std::vector<Block> blocks;
  };
  std::vector<Group> groups;
  std::uint64_t threshold = 2;
  std::size_t lw = 0, lx = 0, d = 0;
  for (int u = 1; u <= k; ++u) {
    const Symbols lu = (*profile)[static_cast<std::size_t>(u)];
    if (lu == 0) continue;
    for (int i = 1; i <= std::min(u, n); ++i) {
      const auto r = to_size(binomial(k - n - 1, u - i) * lu);
      if (r == 0) continue;
      Group g;
      g.rows_per_block = r;
      g.key_size = to_size(lu);
      g.width = to_size(binomial(n - 1, i - 1)) * r;
      for (auto group : subsets_of_size(config.qualified(), i)) {
        Block b{group, {}};
        for (auto extra : subsets_of_size(eves, u - i)) b.keys.push_back(group | extra);
        g.blocks.push_back(std::move(b));
      }
      const std::size_t key_cols = g.blocks.front().keys.size() * g.key_size;
      threshold = std::max<std::uint64_t>({threshold, g.blocks.size() * r + g.width, r + key_cols});
      g.info = {u, i, static_cast<Symbols>(g.width), static_cast<Symbols>(g.blocks.size() * r)};
      lw += g.width;
      lx += g.blocks.size() * r;
      d += g.blocks.size() * key_cols;
      groups.push_back(std::move(g));
    }
  }
  if (lw == 0) return empty_result(config, "symmetric", options);

  const Build build = [&](MatrixSource& src) {
    const auto& f = src.field();
    FMatrix a(f, lx, lw), b(f, lx, d);
    std::vector<Segment> layout;
    std::size_t row = 0, msg = 0, key = 0;
    for (const auto& g : groups) {
      const FMatrix vw = src.make(g.blocks.size() * g.rows_per_block, g.width);
      for (std::size_t t = 0; t < g.blocks.size(); ++t) {
        const auto& blk = g.blocks[t];
        const FMatrix vs = src.make(g.rows_per_block, blk.keys.size() * g.key_size);
        for (std::size_t rr = 0; rr < g.rows_per_block; ++rr) {
          for (std::size_t c = 0; c < g.width; ++c) a.set(row + rr, msg + c, vw.at(t * g.rows_per_block + rr, c));
          for (std::size_t c = 0; c < vs.cols(); ++c) b.set(row + rr, key + c, vs.at(rr, c));
        }
        for (auto u : blk.keys) layout.push_back({u, g.key_size});
        row += g.rows_per_block;
        key += vs.cols();
      }
      msg += g.width;
    }
    return LinearScheme(f, 1, k, config.qualified(), std::move(layout), std::move(a), std::move(b));
  };
  auto r = run_loop("symmetric", threshold, build, options);
  for (const auto& g : groups) r.meta.groups.push_back(g.info);
  return finish(std::move(r), config, Relabeling::identity(k));
}

namespace {

// Receiver 1 decodes rows 1-5 from (a, b, c); receiver 2 decodes rows 6-10
// from (b, d, e). Eavesdropper 4 sees rows 1 and 6 as the same W1 + b1,
// eavesdropper 5 sees rows 2 and 7 as the same W4 + b2.
LinearScheme base_2of5() {
  const PrimeField f(2);
  // Key columns: a 0-2, b 3-5, c 6-8, d 9-11, e 12-14.
  const auto a = [](int i) { return i - 1; };
  const auto b = [](int i) { return 2 + i; };
  const auto c = [](int i) { return 5 + i; };
  const auto d = [](int i) { return 8 + i; };
  const auto e = [](int i) { return 11 + i; };
  const std::vector<std::pair<int, std::vector<int>>> rows{
      {1, {b(1), c(1)}}, {4, {b(2), c(2)}}, {2, {a(1)}},       {3, {a(2)}},       {5, {a(3)}},
      {1, {b(1), d(1)}}, {4, {b(2), e(1)}}, {2, {b(3), d(2)}}, {3, {e(2), d(3)}}, {5, {e(3), b(3)}},
  };
  FMatrix am(f, rows.size(), 5), bm(f, rows.size(), 15);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    am.set(r, static_cast<std::size_t>(rows[r].first - 1), 1);
    for (int col : rows[r].second) bm.set(r, static_cast<std::size_t>(col), 1);
  }
  std::vector<Segment> layout{{{1}, 3}, {{1, 2, 3}, 3}, {{1, 4, 5}, 3}, {{2, 4}, 3}, {{2, 5}, 3}};
  return LinearScheme(f, 3, 5, ReceiverSet{1, 2}, std::move(layout), std::move(am), std::move(bm));
}

}  // namespace

SynthResult synth_instance_2of5(Symbols key_size) {
  if (key_size < 0) throw InvalidConfig("key size must be nonnegative");
  const KeyConfig config = fig4_config(key_size);
  if (key_size == 0) return empty_result(config, "instance_2of5", {});
  const std::vector<LinearScheme> copies(to_size(key_size), base_2of5());
  auto r = checked(concat(PrimeField(2), 5, ReceiverSet{1, 2}, copies), "instance_2of5");
  return finish(std::move(r), config, Relabeling::identity(5));
}

SynthResult synth_instance_2of5(const KeyConfig& config) {
  const auto match = match_fig4(config);
  if (!match) throw WrongShape("instance_2of5 needs the two-of-five alignment topology with equal key sizes");
  auto r = synth_instance_2of5(match->key_size);
  return finish(std::move(r), config, match->relabeling.inverse());
}

SynthResult synthesize(const KeyConfig& config, const SynthOptions& options) {
  const int k = config.receivers();
  const int n = config.qualified().size();
  if (n == 1) return synth_unicast(config, options);
  if (n == k - 1) return k == 4 ? synth_multicast_k4_bw(config, options) : synth_multicast(config, options);
  if (n == 2 && k == 4) return synth_groupcast_2of4(config, options);
  if (is_symmetric(config)) return synth_symmetric(config, options);
  if (match_fig4(config)) return synth_instance_2of5(config);
  throw Unsolved("N=" + std::to_string(n) + ", K=" + std::to_string(k) +
                 " with this key configuration is outside the solved settings; the general capacity is open");
}

std::optional<std::string> region_violation(const RegionSizes& s, const RegionRates& r) {
  const auto fail = [](const std::string& lhs, Symbols a, const std::string& rhs, Symbols b) {
    return lhs + " <= " + rhs + " violated (" + std::to_string(a) + " > " + std::to_string(b) + ")";
  };
  if (s.l1 < 0 || s.l2 < 0 || s.l12 < 0) return "key sizes must be nonnegative";
  if (r.r1 < 0 || r.r2 < 0 || r.r12 < 0) return "rates must be nonnegative";
  if (r.r1 + r.r12 > s.l1 + s.l12) return fail("R1 + R12", r.r1 + r.r12, "L1 + L12", s.l1 + s.l12);
  if (r.r2 + r.r12 > s.l2 + s.l12) return fail("R2 + R12", r.r2 + r.r12, "L2 + L12", s.l2 + s.l12);
  if (r.r1 > s.l1) return fail("R1", r.r1, "L1", s.l1);
  if (r.r2 > s.l2) return fail("R2", r.r2, "L2", s.l2);
  return std::nullopt;
}

Symbols region_bandwidth(const RegionSizes& s, const RegionRates& r) {
  return r.r1 + r.r2 + std::max(r.r12, 2 * r.r12 - s.l12);
}

KeyConfig region_config(const RegionSizes& s) {
  return KeyConfig(3, ReceiverSet{1, 2}, {{ReceiverSet{1}, s.l1}, {ReceiverSet{2}, s.l2}, {ReceiverSet{1, 2}, s.l12}});
}

SynthResult synth_multimessage(const RegionSizes& s, const RegionRates& r) {
  if (auto v = region_violation(s, r)) throw Infeasible(*v);
  const PrimeField f(2);
  const std::size_t r1 = to_size(r.r1), r2 = to_size(r.r2), r12 = to_size(r.r12);
  const std::size_t l1 = to_size(s.l1), l2 = to_size(s.l2), l12 = to_size(s.l12);
  const std::size_t lx = to_size(region_bandwidth(s, r));
  // Message columns: W1, W2, W12. Key columns: s1, s2, s12.
  const std::size_t w1 = 0, w2 = r1, w12 = r1 + r2;
  const std::size_t k1 = 0, k2 = l1, k12 = l1 + l2;
  FMatrix a(f, lx, r1 + r2 + r12), b(f, lx, l1 + l2 + l12);
  std::size_t row = 0;
  const auto emit = [&](std::size_t msg, std::size_t key) {
    a.set(row, msg, 1);
    b.set(row, key, 1);
    ++row;
  };
  for (std::size_t i = 0; i < r1; ++i) emit(w1 + i, k1 + i);
  for (std::size_t i = 0; i < r2; ++i) emit(w2 + i, k2 + i);
  if (r12 <= l12) {
    for (std::size_t i = 0; i < r12; ++i) emit(w12 + i, k12 + i);
  } else {
    for (std::size_t i = 0; i < l12; ++i) emit(w12 + i, k12 + i);
    const std::size_t extra = r12 - l12;
    for (std::size_t i = 0; i < extra; ++i) emit(w12 + l12 + i, k1 + r1 + i);
    for (std::size_t i = 0; i < extra; ++i) emit(w12 + l12 + i, k2 + r2 + i);
  }
  std::vector<Segment> layout{{{1}, l1}, {{2}, l2}, {{1, 2}, l12}};
  std::erase_if(layout, [](const Segment& seg) { return seg.width == 0; });
  std::vector<MessagePart> messages{{{1}, r1}, {{2}, r2}, {{1, 2}, r12}};
  std::erase_if(messages, [](const MessagePart& m) { return m.width == 0; });
  LinearScheme scheme(f, 1, 3, ReceiverSet{1, 2}, std::move(layout), std::move(messages), std::move(a), std::move(b));
  auto out = checked(std::move(scheme), "multimessage");
  out.meta.branch = r12 <= l12 ? "case 1" : "case 2";
  return out;
}

}  // namespace sgc
