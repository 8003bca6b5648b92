#include "sgc/tools/demos.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "sgc/bounds.hpp"
#include "sgc/error.hpp"
#include "sgc/oracle.hpp"
#include "sgc/synth.hpp"

namespace sgc::demos {
namespace {

void row(std::ostream& out, const std::string& label, const std::string& value) {
  out << "  " << std::left << std::setw(24) << label << value << "\n";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string bits(double b) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(3) << b << " bits";
  return ss.str();
}

std::string verdict(const VerifyReport& r, int k) {
  if (auto it = r.correct.find(k); it != r.correct.end()) {
    bool ok = it->second;
    if (auto d = r.decoder_ok.find(k); d != r.decoder_ok.end()) ok = ok && d->second;
    return ok ? "decodes" : "FAILS";
  }
  if (auto it = r.leakage_bits.find(k); it != r.leakage_bits.end()) return bits(it->second);
  return "-";
}

void receiver_table(std::ostream& out, const LinearScheme& s, const VerifyReport& algebraic,
                    const std::optional<VerifyReport>& oracle, const std::string& oracle_note) {
  out << "  " << std::left << std::setw(10) << "receiver" << std::setw(14) << "role" << std::setw(16) << "algebraic"
      << "oracle\n";
  for (int k = 1; k <= s.receivers(); ++k) {
    out << "  " << std::left << std::setw(10) << k << std::setw(14)
        << (s.qualified().contains(k) ? "qualified" : "eavesdropper") << std::setw(16) << verdict(algebraic, k)
        << (oracle ? verdict(*oracle, k) : oracle_note) << "\n";
  }
}

bool run_config_demo(const std::string& name, const KeyConfig& config, std::uint64_t seed, std::ostream& out) {
  bool ok = true;
  out << "== " << name << ": K=" << config.receivers() << ", qualified " << config.qualified().to_string() << " ==\n";
  out << "keys:";
  for (const auto& [key, size] : config.keys()) out << " s" << key.to_string() << "=" << size;
  out << "\n\nbounds\n";
  const BoundsReport b = compute_bounds(config);
  row(out, "rate upper bound", std::to_string(b.rate_upper));
  if (b.exact) {
    row(out, "setting", to_string(b.exact->setting));
    row(out, "capacity C", b.exact->capacity.to_string());
    row(out, "minimum bandwidth", b.exact->beta_star ? b.exact->beta_star->to_string() : "unknown");
  }
  row(out, "bandwidth bound at C", b.bw_lower.value.to_string());
  row(out, "rate bound is loose", yes_no(b.gap));

  SynthOptions options;
  options.seed = seed;
  const SynthResult r = synthesize(config, options);
  const LinearScheme& s = r.scheme;
  out << "\nscheme\n";
  row(out, "builder", r.meta.builder + (r.meta.branch.empty() ? "" : " (" + r.meta.branch + ")"));
  row(out, "field / blocks", "GF(" + std::to_string(s.field().modulus()) + "), L = " + std::to_string(s.blocks()));
  row(out, "Lw / Lx", std::to_string(s.message_symbols()) + " / " + std::to_string(s.transmit_symbols()));
  row(out, "rate / bandwidth", s.rate().to_string() + " / " + s.bandwidth().to_string());
  if (!r.meta.groups.empty()) {
    auto groups = r.meta.groups;
    std::stable_sort(groups.begin(), groups.end(), [](const auto& x, const auto& y) { return x.i > y.i; });
    for (const auto& g : groups) {
      row(out, "group u=" + std::to_string(g.u) + " i=" + std::to_string(g.i),
          "rate " + std::to_string(g.rate) + ", bandwidth " + std::to_string(g.bandwidth));
    }
  }
  if (b.exact) {
    ok = ok && s.rate() == b.exact->capacity;
    if (b.exact->beta_star) ok = ok && s.bandwidth() == *b.exact->beta_star;
  }

  out << "\nverification\n";
  const VerifyReport algebraic = verify(s);
  ok = ok && algebraic.passed();
  std::optional<VerifyReport> oracle;
  std::string note;
  const OracleOptions oracle_options = oracle_options_from_env();
  if (oracle_states(s) <= oracle_options.max_states) {
    oracle = oracle_verify(s, oracle_options);
    ok = ok && oracle->passed();
  } else {
    note = "skipped (too large)";
  }
  receiver_table(out, s, algebraic, oracle, note);

  if (!oracle) {
    options.field_policy = FieldPolicy::compact;
    const SynthResult compact = synthesize(config, options);
    const LinearScheme& c = compact.scheme;
    out << "\ncompact-field build: GF(" << c.field().modulus() << "), Lw = " << c.message_symbols()
        << ", Lx = " << c.transmit_symbols() << "\n";
    const VerifyReport ca = verify(c);
    std::optional<VerifyReport> co;
    if (oracle_states(c) <= oracle_options.max_states) co = oracle_verify(c, oracle_options);
    receiver_table(out, c, ca, co, "skipped (too large)");
    ok = ok && ca.passed() && (!co || co->passed());
  }

  simulate(s, seed);
  out << "\nsimulation (seed " << seed << "): every qualified receiver recovered W\n";
  out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok;
}

bool run_region_demo(std::ostream& out) {
  const RegionSizes sizes{2, 2, 1};
  out << "== region: L1=" << sizes.l1 << ", L2=" << sizes.l2 << ", L12=" << sizes.l12 << " ==\n";
  out << "W1 -> receiver 1, W2 -> receiver 2, W12 -> both; receiver 3 holds no key\n\n";
  out << "  " << std::left << std::setw(5) << "R1" << std::setw(5) << "R2" << std::setw(6) << "R12" << std::setw(11)
      << "bandwidth" << std::setw(6) << "Lx" << std::setw(14) << "max leakage" << "case\n";
  bool ok = true;
  const Symbols cap = sizes.l1 + sizes.l2 + sizes.l12;
  const auto feasible = [&](RegionRates r) { return !region_violation(sizes, r); };
  for (Symbols r12 = cap; r12 >= 0; --r12) {
    for (Symbols r1 = 0; r1 <= cap; ++r1) {
      for (Symbols r2 = 0; r2 <= cap; ++r2) {
        const RegionRates r{r1, r2, r12};
        if (!feasible(r)) continue;
        // Boundary: no single rate can grow.
        if (feasible({r1 + 1, r2, r12}) || feasible({r1, r2 + 1, r12}) || feasible({r1, r2, r12 + 1})) continue;
        const SynthResult built = synth_multimessage(sizes, r);
        const VerifyReport o = oracle_verify(built.scheme);
        double leak = 0;
        for (const auto& [k, b] : o.leakage_bits) leak = std::max(leak, b);
        const Symbols beta = region_bandwidth(sizes, r);
        const bool row_ok = o.passed() && static_cast<Symbols>(built.scheme.transmit_symbols()) == beta;
        ok = ok && row_ok;
        out << "  " << std::left << std::setw(5) << r1 << std::setw(5) << r2 << std::setw(6) << r12 << std::setw(11)
            << beta << std::setw(6) << built.scheme.transmit_symbols() << std::setw(14) << bits(leak)
            << built.meta.branch << "\n";
      }
    }
  }
  const RegionRates outside{1, 1, 3};
  out << "\n  (1,1,3): " << region_violation(sizes, outside).value_or("feasible") << "\n";
  out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok;
}

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"ex1", "ex2", "ex3", "ex4", "fig4", "region"};
  return n;
}

std::optional<KeyConfig> config(const std::string& name) {
  if (name == "ex1") {
    return KeyConfig(4, ReceiverSet{1}, {{{1, 2}, 4}, {{1, 3}, 2}, {{1, 4}, 1}, {{1, 3, 4}, 3}});
  }
  if (name == "ex2") return KeyConfig(4, ReceiverSet{1, 2, 3}, {{{1}, 1}, {{1, 3}, 2}, {{2, 3}, 3}});
  if (name == "ex3") {
    return KeyConfig(4, ReceiverSet{1, 2},
                     {{{1}, 1}, {{2}, 2}, {{1, 3}, 2}, {{1, 4}, 3}, {{2, 3}, 1}, {{2, 4}, 2}, {{1, 2, 3}, 2},
                      {{1, 2, 4}, 1}});
  }
  if (name == "ex4") {
    std::map<ReceiverSet, Symbols> keys;
    for (auto u : nonempty_subsets(ReceiverSet::range(6)))
      if (u.size() == 3) keys[u] = 1;
    return KeyConfig(6, ReceiverSet{1, 2, 3}, keys);
  }
  if (name == "fig4") return fig4_config(1);
  return std::nullopt;
}

bool run(const std::string& name, std::uint64_t seed, std::ostream& out) {
  if (name == "region") return run_region_demo(out);
  const auto c = config(name);
  if (!c) throw Error("unknown demo " + name);
  return run_config_demo(name, *c, seed, out);
}

}  // namespace sgc::demos
