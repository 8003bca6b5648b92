#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "sgc/synth.hpp"
#include "sgc/tools/cli.hpp"
#include "sgc/tools/demos.hpp"
#include "sgc/tools/io.hpp"
#include "support/fixtures.hpp"

using namespace sgc;
using namespace sgc::testing;
namespace fs = std::filesystem;

namespace {

const std::string kData = SGC_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run sgc_run(std::vector<std::string> args) {
  args.insert(args.begin(), "sgc");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sgc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("config round trip") {
  for (const auto& c : {example_unicast(), example_multicast(), example_two_of_four(), example_symmetric()}) {
    CHECK(io::parse_config(io::dump_config(c)) == c);
  }
  for (const char* f : {"ex1_unicast.json", "ex4_symmetric.json", "symmetric_k5.json"}) {
    const KeyConfig c = io::parse_config(io::read_file(data(f)));
    CHECK(io::parse_config(io::dump_config(c)) == c);
  }
}

TEST_CASE("scheme round trip") {
  for (const auto& c : {example_unicast(), example_two_of_four(), two_of_five(1)}) {
    const SynthResult r = synthesize(c);
    const io::SchemeFile back = io::parse_scheme(io::dump_scheme(r.scheme, r.meta));
    CHECK(back.scheme == r.scheme);
    CHECK(back.meta.builder == r.meta.builder);
    CHECK(back.meta.seed == r.meta.seed);
    CHECK(back.meta.branch == r.meta.branch);
  }
  const SynthResult s = synthesize(example_symmetric());
  const io::SchemeFile back = io::parse_scheme(io::dump_scheme(s.scheme, s.meta));
  REQUIRE(back.meta.groups.size() == s.meta.groups.size());
  const SynthResult m = synth_multimessage({2, 2, 1}, {1, 1, 2});
  CHECK(io::parse_scheme(io::dump_scheme(m.scheme, m.meta)).scheme == m.scheme);
}

TEST_CASE("parse errors carry locations") {
  try {
    io::parse_config(io::read_file(data("malformed.json")));
    FAIL("no error");
  } catch (const io::ParseError& e) {
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
  try {
    io::parse_config(io::read_file(data("invalid_receiver.json")));
    FAIL("no error");
  } catch (const io::ParseError& e) {
    CHECK(std::string(e.what()).find("/keys/0/subset/1") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse_config(R"({"K": 3, "qualified": [1], "keys": [{"subset": [1], "symbols": -2}]})"),
                  io::ParseError);
  CHECK_THROWS_AS(io::parse_config(R"({"K": 3, "qualified": [1]})"), io::ParseError);
  CHECK_THROWS_AS(io::parse_scheme(R"({"p": 4})"), io::ParseError);
  CHECK_THROWS_AS(io::read_file(data("missing.json")), io::ParseError);
}

TEST_CASE("bounds command") {
  const Run r = sgc_run({"bounds", data("ex3_two_of_four.json")});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["C"] == 5);
  CHECK(j["beta_star"] == 9);
  CHECK(j["setting"] == "groupcast_2of4");
  CHECK(j["gap"] == false);

  const auto f = nlohmann::json::parse(sgc_run({"bounds", data("fig4_two_of_five.json")}).out);
  CHECK(f["C"] == "5/3");
  CHECK(f["rate_upper"] == 2);
  CHECK(f["gap"] == true);
  CHECK(f["bw_lower"]["value"] == "10/3");

  const auto o = nlohmann::json::parse(sgc_run({"bounds", data("open_two_of_five.json")}).out);
  CHECK(o["C"].is_null());

  const Run bad = sgc_run({"bounds", data("malformed.json")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line") != std::string::npos);
  CHECK(sgc_run({"bounds", data("invalid_receiver.json")}).code == 2);
  CHECK(sgc_run({"bounds"}).code == 2);
  CHECK(sgc_run({"nonsense"}).code == 2);
}

TEST_CASE("synth and verify commands") {
  const std::string out = scratch("ex2.json").string();
  const Run s = sgc_run({"synth", data("ex2_multicast.json"), "-o", out});
  CHECK(s.code == 0);
  const io::SchemeFile f = io::parse_scheme(io::read_file(out));
  CHECK(f.scheme.message_symbols() == 3);
  CHECK(f.scheme.transmit_symbols() == 6);

  const std::string ex3 = scratch("ex3.json").string();
  CHECK(sgc_run({"synth", data("ex3_two_of_four.json"), "-o", ex3}).code == 0);
  const Run v = sgc_run({"verify", ex3, "--oracle"});
  CHECK(v.code == 0);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j["algebraic"]["passed"] == true);
  CHECK(j["oracle"]["passed"] == true);

  CHECK(sgc_run({"synth", data("open_two_of_five.json"), "-o", scratch("open.json").string()}).code == 3);
}

TEST_CASE("seeds give different but valid schemes") {
  const std::string a = scratch("ex4_a.json").string(), b = scratch("ex4_b.json").string();
  CHECK(sgc_run({"synth", data("ex4_symmetric.json"), "-o", a, "--seed", "1"}).code == 0);
  CHECK(sgc_run({"synth", data("ex4_symmetric.json"), "-o", b, "--seed", "2"}).code == 0);
  CHECK(sgc_run({"verify", a}).code == 0);
  CHECK(sgc_run({"verify", b}).code == 0);
}

TEST_CASE("verify rejects a corrupted scheme") {
  const SynthResult r = synthesize(example_two_of_four());
  // Zero out the message coefficients: receivers 1 and 2 can no longer decode.
  FMatrix a(r.scheme.a().field(), r.scheme.a().rows(), r.scheme.a().cols());
  const LinearScheme broken(r.scheme.field(), r.scheme.blocks(), r.scheme.receivers(), r.scheme.qualified(),
                            r.scheme.layout(), a, r.scheme.b());
  const std::string path = scratch("broken.json").string();
  io::write_file(path, io::dump_scheme(broken, r.meta));
  const Run v = sgc_run({"verify", path});
  CHECK(v.code == 5);
  CHECK(v.err.find("receiver 1") != std::string::npos);
}

TEST_CASE("oversized oracle request is skipped") {
  const std::string path = scratch("ex1.json").string();
  CHECK(sgc_run({"synth", data("ex1_unicast.json"), "-o", path}).code == 0);
  const Run v = sgc_run({"verify", path, "--oracle"});
  CHECK(v.code == 0);
  const auto j = nlohmann::json::parse(v.out);
  CHECK(j["oracle"].contains("skipped"));
  CHECK(j["algebraic"]["passed"] == true);
}

TEST_CASE("demos are deterministic and pass") {
  for (const auto& name : {"ex1", "ex3", "fig4", "region"}) {
    const Run a = sgc_run({"demo", name});
    const Run b = sgc_run({"demo", name});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("result: PASS") != std::string::npos);
  }
  const Run ex1 = sgc_run({"demo", "ex1"});
  CHECK(ex1.out.find("capacity C              5\n") != std::string::npos);
  CHECK(ex1.out.find("minimum bandwidth       5\n") != std::string::npos);
  const Run fig4 = sgc_run({"demo", "fig4"});
  CHECK(fig4.out.find("rate / bandwidth        5/3 / 10/3") != std::string::npos);
  CHECK(sgc_run({"demo", "ex9"}).code == 2);
}
