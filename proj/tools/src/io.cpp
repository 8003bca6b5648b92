#include "sgc/tools/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace sgc::io {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& pointer, const std::string& what) {
  throw ParseError((pointer.empty() ? "/" : pointer) + ": " + what);
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    // Drop the "[json.exception.parse_error.101] " prefix.
    if (auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw ParseError("malformed JSON: " + msg);
  }
}

const json& field(const json& obj, const std::string& pointer, const char* name) {
  if (!obj.is_object()) fail(pointer, "expected an object");
  auto it = obj.find(name);
  if (it == obj.end()) fail(pointer + "/" + name, "missing");
  return *it;
}

std::int64_t integer(const json& v, const std::string& pointer) {
  if (!v.is_number_integer()) fail(pointer, "expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t nonnegative(const json& v, const std::string& pointer) {
  const auto x = integer(v, pointer);
  if (x < 0) fail(pointer, "expected a nonnegative integer, got " + std::to_string(x));
  return x;
}

const json& array(const json& v, const std::string& pointer) {
  if (!v.is_array()) fail(pointer, "expected an array");
  return v;
}

ReceiverSet receiver_set(const json& v, const std::string& pointer, int receivers, bool allow_empty) {
  array(v, pointer);
  ReceiverSet s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string p = pointer + "/" + std::to_string(i);
    const auto k = integer(v[i], p);
    if (k < 1 || k > receivers) fail(p, "receiver " + std::to_string(k) + " outside [1.." + std::to_string(receivers) + "]");
    if (s.contains(static_cast<int>(k))) fail(p, "duplicate receiver " + std::to_string(k));
    s = s.with(static_cast<int>(k));
  }
  if (!allow_empty && s.empty()) fail(pointer, "empty receiver set");
  return s;
}

int receiver_count(const json& doc) {
  const auto k = integer(field(doc, "", "K"), "/K");
  if (k < 2 || k > kMaxReceivers) fail("/K", "K must lie in [2, " + std::to_string(kMaxReceivers) + "]");
  return static_cast<int>(k);
}

json set_json(ReceiverSet s) { return s.members(); }

FMatrix matrix(const json& v, const std::string& pointer, const PrimeField& f, std::size_t rows, std::size_t cols) {
  array(v, pointer);
  if (v.size() != rows) fail(pointer, "expected " + std::to_string(rows) + " rows, got " + std::to_string(v.size()));
  FMatrix m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = pointer + "/" + std::to_string(r);
    array(v[r], rp);
    if (v[r].size() != cols) fail(rp, "expected " + std::to_string(cols) + " entries, got " + std::to_string(v[r].size()));
    for (std::size_t c = 0; c < cols; ++c) {
      const std::string cp = rp + "/" + std::to_string(c);
      const auto x = nonnegative(v[r][c], cp);
      if (static_cast<std::uint64_t>(x) >= f.modulus()) fail(cp, "entry " + std::to_string(x) + " not reduced mod p");
      m.set(r, c, x);
    }
  }
  return m;
}

std::string matrix_json(const FMatrix& m) {
  if (m.rows() == 0) return "[]";
  std::string out = "[\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += "    [";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c > 0) out += ",";
      out += std::to_string(m.at(r, c).value());
    }
    out += r + 1 < m.rows() ? "],\n" : "]\n";
  }
  return out + "  ]";
}

}  // namespace

KeyConfig parse_config(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail("", "expected an object");
  const int k = receiver_count(doc);
  const ReceiverSet qualified = receiver_set(field(doc, "", "qualified"), "/qualified", k, false);
  const json& keys = array(field(doc, "", "keys"), "/keys");
  std::map<ReceiverSet, Symbols> sizes;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const std::string p = "/keys/" + std::to_string(i);
    const ReceiverSet subset = receiver_set(field(keys[i], p, "subset"), p + "/subset", k, false);
    const Symbols symbols = nonnegative(field(keys[i], p, "symbols"), p + "/symbols");
    if (!sizes.emplace(subset, symbols).second) fail(p + "/subset", "duplicate key " + subset.to_string());
  }
  try {
    return KeyConfig(k, qualified, sizes);
  } catch (const InvalidConfig& e) {
    fail("", e.what());
  }
}

std::string dump_config(const KeyConfig& config) {
  nlohmann::ordered_json doc;
  doc["K"] = config.receivers();
  doc["qualified"] = set_json(config.qualified());
  doc["keys"] = nlohmann::ordered_json::array();
  for (const auto& [subset, size] : config.keys()) {
    nlohmann::ordered_json key;
    key["subset"] = set_json(subset);
    key["symbols"] = size;
    doc["keys"].push_back(key);
  }
  return doc.dump(2) + "\n";
}

SchemeFile parse_scheme(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail("", "expected an object");
  const auto p = nonnegative(field(doc, "", "p"), "/p");
  if (!is_prime(static_cast<std::uint64_t>(p))) fail("/p", std::to_string(p) + " is not prime");
  const PrimeField f(static_cast<std::uint64_t>(p));
  const auto blocks = integer(field(doc, "", "L"), "/L");
  if (blocks < 1) fail("/L", "L must be positive");
  const auto lw = static_cast<std::size_t>(nonnegative(field(doc, "", "Lw"), "/Lw"));
  const auto lx = static_cast<std::size_t>(nonnegative(field(doc, "", "Lx"), "/Lx"));
  const int k = receiver_count(doc);
  const ReceiverSet qualified = receiver_set(field(doc, "", "qualified"), "/qualified", k, false);

  std::vector<Segment> layout;
  std::size_t d = 0;
  const json& segs = array(field(doc, "", "layout"), "/layout");
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string sp = "/layout/" + std::to_string(i);
    const ReceiverSet subset = receiver_set(field(segs[i], sp, "subset"), sp + "/subset", k, false);
    const auto width = static_cast<std::size_t>(nonnegative(field(segs[i], sp, "width"), sp + "/width"));
    layout.push_back({subset, width});
    d += width;
  }

  std::vector<MessagePart> messages;
  if (auto it = doc.find("messages"); it != doc.end()) {
    array(*it, "/messages");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string mp = "/messages/" + std::to_string(i);
      const ReceiverSet intended = receiver_set(field((*it)[i], mp, "intended"), mp + "/intended", k, true);
      const auto width = static_cast<std::size_t>(nonnegative(field((*it)[i], mp, "width"), mp + "/width"));
      messages.push_back({intended, width});
    }
  } else if (lw > 0) {
    messages.push_back({qualified, lw});
  }

  FMatrix a = matrix(field(doc, "", "A"), "/A", f, lx, lw);
  FMatrix b = matrix(field(doc, "", "B"), "/B", f, lx, d);

  SynthMeta meta;
  if (auto it = doc.find("meta"); it != doc.end()) {
    const json& m = *it;
    if (!m.is_object()) fail("/meta", "expected an object");
    if (m.contains("builder")) meta.builder = m["builder"].is_string() ? m["builder"].get<std::string>() : "";
    if (m.contains("seed")) meta.seed = static_cast<std::uint64_t>(nonnegative(m["seed"], "/meta/seed"));
    if (m.contains("escalations")) meta.escalations = static_cast<int>(nonnegative(m["escalations"], "/meta/escalations"));
    if (m.contains("branch") && m["branch"].is_string()) meta.branch = m["branch"].get<std::string>();
    if (m.contains("notes")) {
      for (std::size_t i = 0; i < array(m["notes"], "/meta/notes").size(); ++i) {
        if (!m["notes"][i].is_string()) fail("/meta/notes/" + std::to_string(i), "expected a string");
        meta.notes.push_back(m["notes"][i].get<std::string>());
      }
    }
    if (m.contains("groups")) {
      const json& g = array(m["groups"], "/meta/groups");
      for (std::size_t i = 0; i < g.size(); ++i) {
        const std::string gp = "/meta/groups/" + std::to_string(i);
        meta.groups.push_back({static_cast<int>(integer(field(g[i], gp, "u"), gp + "/u")),
                               static_cast<int>(integer(field(g[i], gp, "i"), gp + "/i")),
                               integer(field(g[i], gp, "rate"), gp + "/rate"),
                               integer(field(g[i], gp, "bandwidth"), gp + "/bandwidth")});
      }
    }
  }

  try {
    return {LinearScheme(f, blocks, k, qualified, std::move(layout), std::move(messages), std::move(a), std::move(b)),
            std::move(meta)};
  } catch (const Error& e) {
    fail("", e.what());
  }
}

std::string dump_scheme(const LinearScheme& s, const SynthMeta& meta) {
  const auto line = [](const char* key, const nlohmann::ordered_json& v) {
    return std::string("  \"") + key + "\": " + v.dump() + ",\n";
  };
  std::string out = "{\n";
  out += line("p", s.field().modulus());
  out += line("L", s.blocks());
  out += line("Lw", s.message_symbols());
  out += line("Lx", s.transmit_symbols());
  out += line("K", s.receivers());
  out += line("qualified", set_json(s.qualified()));

  nlohmann::ordered_json layout = nlohmann::ordered_json::array();
  for (const auto& seg : s.layout()) layout.push_back({{"subset", set_json(seg.subset)}, {"width", seg.width}});
  out += line("layout", layout);

  const bool single = s.messages().empty() ||
                      (s.messages().size() == 1 && s.messages().front().intended == s.qualified());
  if (!single) {
    nlohmann::ordered_json messages = nlohmann::ordered_json::array();
    for (const auto& m : s.messages()) messages.push_back({{"intended", set_json(m.intended)}, {"width", m.width}});
    out += line("messages", messages);
  }

  out += "  \"A\": " + matrix_json(s.a()) + ",\n";
  out += "  \"B\": " + matrix_json(s.b()) + ",\n";

  nlohmann::ordered_json m;
  m["builder"] = meta.builder;
  m["seed"] = meta.seed;
  m["escalations"] = meta.escalations;
  if (!meta.branch.empty()) m["branch"] = meta.branch;
  if (!meta.notes.empty()) m["notes"] = meta.notes;
  if (!meta.groups.empty()) {
    m["groups"] = nlohmann::ordered_json::array();
    for (const auto& g : meta.groups)
      m["groups"].push_back({{"u", g.u}, {"i", g.i}, {"rate", g.rate}, {"bandwidth", g.bandwidth}});
  }
  out += "  \"meta\": " + m.dump() + "\n}\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write to " + path + " failed");
}

}  // namespace sgc::io
