#pragma once

#include <string>

#include "sgc/error.hpp"
#include "sgc/keyspace.hpp"
#include "sgc/scheme.hpp"
#include "sgc/synth.hpp"

namespace sgc::io {

// Malformed JSON (with line and column) or a document that does not validate
// (with the JSON pointer of the offending value).
class ParseError : public Error {
 public:
  using Error::Error;
};

KeyConfig parse_config(const std::string& text);
std::string dump_config(const KeyConfig& config);

struct SchemeFile {
  LinearScheme scheme;
  SynthMeta meta;
};

SchemeFile parse_scheme(const std::string& text);
std::string dump_scheme(const LinearScheme& scheme, const SynthMeta& meta = {});

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace sgc::io
