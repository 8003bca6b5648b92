#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sgc/keyspace.hpp"

namespace sgc::demos {

// Names accepted by `sgc demo`.
const std::vector<std::string>& names();

// Key configs behind ex1..ex4 and fig4; nullopt for other names.
std::optional<KeyConfig> config(const std::string& name);

// Prints the demo report. Returns false when any check in it fails.
bool run(const std::string& name, std::uint64_t seed, std::ostream& out);

}  // namespace sgc::demos
