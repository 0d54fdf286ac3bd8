#pragma once

#include <string>
#include <string_view>

#include "rbn/genome.hpp"

namespace rbn {

// {"kind":"full","r":N} or {"kind":"grid","rows":N,"cols":N}
std::string topology_to_json(const Topology& t);
Topology topology_from_json(std::string_view text);

// JSON text: header fields one per line, one node record per line. Function
// and refunc tables are 0/1 strings, rewire tables are lists of shift rows.
std::string serialize_genome(const NetworkGenome& g);

// Throws SchemaError naming the offending field path, including the field a
// truncated document ends inside. Does not check topology legality; see
// validate_genome.
NetworkGenome deserialize_genome(std::string_view text);

}  // namespace rbn
