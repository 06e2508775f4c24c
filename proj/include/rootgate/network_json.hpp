#pragma once

#include <stdexcept>
#include <string>

#include "rootgate/geometry.hpp"

namespace rootgate {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Canonical JSON document (sorted keys, two-space indent, trailing newline).
std::string network_to_json(const ChannelNetwork& net);

/// Throws FormatError on malformed documents. Does not validate structure.
ChannelNetwork network_from_json(const std::string& text);

ChannelNetwork load_network(const std::string& path);
void save_network(const ChannelNetwork& net, const std::string& path);

}  // namespace rootgate
