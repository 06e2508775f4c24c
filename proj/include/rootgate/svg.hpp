#pragma once

#include <string>

#include "rootgate/growth_sim.hpp"

namespace rootgate {

/// Static drawing of a network, optionally with the roots of a finished run
/// overlaid. Output is byte-stable for identical arguments.
std::string render_svg(const ChannelNetwork& net, const SimOutcome* outcome = nullptr);

}  // namespace rootgate
