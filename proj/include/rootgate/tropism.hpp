#pragma once

#include <stdexcept>
#include <vector>

#include "rootgate/geometry.hpp"

namespace rootgate {

/// Raised when a junction has no admissible continuation under the regime.
class RoutingError : public std::runtime_error {
 public:
  explicit RoutingError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Sharpest turn a growing apex can take at a junction under attraction.
inline constexpr double kMaxAttractionTurnDegrees = 90.0;

/// Fill routing tables by gravitropism.
///
/// For each incoming channel the candidates are the outgoing channels that do
/// not point upward and whose pass does not cut across another incoming
/// channel's straight-through pass. They are ranked by descending alignment
/// with gravity, ties by id. Each entry is blocked only by its own channel, so
/// an occupied target makes the apex fall through to the next preference.
ChannelNetwork gravity_routing(ChannelNetwork net);

/// Fill routing tables by attraction with inertia.
///
/// Candidates are outgoing channels that forward-reach an attractant port and
/// turn less than kMaxAttractionTurnDegrees, ranked straightest first, ties by
/// id. An entry whose pass crosses another incoming channel's straight-through
/// pass is also blocked by the junction and by that pass's outgoing channel:
/// a body already lying across the junction stops the apex.
ChannelNetwork attraction_routing(ChannelNetwork net);

/// Dispatch on net.regime.
ChannelNetwork apply_routing(ChannelNetwork net);

}  // namespace rootgate
