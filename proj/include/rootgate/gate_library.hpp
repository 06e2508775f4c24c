#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rootgate/geometry.hpp"

namespace rootgate {

/// margin: minimum path-length lead that decides who wins a junction.
/// scale: multiplier applied to every channel length.
struct GateParams {
  Ticks margin = 2;
  Ticks scale = 1;
};

/// Throws std::invalid_argument unless margin >= 1 and scale >= 1.
void check_params(const GateParams& params);

enum class GateDesign { Basic, Gravity2x2, Gravity3x3, Attraction, HalfAdder };

/// CLI names: basic, grav2, grav3, attr, half-adder.
const char* design_name(GateDesign design);
std::optional<GateDesign> design_from_name(const std::string& name);
std::vector<GateDesign> all_designs();

/// `first` must pass `junction` at least `margin` ticks before `second` arrives there.
struct ArrivalOrder {
  ElementId first;
  ElementId second;
  ElementId junction;
};

/// A built gate plus the arrival-order requirements its layout relies on,
/// stated between input ports.
struct GateTemplate {
  ChannelNetwork network;
  std::vector<ArrivalOrder> order;
};

/// All templates lie in a disk centred on the origin with every port on its rim.
inline constexpr double kGateRadius = 10.0;

GateTemplate gate_template(GateDesign design, const GateParams& params = {});

ChannelNetwork build_basic_gravity_gate(const GateParams& params = {});
ChannelNetwork build_gravity_gate_2x2(const GateParams& params = {});
ChannelNetwork build_gravity_gate_3x3(const GateParams& params = {});
ChannelNetwork build_attraction_gate(const GateParams& params = {});
ChannelNetwork build_half_adder(const GateParams& params = {});

ChannelNetwork build_design(GateDesign design, const GateParams& params = {});

}  // namespace rootgate
