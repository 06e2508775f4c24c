#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootgate/gate_library.hpp"
#include "rootgate/netlist.hpp"

namespace rootgate {

class CompileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// pad[later] - pad[earlier] >= min_gap
struct PadConstraint {
  std::string earlier;
  std::string later;
  Ticks min_gap = 0;
  std::string reason;
};

/// Smallest non-negative integer pads meeting every constraint. Throws
/// CompileError naming the constraints on a contradictory cycle.
std::map<std::string, Ticks> solve_padding(const std::vector<std::string>& vars,
                                           const std::vector<PadConstraint>& constraints);

/// Physical template for a netlist gate kind.
GateDesign design_for(GateKind kind);

/// Lay out a netlist as one channel network.
///
/// Every primary output's driving gate becomes the root of a tree; a signal
/// read in several places is rebuilt once per reader. Gate copies are only
/// translated, never rotated, so regenerated routing matches the templates.
/// Each copy's input channels are padded so that every arrival-order
/// requirement of its template holds for all input assignments.
///
/// Primary inputs become Input ports named "<input>#<n>", primary outputs
/// become Output ports named after the output, unused gate outputs become
/// Sink ports. Gravity circuits record channel crossings as bridges;
/// attraction circuits with a crossing are rejected.
ChannelNetwork compile(const Netlist& nl, const GateParams& params = {});

}  // namespace rootgate
