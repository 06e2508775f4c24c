#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootgate/geometry.hpp"

namespace rootgate {

enum class RootStatus { Growing, Blocked, Exited };

struct RootApex {
  int id = 0;
  ElementId source_port;
  std::string input;  // logical input that initiated this root
  /// Ports, channels and junctions in traversal order, starting at source_port.
  std::vector<ElementId> trajectory;
  ElementId channel;  // current (or last) channel
  Ticks grown = 0;    // distance along `channel`
  Ticks entered_at = 0;
  RootStatus status = RootStatus::Growing;
  ElementId exit_port;  // set when Exited

  friend bool operator==(const RootApex&, const RootApex&) = default;
};

enum class EventKind { Initiated, ArrivedAtJunction, EnteredChannel, Deflected, Blocked, Exited };

const char* to_string(EventKind kind);

struct TraceEvent {
  Ticks time = 0;
  EventKind kind = EventKind::Initiated;
  int root = 0;
  ElementId element;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Elements permanently filled by root bodies.
struct OccupancyState {
  std::set<ElementId> occupied_channels;
  std::set<ElementId> occupied_junctions;
  std::map<ElementId, int> owner;

  bool occupied(const ElementId& id) const { return owner.count(id) != 0; }

  friend bool operator==(const OccupancyState&, const OccupancyState&) = default;
};

/// How simultaneous contention at a junction is settled.
struct TiePolicy {
  enum class Kind { Error, BothDeflect, PriorityByInput };

  Kind kind = Kind::Error;
  std::vector<std::string> priority;  // PriorityByInput only, strongest first

  static TiePolicy error() { return {Kind::Error, {}}; }
  static TiePolicy both_deflect() { return {Kind::BothDeflect, {}}; }
  static TiePolicy priority_by_input(std::vector<std::string> order) {
    return {Kind::PriorityByInput, std::move(order)};
  }
};

using InputAssignment = std::map<std::string, bool>;
using DelayMap = std::map<std::string, Ticks>;
using OutputMap = std::map<ElementId, bool>;

struct SimOutcome {
  OutputMap outputs;  // every Output-role port
  std::vector<RootApex> roots;
  std::vector<TraceEvent> trace;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Same-tick contention under TiePolicy::Error.
class TieError : public SimulationError {
 public:
  TieError(ElementId junction, Ticks time, std::vector<int> roots);

  const ElementId& junction() const { return junction_; }
  Ticks time() const { return time_; }
  const std::vector<int>& roots() const { return roots_; }

 private:
  ElementId junction_;
  Ticks time_;
  std::vector<int> roots_;
};

/// A root that has not been initiated yet.
struct PendingStart {
  Ticks time = 0;
  int root = 0;
  ElementId port;
  std::string input;

  friend bool operator==(const PendingStart&, const PendingStart&) = default;
};

/// Complete mutable engine state; serializable so a run can be resumed.
struct EngineState {
  Ticks time = 0;
  std::vector<RootApex> roots;
  std::vector<PendingStart> pending;
  OccupancyState occupancy;

  bool finished() const;

  friend bool operator==(const EngineState&, const EngineState&) = default;
};

std::string engine_state_to_json(const EngineState& state);
EngineState engine_state_from_json(const std::string& text);

/// Fresh engine state: one pending root per port bound to a TRUE input.
/// Root ids follow sorted port id order.
EngineState initial_state(const ChannelNetwork& net, const InputAssignment& inputs, const DelayMap& delays = {});

/// Advance to the next event time and process everything due then. Junction
/// decisions come before channel entries; both are ordered by root id.
std::vector<TraceEvent> step(const NetworkIndex& index, EngineState& state, const TiePolicy& tie);

/// Run to completion. Throws SimulationError on invalid networks or inputs and
/// TieError on contention under TiePolicy::Error.
SimOutcome simulate(const ChannelNetwork& net, const InputAssignment& inputs, const TiePolicy& tie,
                    const DelayMap& delays = {});

/// simulate() once per delay applied to `input`; returns the output maps in order.
std::vector<OutputMap> apply_delay_insensitivity_probe(const ChannelNetwork& net, const InputAssignment& inputs,
                                                       const TiePolicy& tie, const std::string& input,
                                                       const std::vector<Ticks>& delays);

/// Checks capacity, permanent occupancy, root conservation, causal ordering and
/// the termination bound on a finished run. Returns human-readable violations.
std::vector<std::string> audit_outcome(const ChannelNetwork& net, const SimOutcome& outcome, Ticks max_delay = 0);

/// One JSON object per line: time, kind, root, element.
std::string trace_to_jsonl(const std::vector<TraceEvent>& trace);

}  // namespace rootgate
