#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rootgate {

/// Integer simulated time and channel length. Roots grow one length unit per tick.
using Ticks = std::int64_t;

/// Junction, channel and port ids share one namespace.
using ElementId = std::string;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double k, Point a) { return {k * a.x, k * a.y}; }
  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
Point normalized(Point a);

/// Point at distance `radius` from the origin along `angle` (radians).
Point polar(double radius, double angle);

enum class PortRole { Input, Output, Sink };

/// Where roots start (Input) or leave the network. Sink ports absorb roots
/// like outputs but are not reported as circuit outputs.
struct Port {
  ElementId id;
  Point position;
  PortRole role = PortRole::Input;
};

/// A directed unit-capacity channel. `via` holds interior polyline points;
/// the endpoints are the positions of `from` and `to`.
struct Channel {
  static constexpr int kCapacity = 1;

  ElementId id;
  ElementId from;
  ElementId to;
  Ticks length = 1;
  std::vector<Point> via;
};

struct RouteEntry {
  ElementId out;
  std::set<ElementId> blocked_by;

  friend bool operator==(const RouteEntry&, const RouteEntry&) = default;
};

/// Incoming channel id -> ordered preference list.
using RoutingTable = std::map<ElementId, std::vector<RouteEntry>>;

struct Junction {
  ElementId id;
  Point position;
  RoutingTable routing;
};

enum class Regime { Gravity, Attraction };

const char* to_string(Regime regime);

/// A declared non-interacting crossing of two channels (gravity circuits only).
struct Bridge {
  ElementId first;
  ElementId second;

  friend bool operator==(const Bridge&, const Bridge&) = default;
};

struct ChannelNetwork {
  Regime regime = Regime::Gravity;
  std::vector<Junction> junctions;
  std::vector<Channel> channels;
  std::vector<Port> ports;
  /// Logical input name -> input port ids. One root per port per TRUE input.
  std::map<std::string, std::set<ElementId>> bindings;
  Point gravity{0.0, -1.0};
  std::set<ElementId> attractants;
  std::vector<Bridge> bridges;

  std::vector<std::string> logical_inputs() const;
  /// Ids of ports with role Output, sorted.
  std::vector<ElementId> output_ports() const;
};

/// Id-indexed read-only view over a network. The network must outlive it.
class NetworkIndex {
 public:
  explicit NetworkIndex(const ChannelNetwork& net);

  const ChannelNetwork& network() const { return *net_; }

  const Channel* channel(const ElementId& id) const;
  const Junction* junction(const ElementId& id) const;
  const Port* port(const ElementId& id) const;
  bool contains(const ElementId& id) const;

  std::optional<Point> position(const ElementId& id) const;

  /// Channels ending / starting at an element, sorted by id.
  const std::vector<const Channel*>& incoming(const ElementId& id) const;
  const std::vector<const Channel*>& outgoing(const ElementId& id) const;

  /// Full polyline of a channel, endpoints included.
  std::vector<Point> polyline(const Channel& c) const;
  /// Unit heading of the first segment (leaving `from`).
  Point departure(const Channel& c) const;
  /// Unit heading of the last segment (entering `to`).
  Point arrival(const Channel& c) const;

 private:
  const ChannelNetwork* net_;
  std::unordered_map<ElementId, const Channel*> channels_;
  std::unordered_map<ElementId, const Junction*> junctions_;
  std::unordered_map<ElementId, const Port*> ports_;
  std::unordered_map<ElementId, std::vector<const Channel*>> incoming_;
  std::unordered_map<ElementId, std::vector<const Channel*>> outgoing_;
  std::vector<const Channel*> none_;
};

struct Violation {
  ElementId element;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every broken structural invariant, with the offending element. Empty iff valid.
std::vector<Violation> validate_network(const ChannelNetwork& net);

/// Shortest forward channel-length distance between two elements (ports or
/// junctions), or nullopt if `to` is not forward-reachable from `from`.
std::optional<Ticks> path_length(const ChannelNetwork& net, const ElementId& from,
                                 const ElementId& to);

/// An incoming -> outgoing pass through a junction.
struct ThroughPath {
  ElementId in;
  ElementId out;

  friend bool operator==(const ThroughPath&, const ThroughPath&) = default;
  friend auto operator<=>(const ThroughPath&, const ThroughPath&) = default;
};

/// The outgoing channel with the smallest turn from `in` (ties by id).
std::optional<ElementId> straight_through(const NetworkIndex& index, const ElementId& junction,
                                          const ElementId& in);

/// True if the two passes share no channel and interleave around the junction point.
bool paths_cross(const NetworkIndex& index, const ElementId& junction, const ThroughPath& a,
                 const ThroughPath& b);

/// Unordered pairs of straight-through passes that cross at the junction.
std::set<std::pair<ThroughPath, ThroughPath>> channels_crossing_at(const ChannelNetwork& net,
                                                                   const ElementId& junction);

/// Turn between two headings, in degrees in [0, 180].
double turn_degrees(Point heading_in, Point heading_out);

/// Proper intersections between channel polylines away from shared endpoints.
std::vector<Bridge> find_channel_crossings(const ChannelNetwork& net);

}  // namespace rootgate
