#include "rootgate/geometry.hpp"

#include <algorithm>
#include <deque>
#include <numbers>

namespace rootgate {

Point normalized(Point a) {
  const double n = norm(a);
  if (n == 0.0) return {0.0, 0.0};
  return {a.x / n, a.y / n};
}

Point polar(double radius, double angle) {
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

const char* to_string(Regime regime) {
  return regime == Regime::Gravity ? "gravity" : "attraction";
}

std::vector<std::string> ChannelNetwork::logical_inputs() const {
  std::vector<std::string> names;
  for (const auto& [name, ports] : bindings) names.push_back(name);
  return names;
}

std::vector<ElementId> ChannelNetwork::output_ports() const {
  std::vector<ElementId> ids;
  for (const auto& p : ports)
    if (p.role == PortRole::Output) ids.push_back(p.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

NetworkIndex::NetworkIndex(const ChannelNetwork& net) : net_(&net) {
  for (const auto& c : net.channels) channels_.emplace(c.id, &c);
  for (const auto& j : net.junctions) junctions_.emplace(j.id, &j);
  for (const auto& p : net.ports) ports_.emplace(p.id, &p);
  for (const auto& c : net.channels) {
    incoming_[c.to].push_back(&c);
    outgoing_[c.from].push_back(&c);
  }
  auto by_id = [](const Channel* a, const Channel* b) { return a->id < b->id; };
  for (auto& [id, list] : incoming_) std::sort(list.begin(), list.end(), by_id);
  for (auto& [id, list] : outgoing_) std::sort(list.begin(), list.end(), by_id);
}

const Channel* NetworkIndex::channel(const ElementId& id) const {
  auto it = channels_.find(id);
  return it == channels_.end() ? nullptr : it->second;
}

const Junction* NetworkIndex::junction(const ElementId& id) const {
  auto it = junctions_.find(id);
  return it == junctions_.end() ? nullptr : it->second;
}

const Port* NetworkIndex::port(const ElementId& id) const {
  auto it = ports_.find(id);
  return it == ports_.end() ? nullptr : it->second;
}

bool NetworkIndex::contains(const ElementId& id) const {
  return channel(id) || junction(id) || port(id);
}

std::optional<Point> NetworkIndex::position(const ElementId& id) const {
  if (const auto* j = junction(id)) return j->position;
  if (const auto* p = port(id)) return p->position;
  return std::nullopt;
}

const std::vector<const Channel*>& NetworkIndex::incoming(const ElementId& id) const {
  auto it = incoming_.find(id);
  return it == incoming_.end() ? none_ : it->second;
}

const std::vector<const Channel*>& NetworkIndex::outgoing(const ElementId& id) const {
  auto it = outgoing_.find(id);
  return it == outgoing_.end() ? none_ : it->second;
}

std::vector<Point> NetworkIndex::polyline(const Channel& c) const {
  std::vector<Point> pts;
  pts.reserve(c.via.size() + 2);
  pts.push_back(position(c.from).value_or(Point{}));
  pts.insert(pts.end(), c.via.begin(), c.via.end());
  pts.push_back(position(c.to).value_or(Point{}));
  return pts;
}

Point NetworkIndex::departure(const Channel& c) const {
  const auto pts = polyline(c);
  return normalized(pts[1] - pts[0]);
}

Point NetworkIndex::arrival(const Channel& c) const {
  const auto pts = polyline(c);
  return normalized(pts[pts.size() - 1] - pts[pts.size() - 2]);
}

double turn_degrees(Point heading_in, Point heading_out) {
  const double c = std::clamp(dot(normalized(heading_in), normalized(heading_out)), -1.0, 1.0);
  return std::acos(c) * 180.0 / std::numbers::pi;
}

namespace {

bool is_exit(const Port* p) { return p && p->role != PortRole::Input; }

// Forward reachability over channels, from the given seeds.
std::set<ElementId> forward_reach(const NetworkIndex& index, std::vector<ElementId> seeds) {
  std::set<ElementId> seen(seeds.begin(), seeds.end());
  std::deque<ElementId> work(seeds.begin(), seeds.end());
  while (!work.empty()) {
    ElementId id = work.front();
    work.pop_front();
    for (const Channel* c : index.outgoing(id)) {
      if (seen.insert(c->to).second) work.push_back(c->to);
    }
  }
  return seen;
}

bool has_forward_cycle(const NetworkIndex& index, const ChannelNetwork& net) {
  // Kahn over elements that appear as channel endpoints.
  std::map<ElementId, int> indegree;
  for (const auto& c : net.channels) {
    indegree.try_emplace(c.from, 0);
    ++indegree[c.to];
  }
  std::deque<ElementId> ready;
  for (const auto& [id, d] : indegree)
    if (d == 0) ready.push_back(id);
  std::size_t visited = 0;
  while (!ready.empty()) {
    ElementId id = ready.front();
    ready.pop_front();
    ++visited;
    for (const Channel* c : index.outgoing(id))
      if (--indegree[c->to] == 0) ready.push_back(c->to);
  }
  return visited != indegree.size();
}

}  // namespace

std::vector<Violation> validate_network(const ChannelNetwork& net) {
  std::vector<Violation> out;
  auto fail = [&](const ElementId& id, std::string msg) { out.push_back({id, std::move(msg)}); };

  std::set<ElementId> ids;
  auto claim = [&](const ElementId& id) {
    if (id.empty()) fail(id, "empty element id");
    else if (!ids.insert(id).second) fail(id, "duplicate element id");
  };
  for (const auto& j : net.junctions) claim(j.id);
  for (const auto& c : net.channels) claim(c.id);
  for (const auto& p : net.ports) claim(p.id);

  const NetworkIndex index(net);

  for (const auto& c : net.channels) {
    if (c.length <= 0) fail(c.id, "channel length must be a positive integer");
    const Port* from_port = index.port(c.from);
    const Port* to_port = index.port(c.to);
    if (!index.junction(c.from) && !from_port) fail(c.id, "channel starts at unknown element " + c.from);
    if (!index.junction(c.to) && !to_port) fail(c.id, "channel ends at unknown element " + c.to);
    if (is_exit(from_port)) fail(c.id, "channel starts at an exit port");
    if (to_port && to_port->role == PortRole::Input) fail(c.id, "channel ends at an input port");
  }

  for (const auto& p : net.ports) {
    const auto n_in = index.incoming(p.id).size();
    const auto n_out = index.outgoing(p.id).size();
    if (p.role == PortRole::Input && (n_out != 1 || n_in != 0))
      fail(p.id, "input port needs exactly one outgoing channel");
    if (p.role != PortRole::Input && n_in == 0) fail(p.id, "exit port has no incoming channel");
  }

  std::set<ElementId> bound;
  for (const auto& [name, ports] : net.bindings) {
    if (ports.empty()) fail(name, "logical input bound to no port");
    for (const auto& pid : ports) {
      const Port* p = index.port(pid);
      if (!p || p->role != PortRole::Input) fail(pid, "binding of " + name + " names a non-input port");
      if (!bound.insert(pid).second) fail(pid, "port bound to more than one logical input");
    }
  }
  for (const auto& p : net.ports)
    if (p.role == PortRole::Input && !bound.count(p.id)) fail(p.id, "input port not bound to any logical input");

  if (std::abs(norm(net.gravity) - 1.0) > 1e-9) fail("gravity", "gravity must be a unit vector");

  for (const auto& a : net.attractants)
    if (!is_exit(index.port(a))) fail(a, "attractant is not an exit port");

  for (const auto& j : net.junctions) {
    const auto& in = index.incoming(j.id);
    const auto& outs = index.outgoing(j.id);
    if (in.empty()) fail(j.id, "junction has no incoming channel");
    std::set<ElementId> incident{j.id};
    std::set<ElementId> out_ids;
    for (const Channel* c : in) incident.insert(c->id);
    for (const Channel* c : outs) {
      incident.insert(c->id);
      out_ids.insert(c->id);
    }
    for (const Channel* c : in) {
      auto it = j.routing.find(c->id);
      if (it == j.routing.end()) {
        fail(j.id, "routing table omits incoming channel " + c->id);
      } else if (it->second.empty() && !outs.empty()) {
        fail(j.id, "empty preference list for incoming channel " + c->id);
      }
    }
    for (const auto& [in_id, entries] : j.routing) {
      const Channel* c = index.channel(in_id);
      if (!c || c->to != j.id) fail(j.id, "routing key " + in_id + " is not an incoming channel");
      for (const auto& e : entries) {
        if (!out_ids.count(e.out)) fail(j.id, "routing entry " + e.out + " is not an outgoing channel");
        for (const auto& b : e.blocked_by)
          if (!incident.count(b)) fail(j.id, "blocked_by names non-incident element " + b);
      }
    }
  }

  for (const auto& b : net.bridges)
    if (!index.channel(b.first) || !index.channel(b.second)) fail(b.first, "bridge names unknown channel");

  if (has_forward_cycle(index, net)) fail("network", "forward channel graph has a cycle");

  // Connectivity: inputs reach exits, every junction lies between an input and an exit.
  std::vector<ElementId> inputs;
  for (const auto& p : net.ports)
    if (p.role == PortRole::Input) inputs.push_back(p.id);
  const auto from_inputs = forward_reach(index, inputs);
  for (const auto& pid : inputs) {
    const auto reach = forward_reach(index, {pid});
    bool exits = std::any_of(reach.begin(), reach.end(), [&](const ElementId& id) { return is_exit(index.port(id)); });
    if (!exits) fail(pid, "input port reaches no exit port");
  }
  for (const auto& j : net.junctions) {
    if (!from_inputs.count(j.id)) fail(j.id, "junction unreachable from any input port");
    const auto reach = forward_reach(index, {j.id});
    bool exits = std::any_of(reach.begin(), reach.end(), [&](const ElementId& id) { return is_exit(index.port(id)); });
    if (!exits) fail(j.id, "junction reaches no exit port");
  }
  return out;
}

std::optional<Ticks> path_length(const ChannelNetwork& net, const ElementId& from, const ElementId& to) {
  const NetworkIndex index(net);
  // Dijkstra; networks are small.
  std::map<ElementId, Ticks> dist{{from, 0}};
  std::set<std::pair<Ticks, ElementId>> frontier{{0, from}};
  while (!frontier.empty()) {
    auto [d, id] = *frontier.begin();
    frontier.erase(frontier.begin());
    if (id == to) return d;
    for (const Channel* c : index.outgoing(id)) {
      const Ticks nd = d + c->length;
      auto it = dist.find(c->to);
      if (it == dist.end() || nd < it->second) {
        if (it != dist.end()) frontier.erase({it->second, c->to});
        dist[c->to] = nd;
        frontier.insert({nd, c->to});
      }
    }
  }
  return std::nullopt;
}

std::optional<ElementId> straight_through(const NetworkIndex& index, const ElementId& junction,
                                          const ElementId& in) {
  const Channel* c = index.channel(in);
  if (!c) return std::nullopt;
  const Point heading = index.arrival(*c);
  std::optional<ElementId> best;
  double best_turn = 0.0;
  for (const Channel* o : index.outgoing(junction)) {
    const double t = turn_degrees(heading, index.departure(*o));
    if (!best || t < best_turn - 1e-9) {
      best = o->id;
      best_turn = t;
    }
  }
  return best;
}

namespace {

// Direction angle in [0, 2pi) of a channel mouth as seen from the junction.
double mouth_angle(const NetworkIndex& index, const ElementId& junction, const ElementId& channel) {
  const Channel* c = index.channel(channel);
  const Point dir = c->to == junction ? -1.0 * index.arrival(*c) : index.departure(*c);
  double a = std::atan2(dir.y, dir.x);
  if (a < 0) a += 2 * std::numbers::pi;
  return a;
}

bool strictly_between_ccw(double from, double to, double x) {
  const double two_pi = 2 * std::numbers::pi;
  auto wrap = [&](double v) { return std::fmod(std::fmod(v, two_pi) + two_pi, two_pi); };
  const double span = wrap(to - from);
  const double off = wrap(x - from);
  return off > 1e-12 && off < span - 1e-12;
}

}  // namespace

bool paths_cross(const NetworkIndex& index, const ElementId& junction, const ThroughPath& a,
                 const ThroughPath& b) {
  if (a.in == b.in || a.in == b.out || a.out == b.in || a.out == b.out) return false;
  const double a1 = mouth_angle(index, junction, a.in);
  const double a2 = mouth_angle(index, junction, a.out);
  const bool in_between = strictly_between_ccw(a1, a2, mouth_angle(index, junction, b.in));
  const bool out_between = strictly_between_ccw(a1, a2, mouth_angle(index, junction, b.out));
  return in_between != out_between;
}

std::set<std::pair<ThroughPath, ThroughPath>> channels_crossing_at(const ChannelNetwork& net,
                                                                   const ElementId& junction) {
  const NetworkIndex index(net);
  std::vector<ThroughPath> straights;
  for (const Channel* c : index.incoming(junction)) {
    if (auto s = straight_through(index, junction, c->id)) straights.push_back({c->id, *s});
  }
  std::set<std::pair<ThroughPath, ThroughPath>> result;
  for (std::size_t i = 0; i < straights.size(); ++i)
    for (std::size_t k = i + 1; k < straights.size(); ++k)
      if (paths_cross(index, junction, straights[i], straights[k]))
        result.insert(std::minmax(straights[i], straights[k]));
  return result;
}

namespace {

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  const double scale = std::max({1.0, norm(b - a) * norm(c - a)});
  if (v > 1e-12 * scale) return 1;
  if (v < -1e-12 * scale) return -1;
  return 0;
}

bool segments_properly_intersect(Point p1, Point p2, Point q1, Point q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  return o1 * o2 < 0 && o3 * o4 < 0;
}

struct Box {
  double x0, y0, x1, y1;
  bool overlaps(const Box& o) const { return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1; }
};

Box bounds(const std::vector<Point>& pts) {
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    b.x0 = std::min(b.x0, p.x);
    b.y0 = std::min(b.y0, p.y);
    b.x1 = std::max(b.x1, p.x);
    b.y1 = std::max(b.y1, p.y);
  }
  return b;
}

}  // namespace

std::vector<Bridge> find_channel_crossings(const ChannelNetwork& net) {
  const NetworkIndex index(net);
  std::vector<std::vector<Point>> lines;
  std::vector<Box> boxes;
  for (const auto& c : net.channels) {
    lines.push_back(index.polyline(c));
    boxes.push_back(bounds(lines.back()));
  }
  std::vector<Bridge> found;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t k = i + 1; k < lines.size(); ++k) {
      if (!boxes[i].overlaps(boxes[k])) continue;
      bool hit = false;
      for (std::size_t s = 0; s + 1 < lines[i].size() && !hit; ++s)
        for (std::size_t t = 0; t + 1 < lines[k].size() && !hit; ++t)
          hit = segments_properly_intersect(lines[i][s], lines[i][s + 1], lines[k][t], lines[k][t + 1]);
      if (hit) {
        const auto& a = net.channels[i].id;
        const auto& b = net.channels[k].id;
        found.push_back(a < b ? Bridge{a, b} : Bridge{b, a});
      }
    }
  }
  std::sort(found.begin(), found.end(),
            [](const Bridge& l, const Bridge& r) { return std::tie(l.first, l.second) < std::tie(r.first, r.second); });
  return found;
}

}  // namespace rootgate
