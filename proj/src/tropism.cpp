#include "rootgate/tropism.hpp"

#include <algorithm>
#include <deque>

namespace rootgate {

namespace {

std::string describe(const std::vector<Violation>& v) {
  std::string s = "routing failed:";
  for (const auto& x : v) s += " [" + x.element + ": " + x.message + "]";
  return s;
}

// Channels from which some attractant port is forward-reachable.
std::set<ElementId> channels_reaching_attractant(const NetworkIndex& index) {
  const auto& net = index.network();
  std::set<ElementId> good_nodes(net.attractants.begin(), net.attractants.end());
  std::set<ElementId> good_channels;
  std::deque<ElementId> work(net.attractants.begin(), net.attractants.end());
  while (!work.empty()) {
    ElementId id = work.front();
    work.pop_front();
    for (const Channel* c : index.incoming(id)) {
      good_channels.insert(c->id);
      if (good_nodes.insert(c->from).second) work.push_back(c->from);
    }
  }
  return good_channels;
}

struct Candidate {
  const Channel* channel;
  double key;  // smaller ranks first
};

void rank(std::vector<Candidate>& cands) {
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (std::abs(a.key - b.key) > 1e-9) return a.key < b.key;
    return a.channel->id < b.channel->id;
  });
}

std::vector<ThroughPath> other_straights(const NetworkIndex& index, const ElementId& junction,
                                         const ElementId& in) {
  std::vector<ThroughPath> result;
  for (const Channel* c : index.incoming(junction)) {
    if (c->id == in) continue;
    if (auto s = straight_through(index, junction, c->id)) result.push_back({c->id, *s});
  }
  return result;
}

}  // namespace

RoutingError::RoutingError(std::vector<Violation> violations)
    : std::runtime_error(describe(violations)), violations_(std::move(violations)) {}

ChannelNetwork gravity_routing(ChannelNetwork net) {
  net.regime = Regime::Gravity;
  const Point g = normalized(net.gravity);
  std::vector<Violation> problems;
  std::vector<RoutingTable> tables;
  {
    const NetworkIndex index(net);
    for (const auto& j : net.junctions) {
      RoutingTable table;
      const auto& outs = index.outgoing(j.id);
      for (const Channel* in : index.incoming(j.id)) {
        const auto others = other_straights(index, j.id, in->id);
        std::vector<Candidate> cands;
        for (const Channel* o : outs) {
          const double align = dot(index.departure(*o), g);
          if (align < -1e-9) continue;
          const ThroughPath pass{in->id, o->id};
          const bool cuts = std::any_of(others.begin(), others.end(),
                                        [&](const ThroughPath& s) { return paths_cross(index, j.id, pass, s); });
          if (cuts) continue;
          cands.push_back({o, -align});
        }
        rank(cands);
        if (cands.empty() && !outs.empty())
          problems.push_back({j.id, "dead-end under gravity for incoming channel " + in->id});
        auto& list = table[in->id];
        for (const auto& c : cands) list.push_back({c.channel->id, {c.channel->id}});
      }
      tables.push_back(std::move(table));
    }
  }
  if (!problems.empty()) throw RoutingError(std::move(problems));
  for (std::size_t i = 0; i < net.junctions.size(); ++i) net.junctions[i].routing = std::move(tables[i]);
  return net;
}

ChannelNetwork attraction_routing(ChannelNetwork net) {
  net.regime = Regime::Attraction;
  std::vector<Violation> problems;
  std::vector<RoutingTable> tables;
  {
    const NetworkIndex index(net);
    const auto reaching = channels_reaching_attractant(index);
    for (const auto& j : net.junctions) {
      RoutingTable table;
      const auto& outs = index.outgoing(j.id);
      for (const Channel* in : index.incoming(j.id)) {
        const Point heading = index.arrival(*in);
        const auto others = other_straights(index, j.id, in->id);
        std::vector<Candidate> cands;
        for (const Channel* o : outs) {
          if (!reaching.count(o->id)) continue;
          const double turn = turn_degrees(heading, index.departure(*o));
          if (turn >= kMaxAttractionTurnDegrees - 1e-9) continue;
          cands.push_back({o, turn});
        }
        rank(cands);
        if (cands.empty() && !outs.empty())
          problems.push_back({j.id, "no attractant gradient for incoming channel " + in->id});
        auto& list = table[in->id];
        for (const auto& c : cands) {
          RouteEntry entry{c.channel->id, {c.channel->id}};
          const ThroughPath pass{in->id, c.channel->id};
          for (const auto& s : others) {
            if (!paths_cross(index, j.id, pass, s)) continue;
            entry.blocked_by.insert(j.id);
            entry.blocked_by.insert(s.out);
          }
          list.push_back(std::move(entry));
        }
      }
      tables.push_back(std::move(table));
    }
  }
  if (!problems.empty()) throw RoutingError(std::move(problems));
  for (std::size_t i = 0; i < net.junctions.size(); ++i) net.junctions[i].routing = std::move(tables[i]);
  return net;
}

ChannelNetwork apply_routing(ChannelNetwork net) {
  return net.regime == Regime::Gravity ? gravity_routing(std::move(net)) : attraction_routing(std::move(net));
}

}  // namespace rootgate
