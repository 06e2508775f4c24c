#include "rootgate/network_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rootgate {

using nlohmann::json;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("point must be a two-element array");
  return {j[0].get<double>(), j[1].get<double>()};
}

const char* role_name(PortRole r) {
  switch (r) {
    case PortRole::Input: return "input";
    case PortRole::Output: return "output";
    case PortRole::Sink: return "sink";
  }
  return "input";
}

PortRole role_from(const std::string& s) {
  if (s == "input") return PortRole::Input;
  if (s == "output") return PortRole::Output;
  if (s == "sink") return PortRole::Sink;
  throw FormatError("unknown port role '" + s + "'");
}

}  // namespace

std::string network_to_json(const ChannelNetwork& net) {
  json doc;
  doc["regime"] = to_string(net.regime);
  doc["gravity"] = point_json(net.gravity);
  doc["attractants"] = json(net.attractants);

  json bindings = json::object();
  for (const auto& [name, ports] : net.bindings) bindings[name] = json(ports);
  doc["bindings"] = bindings;

  json ports = json::array();
  for (const auto& p : net.ports)
    ports.push_back({{"id", p.id}, {"position", point_json(p.position)}, {"role", role_name(p.role)}});
  doc["ports"] = ports;

  json channels = json::array();
  for (const auto& c : net.channels) {
    json via = json::array();
    for (const auto& v : c.via) via.push_back(point_json(v));
    channels.push_back({{"id", c.id}, {"from", c.from}, {"to", c.to}, {"length", c.length}, {"via", via}});
  }
  doc["channels"] = channels;

  json junctions = json::array();
  for (const auto& j : net.junctions) {
    json routing = json::object();
    for (const auto& [in, entries] : j.routing) {
      json list = json::array();
      for (const auto& e : entries) list.push_back({{"out", e.out}, {"blocked_by", json(e.blocked_by)}});
      routing[in] = list;
    }
    junctions.push_back({{"id", j.id}, {"position", point_json(j.position)}, {"routing", routing}});
  }
  doc["junctions"] = junctions;

  json bridges = json::array();
  for (const auto& b : net.bridges) bridges.push_back(json::array({b.first, b.second}));
  doc["bridges"] = bridges;

  return doc.dump(2) + "\n";
}

ChannelNetwork network_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("network JSON: ") + e.what());
  }
  try {
    ChannelNetwork net;
    const auto regime = doc.at("regime").get<std::string>();
    if (regime == "gravity") net.regime = Regime::Gravity;
    else if (regime == "attraction") net.regime = Regime::Attraction;
    else throw FormatError("unknown regime '" + regime + "'");
    net.gravity = point_from(doc.at("gravity"));
    net.attractants = doc.at("attractants").get<std::set<ElementId>>();
    for (const auto& [name, ports] : doc.at("bindings").items())
      net.bindings[name] = ports.get<std::set<ElementId>>();
    for (const auto& p : doc.at("ports"))
      net.ports.push_back({p.at("id").get<std::string>(), point_from(p.at("position")),
                           role_from(p.at("role").get<std::string>())});
    for (const auto& c : doc.at("channels")) {
      Channel ch{c.at("id").get<std::string>(), c.at("from").get<std::string>(), c.at("to").get<std::string>(),
                 c.at("length").get<Ticks>(), {}};
      for (const auto& v : c.at("via")) ch.via.push_back(point_from(v));
      net.channels.push_back(std::move(ch));
    }
    for (const auto& j : doc.at("junctions")) {
      Junction junction{j.at("id").get<std::string>(), point_from(j.at("position")), {}};
      for (const auto& [in, entries] : j.at("routing").items()) {
        auto& list = junction.routing[in];
        for (const auto& e : entries)
          list.push_back({e.at("out").get<std::string>(), e.at("blocked_by").get<std::set<ElementId>>()});
      }
      net.junctions.push_back(std::move(junction));
    }
    if (doc.contains("bridges"))
      for (const auto& b : doc.at("bridges")) net.bridges.push_back({b.at(0).get<std::string>(), b.at(1).get<std::string>()});
    return net;
  } catch (const json::exception& e) {
    throw FormatError(std::string("network JSON: ") + e.what());
  }
}

ChannelNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return network_from_json(ss.str());
}

void save_network(const ChannelNetwork& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  out << network_to_json(net);
}

}  // namespace rootgate
