#include <gtest/gtest.h>

#include <random>

#include "rootgate/gate_library.hpp"
#include "rootgate/tropism.hpp"

using namespace rootgate;

namespace {

std::vector<ElementId> outs(const ChannelNetwork& net, const ElementId& junction, const ElementId& in) {
  for (const auto& j : net.junctions)
    if (j.id == junction) {
      std::vector<ElementId> r;
      for (const auto& e : j.routing.at(in)) r.push_back(e.out);
      return r;
    }
  return {};
}

const RouteEntry& first_entry(const ChannelNetwork& net, const ElementId& junction, const ElementId& in) {
  for (const auto& j : net.junctions)
    if (j.id == junction) return j.routing.at(in).front();
  throw std::out_of_range(junction);
}

ChannelNetwork strip_routing(ChannelNetwork net) {
  for (auto& j : net.junctions) j.routing.clear();
  return net;
}

}  // namespace

TEST(Gravity, TwoByTwoPreferences) {
  const auto net = build_gravity_gate_2x2();
  EXPECT_EQ(outs(net, "j", "a"), (std::vector<ElementId>{"d", "c"}));
  EXPECT_EQ(outs(net, "j", "b"), (std::vector<ElementId>{"d"}));
}

TEST(Gravity, StraightDropHasSingleEntry) {
  ChannelNetwork net;
  net.ports = {{"in", {0, 10}, PortRole::Input}, {"out", {0, -10}, PortRole::Output}};
  net.junctions = {{"j", {0, 0}, {}}};
  net.channels = {{"c1", "in", "j", 3, {}}, {"c2", "j", "out", 3, {}}};
  net.bindings["a"] = {"in"};
  net = gravity_routing(net);
  EXPECT_EQ(outs(net, "j", "c1"), (std::vector<ElementId>{"c2"}));
}

TEST(Gravity, NothingDownhillIsAnError) {
  ChannelNetwork net;
  net.ports = {{"in", {0, -10}, PortRole::Input}, {"out", {0, 10}, PortRole::Output}};
  net.junctions = {{"j", {0, 0}, {}}};
  net.channels = {{"c1", "in", "j", 3, {}}, {"c2", "j", "out", 3, {}}};
  net.bindings["a"] = {"in"};
  EXPECT_THROW(gravity_routing(net), RoutingError);
}

TEST(Gravity, NeverRoutesUphill) {
  for (auto d : {GateDesign::Basic, GateDesign::Gravity2x2, GateDesign::Gravity3x3}) {
    const auto net = build_design(d);
    const NetworkIndex index(net);
    for (const auto& j : net.junctions)
      for (const auto& [in, entries] : j.routing)
        for (const auto& e : entries) EXPECT_GE(dot(index.departure(*index.channel(e.out)), net.gravity), 0.0);
  }
}

TEST(Attraction, GatePreferences) {
  const auto net = build_attraction_gate();
  EXPECT_EQ(outs(net, "j", "cx"), (std::vector<ElementId>{"cq"}));
  EXPECT_EQ(outs(net, "j", "cy"), (std::vector<ElementId>{"cp"}));
  EXPECT_TRUE(first_entry(net, "j", "cy").blocked_by.count("j"));
}

TEST(Attraction, SingleCorridor) {
  ChannelNetwork net;
  net.regime = Regime::Attraction;
  net.ports = {{"in", {-10, 0}, PortRole::Input}, {"out", {10, 1}, PortRole::Output}};
  net.junctions = {{"j", {0, 0}, {}}};
  net.channels = {{"c1", "in", "j", 3, {}}, {"c2", "j", "out", 3, {}}};
  net.bindings["a"] = {"in"};
  net.attractants = {"out"};
  net = attraction_routing(net);
  EXPECT_EQ(outs(net, "j", "c1"), (std::vector<ElementId>{"c2"}));
  EXPECT_EQ(first_entry(net, "j", "c1").blocked_by, (std::set<ElementId>{"c2"}));
}

TEST(Attraction, NoGradientIsAnError) {
  ChannelNetwork net;
  net.regime = Regime::Attraction;
  net.ports = {{"in", {-10, 0}, PortRole::Input}, {"out", {10, 0}, PortRole::Output}};
  net.junctions = {{"j", {0, 0}, {}}};
  net.channels = {{"c1", "in", "j", 3, {}}, {"c2", "j", "out", 3, {}}};
  net.bindings["a"] = {"in"};
  EXPECT_THROW(attraction_routing(net), RoutingError);
}

TEST(Attraction, StraightestContinuationRanksFirst) {
  // A fan of three exits; the one closest to straight ahead must lead.
  ChannelNetwork net;
  net.regime = Regime::Attraction;
  net.ports = {{"in", {-10, 0}, PortRole::Input},
               {"up", {7, 7}, PortRole::Output},
               {"ahead", {10, -1}, PortRole::Output},
               {"down", {7, -7}, PortRole::Output}};
  net.junctions = {{"j", {0, 0}, {}}};
  net.channels = {{"c", "in", "j", 2, {}}, {"cu", "j", "up", 2, {}}, {"ca", "j", "ahead", 2, {}},
                  {"cd", "j", "down", 2, {}}};
  net.bindings["a"] = {"in"};
  net.attractants = {"up", "ahead", "down"};
  net = attraction_routing(net);
  EXPECT_EQ(outs(net, "j", "c"), (std::vector<ElementId>{"ca", "cd", "cu"}));
}

TEST(Routing, BuildersMatchRegeneratedTables) {
  for (auto d : all_designs()) {
    const auto built = build_design(d);
    const auto again = apply_routing(strip_routing(built));
    for (std::size_t i = 0; i < built.junctions.size(); ++i)
      EXPECT_EQ(built.junctions[i].routing, again.junctions[i].routing) << design_name(d);
  }
}

TEST(Routing, PureFunctionOfGeometry) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<Ticks> m(1, 10), s(1, 5);
  for (int i = 0; i < 10; ++i) {
    const GateParams p{m(rng), s(rng)};
    for (auto d : all_designs()) {
      const auto a = apply_routing(strip_routing(build_design(d, p)));
      const auto b = apply_routing(strip_routing(build_design(d, p)));
      for (std::size_t k = 0; k < a.junctions.size(); ++k) EXPECT_EQ(a.junctions[k].routing, b.junctions[k].routing);
    }
  }
}
