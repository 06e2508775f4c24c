#include <gtest/gtest.h>

#include <random>

#include "rootgate/compiler.hpp"
#include "rootgate/growth_sim.hpp"
#include "rootgate/network_json.hpp"
#include "support.hpp"

using namespace rootgate;
using testing_support::all_assignments;

namespace {

// Simulated outputs for every assignment of the netlist's inputs, projected
// onto the inputs the compiled network actually reads.
void expect_matches_reference(const Netlist& nl, const ChannelNetwork& net, const TiePolicy& tie) {
  for (const auto& a : all_assignments(nl.primary_inputs)) {
    InputAssignment used;
    for (const auto& n : net.logical_inputs()) used[n] = a.at(n);
    const auto o = simulate(net, used, tie);
    const auto want = testing_support::ReferenceEvaluator(nl, a).outputs();
    for (const auto& [name, v] : want) EXPECT_EQ(o.outputs.at(name), v) << name << "\n" << print_netlist(nl);
    EXPECT_TRUE(audit_outcome(net, o).empty());
  }
}

}  // namespace

TEST(Padding, ChainIsResolved) {
  const auto pads = solve_padding({"a", "b", "c"}, {{"a", "b", 3, ""}, {"b", "c", 2, ""}, {"a", "c", 4, ""}});
  EXPECT_EQ(pads, (std::map<std::string, Ticks>{{"a", 0}, {"b", 3}, {"c", 5}}));
}

TEST(Padding, NegativeGapsNeedNoPadding) {
  const auto pads = solve_padding({"a", "b"}, {{"a", "b", -7, ""}});
  EXPECT_EQ(pads, (std::map<std::string, Ticks>{{"a", 0}, {"b", 0}}));
}

TEST(Padding, ContradictionListsTheCycle) {
  try {
    solve_padding({"a", "b", "c"}, {{"a", "b", 1, "first"}, {"b", "c", 1, "second"}, {"c", "a", 0, "third"},
                                    {"a", "c", -5, "harmless"}});
    FAIL();
  } catch (const CompileError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("first"), std::string::npos);
    EXPECT_NE(msg.find("second"), std::string::npos);
    EXPECT_NE(msg.find("third"), std::string::npos);
    EXPECT_EQ(msg.find("harmless"), std::string::npos);
  }
}

TEST(Padding, SatisfiesRandomFeasibleSystems) {
  // Feasible by construction: gaps never exceed the difference of a hidden
  // assignment.
  std::mt19937 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> vars;
    std::map<std::string, Ticks> hidden;
    for (int i = 0; i < 6; ++i) {
      vars.push_back("v" + std::to_string(i));
      hidden[vars.back()] = std::uniform_int_distribution<Ticks>(0, 20)(rng);
    }
    std::vector<PadConstraint> cons;
    for (int k = 0; k < 10; ++k) {
      const auto& a = vars[rng() % vars.size()];
      const auto& b = vars[rng() % vars.size()];
      if (a == b) continue;
      cons.push_back({a, b, hidden[b] - hidden[a] - static_cast<Ticks>(rng() % 3), ""});
    }
    const auto pads = solve_padding(vars, cons);
    for (const auto& c : cons) EXPECT_GE(pads.at(c.later) - pads.at(c.earlier), c.min_gap);
    for (const auto& [v, p] : pads) EXPECT_GE(p, 0);
  }
}

TEST(Compile, SingleAttractionGateMatchesBuilder) {
  const auto nl = parse_netlist("in x,y; g = ATTR(x,y); out p = g.p, q = g.q;");
  const auto net = compile(nl);
  const auto lib = build_attraction_gate();
  for (const auto& a : all_assignments({"x", "y"}))
    EXPECT_EQ(simulate(net, a, TiePolicy::error()).outputs, simulate(lib, a, TiePolicy::error()).outputs);
}

TEST(Compile, SingleHalfAdder) {
  const auto nl = parse_netlist("in x,y; h = HALFADD(x,y); out s = h.p, o = h.q, c = h.r;");
  const auto net = compile(nl);
  for (const auto& a : all_assignments({"x", "y"})) {
    const auto o = simulate(net, a, TiePolicy::error()).outputs;
    const auto want = testing_support::half_adder(a);
    EXPECT_EQ(o.at("s"), want.at("p"));
    EXPECT_EQ(o.at("o"), want.at("q"));
    EXPECT_EQ(o.at("c"), want.at("r"));
  }
}

TEST(Compile, TwoAttractionGatesWithFanOut) {
  // y is read twice and a.p feeds b: carry = (!x&y)' & y = x&y.
  const auto nl = parse_netlist("in x,y; a = ATTR(x,y); b = ATTR(a.p,y); out carry = b.p, keep = b.q;");
  const auto net = compile(nl);
  EXPECT_EQ(net.bindings.at("y").size(), 2u);
  for (const auto& a : all_assignments({"x", "y"})) {
    const auto o = simulate(net, a, TiePolicy::error()).outputs;
    EXPECT_EQ(o.at("carry"), a.at("x") && a.at("y"));
    EXPECT_EQ(o.at("keep"), !a.at("x") && a.at("y"));
  }
}

TEST(Compile, RandomGrav2Chains) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Netlist nl;
    nl.primary_inputs = {"a", "b", "c"};
    std::vector<SignalRef> pool = {{"", "a"}, {"", "b"}, {"", "c"}};
    for (int g = 0; g < 3; ++g) {
      const std::string id = "g" + std::to_string(g);
      nl.gates.push_back({id, GateKind::Grav2, {pool[rng() % pool.size()], pool[rng() % pool.size()]}});
      pool.push_back({id, "p"});
      pool.push_back({id, "q"});
    }
    nl.primary_outputs = {{"p", {"g2", "p"}}, {"q", {"g2", "q"}}};
    const auto net = compile(nl);
    EXPECT_TRUE(validate_network(net).empty());
    expect_matches_reference(nl, net, TiePolicy::error());
  }
}

TEST(Compile, RandomNetlistsEitherRegime) {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const auto nl = testing_support::random_netlist(rng, 4, 4, trial % 2 == 0);
    const auto net = compile(nl);
    expect_matches_reference(nl, net, TiePolicy::error());
    if (net.regime == Regime::Attraction) EXPECT_TRUE(find_channel_crossings(net).empty());
  }
}

TEST(Compile, TiePolicyIsIrrelevant) {
  const auto nl = parse_netlist("in x,y,z; a = GRAV3(x,y,z); b = GRAV2(a.q, a.r); out p = b.p, q = b.q, s = a.p;");
  const auto net = compile(nl);
  expect_matches_reference(nl, net, TiePolicy::error());
  expect_matches_reference(nl, net, TiePolicy::both_deflect());
  expect_matches_reference(nl, net, TiePolicy::priority_by_input({"z", "y", "x"}));
}

TEST(Compile, Deterministic) {
  const auto nl = parse_netlist("in x,y; h = HALFADD(x,y); a = ATTR(h.p, h.r); out s = a.p, t = a.q, u = h.q;");
  EXPECT_EQ(network_to_json(compile(nl)), network_to_json(compile(nl)));
}

TEST(Compile, SameOutputTwiceGetsTwoCopies) {
  const auto nl = parse_netlist("in x,y; g = GRAV2(x,y); out a = g.p, b = g.p;");
  const auto net = compile(nl);
  expect_matches_reference(nl, net, TiePolicy::error());
}

TEST(Compile, Rejections) {
  EXPECT_THROW(compile(parse_netlist("in x,y; a = ATTR(x,y); b = GRAV2(a.p, y); out p = b.p;")), CompileError);
  EXPECT_THROW(compile(parse_netlist("in x,y;")), CompileError);
  EXPECT_THROW(compile(parse_netlist("in x,y; a = ATTR(x,y);")), CompileError);
}

TEST(Compile, ParametersRespected) {
  const auto nl = parse_netlist("in x,y; a = GRAV2(x,y); b = GRAV2(a.p, a.q); out p = b.p, q = b.q;");
  for (const GateParams p : {GateParams{1, 1}, GateParams{7, 3}}) {
    const auto net = compile(nl, p);
    expect_matches_reference(nl, net, TiePolicy::error());
  }
  EXPECT_THROW(compile(nl, {0, 1}), std::invalid_argument);
}
