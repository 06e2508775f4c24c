#include <gtest/gtest.h>

#include <random>

#include "rootgate/netlist.hpp"
#include "support.hpp"

using namespace rootgate;
using testing_support::all_assignments;

TEST(Parse, SingleGate) {
  const auto nl = parse_netlist("in x,y; g1 = ATTR(x,y); out p = g1.p, q = g1.q;");
  ASSERT_EQ(nl.gates.size(), 1u);
  EXPECT_EQ(nl.gates[0].kind, GateKind::Attr);
  EXPECT_EQ(nl.primary_inputs, (std::vector<std::string>{"x", "y"}));
  ASSERT_EQ(nl.primary_outputs.size(), 2u);
  EXPECT_EQ(nl.primary_outputs[1].source, (SignalRef{"g1", "q"}));
}

TEST(Parse, CascadeMatchesHandBuilt) {
  const auto nl = parse_netlist(R"(
    # two gravity gates in series
    in x, y;
    a = GRAV2(x, y);
    b = GRAV2(a.p, a.q);
    out p = b.p, q = b.q;
  )");
  Netlist want;
  want.primary_inputs = {"x", "y"};
  want.gates = {{"a", GateKind::Grav2, {{"", "x"}, {"", "y"}}}, {"b", GateKind::Grav2, {{"a", "p"}, {"a", "q"}}}};
  want.primary_outputs = {{"p", {"b", "p"}}, {"q", {"b", "q"}}};
  EXPECT_EQ(nl, want);
  EXPECT_EQ(nl.topological_order(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(nl.wires(), (std::vector<Wire>{{{"a", "p"}, "b", "x"}, {{"a", "q"}, "b", "y"}}));
}

TEST(Parse, SyntaxErrorPosition) {
  try {
    parse_netlist("in x,y;\ng = ATTR(x y);");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 12);
    EXPECT_EQ(e.expected(), "')'");
  }
}

TEST(Parse, UnknownKind) {
  try {
    parse_netlist("in x,y; g = NAND(x,y); out p = g.p;");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 13);
    EXPECT_NE(std::string(e.what()).find("NAND"), std::string::npos);
  }
}

TEST(Parse, BadCharacter) { EXPECT_THROW(parse_netlist("in x$;"), ParseError); }

TEST(Parse, EndOfInput) {
  try {
    parse_netlist("in x,y; g = ATTR(x,y)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("end of input"), std::string::npos);
  }
}

TEST(Check, DanglingInstance) {
  EXPECT_THROW(parse_netlist("in x,y; g = ATTR(x, h.p); out p = g.p;"), NetlistError);
}

TEST(Check, UndeclaredInput) { EXPECT_THROW(parse_netlist("in x; g = ATTR(x, y); out p = g.p;"), NetlistError); }

TEST(Check, UnknownOutputPort) {
  EXPECT_THROW(parse_netlist("in x,y; g = ATTR(x, y); out p = g.r;"), NetlistError);
}

TEST(Check, Arity) { EXPECT_THROW(parse_netlist("in x,y; g = GRAV3(x, y); out p = g.p;"), NetlistError); }

TEST(Check, Cycle) {
  EXPECT_THROW(parse_netlist("in x; a = ATTR(x, b.p); b = ATTR(a.p, x); out p = b.p;"), NetlistError);
}

TEST(Check, Duplicates) {
  EXPECT_THROW(parse_netlist("in x,x; g = ATTR(x,x); out p = g.p;"), NetlistError);
  EXPECT_THROW(parse_netlist("in x,y; g = ATTR(x,y); g = ATTR(y,x); out p = g.p;"), NetlistError);
  EXPECT_THROW(parse_netlist("in x,y; g = ATTR(x,y); out p = g.p, p = g.q;"), NetlistError);
  EXPECT_THROW(parse_netlist("in x,y; x = ATTR(x,y); out p = x.p;"), NetlistError);
}

TEST(Oracle, HalfAdderBothHigh) {
  const auto nl = parse_netlist("in x,y; h = HALFADD(x,y); out sum = h.p, either = h.q, carry = h.r;");
  EXPECT_EQ(eval_oracle(nl, {{"x", true}, {"y", true}}),
            (std::map<std::string, bool>{{"sum", false}, {"either", true}, {"carry", true}}));
}

TEST(Oracle, Grav3RowSix) {
  const auto nl = parse_netlist("in x,y,z; g = GRAV3(x,y,z); out p = g.p, q = g.q, r = g.r;");
  EXPECT_EQ(eval_oracle(nl, {{"x", true}, {"y", false}, {"z", true}}),
            (std::map<std::string, bool>{{"p", true}, {"q", false}, {"r", true}}));
}

TEST(Oracle, ZeroPreserving) {
  std::mt19937 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto nl = testing_support::random_netlist(rng, 5, 6, i % 2 == 0);
    std::map<std::string, bool> zeros;
    for (const auto& in : nl.primary_inputs) zeros[in] = false;
    for (const auto& [name, v] : eval_oracle(nl, zeros)) EXPECT_FALSE(v) << name;
  }
}

TEST(Oracle, AgreesWithReferenceEvaluator) {
  std::mt19937 rng(17);
  for (int i = 0; i < 60; ++i) {
    const auto nl = testing_support::random_netlist(rng, 5, 4, i % 2 == 0);
    for (const auto& a : all_assignments(nl.primary_inputs))
      EXPECT_EQ(eval_oracle(nl, a), testing_support::ReferenceEvaluator(nl, a).outputs());
  }
}

TEST(Print, RoundTrip) {
  std::mt19937 rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto nl = testing_support::random_netlist(rng, 5, 6, i % 2 == 1);
    check_netlist(nl);
    const auto text = print_netlist(nl);
    EXPECT_EQ(parse_netlist(text), nl) << text;
    EXPECT_EQ(print_netlist(parse_netlist(text)), text);
  }
}

TEST(Kinds, Table) {
  EXPECT_EQ(gate_kind_by_name("HALFADD")->outputs, (std::vector<std::string>{"p", "q", "r"}));
  EXPECT_EQ(gate_kind_by_name("GRAV3")->inputs.size(), 3u);
  EXPECT_TRUE(gate_kind_by_name("GRAV2")->gravity);
  EXPECT_FALSE(gate_kind_by_name("ATTR")->gravity);
  EXPECT_EQ(gate_kind_by_name("BASIC"), nullptr);
}

TEST(Expr, PrecedenceAndEvaluation) {
  const auto e = BoolExpr::parse("x | y & !z ^ 1");
  // | binds loosest, then ^, then &; ! binds tightest.
  for (const auto& a : all_assignments({"x", "y", "z"})) {
    const bool x = a.at("x"), y = a.at("y"), z = a.at("z");
    EXPECT_EQ(e.eval(a), x || ((y && !z) != true));
  }
  EXPECT_EQ(e.variables(), (std::vector<std::string>{"x", "y", "z"}));
}

TEST(Expr, Parentheses) {
  const auto e = BoolExpr::parse("z&(x|y)");
  EXPECT_TRUE(e.eval({{"x", false}, {"y", true}, {"z", true}}));
  EXPECT_FALSE(e.eval({{"x", true}, {"y", true}, {"z", false}}));
}

TEST(Expr, Errors) {
  EXPECT_THROW(BoolExpr::parse("x &"), ParseError);
  EXPECT_THROW(BoolExpr::parse("(x"), ParseError);
  EXPECT_THROW(BoolExpr::parse("x y"), ParseError);
  EXPECT_THROW(BoolExpr::parse("x").eval({{"y", true}}), std::invalid_argument);
}
