#include "rootgate/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace rootgate {

namespace {

std::vector<bool> eval_grav2(std::span<const bool> v) { return {v[0] && v[1], v[0] || v[1]}; }
std::vector<bool> eval_grav3(std::span<const bool> v) {
  return {v[0] || v[1] || v[2], v[0] && v[1], v[2] && (v[0] || v[1])};
}
std::vector<bool> eval_attr(std::span<const bool> v) { return {!v[0] && v[1], v[0]}; }
std::vector<bool> eval_halfadd(std::span<const bool> v) { return {v[0] != v[1], v[0] || v[1], v[0] && v[1]}; }

const std::vector<GateKindSpec>& specs() {
  static const std::vector<GateKindSpec> kSpecs = {
      {GateKind::Grav2, "GRAV2", {"x", "y"}, {"p", "q"}, true, eval_grav2},
      {GateKind::Grav3, "GRAV3", {"x", "y", "z"}, {"p", "q", "r"}, true, eval_grav3},
      {GateKind::Attr, "ATTR", {"x", "y"}, {"p", "q"}, false, eval_attr},
      {GateKind::HalfAdd, "HALFADD", {"x", "y"}, {"p", "q", "r"}, false, eval_halfadd},
  };
  return kSpecs;
}

}  // namespace

const GateKindSpec& gate_kind_spec(GateKind kind) {
  for (const auto& s : specs())
    if (s.kind == kind) return s;
  throw std::logic_error("unknown gate kind");
}

const GateKindSpec* gate_kind_by_name(const std::string& name) {
  for (const auto& s : specs())
    if (name == s.name) return &s;
  return nullptr;
}

const GateInstance* Netlist::gate(const std::string& id) const {
  for (const auto& g : gates)
    if (g.id == id) return &g;
  return nullptr;
}

std::vector<Wire> Netlist::wires() const {
  std::vector<Wire> out;
  for (const auto& g : gates) {
    const auto& spec = gate_kind_spec(g.kind);
    for (std::size_t i = 0; i < g.args.size() && i < spec.inputs.size(); ++i)
      if (!g.args[i].is_primary()) out.push_back({g.args[i], g.id, spec.inputs[i]});
  }
  return out;
}

std::vector<std::string> Netlist::topological_order() const {
  std::vector<std::string> order;
  std::map<std::string, int> mark;  // 1 = on stack, 2 = done
  std::function<void(const GateInstance&)> visit = [&](const GateInstance& g) {
    auto& m = mark[g.id];
    if (m == 2) return;
    if (m == 1) throw NetlistError("cycle through gate " + g.id);
    m = 1;
    for (const auto& a : g.args)
      if (!a.is_primary())
        if (const auto* d = gate(a.instance)) visit(*d);
    mark[g.id] = 2;
    order.push_back(g.id);
  };
  for (const auto& g : gates) visit(g);
  return order;
}

ParseError::ParseError(int line, int column, std::string expected, std::string found)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": expected " + expected +
                         ", found " + found),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Kind, Punct, End };

struct Token {
  Tok type;
  std::string text;
  int line;
  int column;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
    } else if (std::islower(static_cast<unsigned char>(c))) {
      Token t{Tok::Ident, "", line, col};
      while (i < src.size() && (std::islower(static_cast<unsigned char>(src[i])) ||
                                std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
      out.push_back(std::move(t));
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      Token t{Tok::Kind, "", line, col};
      while (i < src.size() && (std::isupper(static_cast<unsigned char>(src[i])) ||
                                std::isdigit(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
        t.text += src[i];
        advance();
      }
      out.push_back(std::move(t));
    } else if (std::string("=(),;.").find(c) != std::string::npos) {
      out.push_back({Tok::Punct, std::string(1, c), line, col});
      advance();
    } else {
      throw ParseError(line, col, "identifier, gate kind or punctuation", std::string("'") + c + "'");
    }
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Netlist parse() {
    Netlist nl;
    while (peek().type != Tok::End) {
      const Token& t = peek();
      if (t.type == Tok::Ident && t.text == "in") {
        next();
        do nl.primary_inputs.push_back(ident("input name"));
        while (accept(","));
        expect(";");
      } else if (t.type == Tok::Ident && t.text == "out") {
        next();
        do {
          PrimaryOutput o;
          o.name = ident("output name");
          expect("=");
          o.source.instance = ident("gate instance");
          expect(".");
          o.source.port = ident("gate output port");
          nl.primary_outputs.push_back(std::move(o));
        } while (accept(","));
        expect(";");
      } else if (t.type == Tok::Ident) {
        GateInstance g;
        g.id = ident("gate instance");
        expect("=");
        const Token& k = peek();
        const GateKindSpec* spec = k.type == Tok::Kind ? gate_kind_by_name(k.text) : nullptr;
        if (!spec) fail("gate kind (GRAV2, GRAV3, ATTR, HALFADD)");
        g.kind = spec->kind;
        next();
        expect("(");
        do g.args.push_back(arg());
        while (accept(","));
        expect(")");
        expect(";");
        nl.gates.push_back(std::move(g));
      } else {
        fail("statement ('in', 'out' or a gate instance)");
      }
    }
    return nl;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const Token& t = peek();
    const std::string found = t.type == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(t.line, t.column, expected, found);
  }

  bool accept(const char* punct) {
    if (peek().type == Tok::Punct && peek().text == punct) {
      next();
      return true;
    }
    return false;
  }

  void expect(const char* punct) {
    if (!accept(punct)) fail(std::string("'") + punct + "'");
  }

  std::string ident(const char* what) {
    if (peek().type != Tok::Ident || peek().text == "in" || peek().text == "out") fail(what);
    return next().text;
  }

  SignalRef arg() {
    std::string first = ident("signal");
    if (accept(".")) return {first, ident("gate output port")};
    return {"", first};
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

void check_netlist(const Netlist& nl) {
  std::set<std::string> inputs;
  for (const auto& in : nl.primary_inputs)
    if (!inputs.insert(in).second) throw NetlistError("duplicate primary input " + in);
  std::set<std::string> ids;
  for (const auto& g : nl.gates) {
    if (inputs.count(g.id)) throw NetlistError("gate " + g.id + " shadows a primary input");
    if (!ids.insert(g.id).second) throw NetlistError("duplicate gate instance " + g.id);
  }
  auto check_ref = [&](const SignalRef& r, const std::string& where) {
    if (r.is_primary()) {
      if (!inputs.count(r.port)) throw NetlistError("dangling wire: " + where + " reads undeclared signal " + r.port);
      return;
    }
    const GateInstance* src = nl.gate(r.instance);
    if (!src) throw NetlistError("dangling wire: " + where + " reads undeclared instance " + r.instance);
    const auto& outs = gate_kind_spec(src->kind).outputs;
    if (std::find(outs.begin(), outs.end(), r.port) == outs.end())
      throw NetlistError("dangling wire: " + r.str() + " is not an output of " + gate_kind_spec(src->kind).name);
  };
  for (const auto& g : nl.gates) {
    const auto& spec = gate_kind_spec(g.kind);
    if (g.args.size() != spec.inputs.size())
      throw NetlistError("gate " + g.id + " (" + spec.name + ") takes " + std::to_string(spec.inputs.size()) +
                         " inputs, got " + std::to_string(g.args.size()));
    for (const auto& a : g.args) check_ref(a, "gate " + g.id);
  }
  std::set<std::string> outs;
  for (const auto& o : nl.primary_outputs) {
    if (!outs.insert(o.name).second) throw NetlistError("duplicate primary output " + o.name);
    check_ref(o.source, "output " + o.name);
  }
  nl.topological_order();
}

Netlist parse_netlist(const std::string& text) {
  Netlist nl = Parser(lex(text)).parse();
  check_netlist(nl);
  return nl;
}

std::string print_netlist(const Netlist& nl) {
  std::string s;
  auto join = [](const std::vector<std::string>& parts) {
    std::string r;
    for (const auto& p : parts) r += (r.empty() ? "" : ", ") + p;
    return r;
  };
  if (!nl.primary_inputs.empty()) s += "in " + join(nl.primary_inputs) + ";\n";
  for (const auto& g : nl.gates) {
    std::vector<std::string> args;
    for (const auto& a : g.args) args.push_back(a.str());
    s += g.id + " = " + gate_kind_spec(g.kind).name + "(" + join(args) + ");\n";
  }
  if (!nl.primary_outputs.empty()) {
    std::vector<std::string> items;
    for (const auto& o : nl.primary_outputs) items.push_back(o.name + " = " + o.source.str());
    s += "out " + join(items) + ";\n";
  }
  return s;
}

namespace {

using Values = std::map<std::string, std::vector<bool>>;

bool lookup(const Values& gate_values, const Netlist& nl, const std::map<std::string, bool>& inputs,
            const SignalRef& ref) {
  if (ref.is_primary()) {
    auto it = inputs.find(ref.port);
    if (it == inputs.end()) throw std::invalid_argument("no value for primary input " + ref.port);
    return it->second;
  }
  const auto& outs = gate_kind_spec(nl.gate(ref.instance)->kind).outputs;
  const auto idx = std::find(outs.begin(), outs.end(), ref.port) - outs.begin();
  return gate_values.at(ref.instance).at(idx);
}

Values evaluate_gates(const Netlist& nl, const std::map<std::string, bool>& inputs) {
  Values values;
  for (const auto& id : nl.topological_order()) {
    const GateInstance& g = *nl.gate(id);
    std::vector<char> in;
    for (const auto& a : g.args) in.push_back(lookup(values, nl, inputs, a));
    bool buf[3] = {};
    for (std::size_t i = 0; i < in.size(); ++i) buf[i] = in[i];
    values[id] = gate_kind_spec(g.kind).eval(std::span<const bool>(buf, in.size()));
  }
  return values;
}

}  // namespace

std::map<std::string, bool> eval_oracle(const Netlist& nl, const std::map<std::string, bool>& inputs) {
  const Values values = evaluate_gates(nl, inputs);
  std::map<std::string, bool> out;
  for (const auto& o : nl.primary_outputs) out[o.name] = lookup(values, nl, inputs, o.source);
  return out;
}

bool eval_signal(const Netlist& nl, const SignalRef& ref, const std::map<std::string, bool>& inputs) {
  return lookup(evaluate_gates(nl, inputs), nl, inputs, ref);
}

// ---------------------------------------------------------------------------
// Boolean expressions

struct BoolExpr::Node {
  enum class Op { Var, Const, Not, And, Xor, Or } op;
  std::string name;
  bool value = false;
  std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const BoolExpr::Node>;
using Op = BoolExpr::Node::Op;

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    NodePtr n = binary(0);
    skip();
    if (i_ != s_.size()) fail("operator or end of expression");
    return n;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::string found = i_ < s_.size() ? std::string("'") + s_[i_] + "'" : "end of expression";
    throw ParseError(1, static_cast<int>(i_) + 1, expected, found);
  }

  // Precedence levels: 0 = |, 1 = ^, 2 = &.
  NodePtr binary(int level) {
    if (level > 2) return unary();
    static const char kOps[] = {'|', '^', '&'};
    static const Op kKinds[] = {Op::Or, Op::Xor, Op::And};
    NodePtr lhs = binary(level + 1);
    for (;;) {
      skip();
      if (i_ < s_.size() && s_[i_] == kOps[level]) {
        ++i_;
        NodePtr rhs = binary(level + 1);
        lhs = std::make_shared<BoolExpr::Node>(BoolExpr::Node{kKinds[level], "", false, lhs, rhs});
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    skip();
    if (i_ < s_.size() && s_[i_] == '!') {
      ++i_;
      return std::make_shared<BoolExpr::Node>(BoolExpr::Node{Op::Not, "", false, unary(), nullptr});
    }
    return primary();
  }

  NodePtr primary() {
    skip();
    if (i_ >= s_.size()) fail("operand");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      NodePtr n = binary(0);
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("')'");
      ++i_;
      return n;
    }
    if (c == '0' || c == '1') {
      ++i_;
      return std::make_shared<BoolExpr::Node>(BoolExpr::Node{Op::Const, "", c == '1', nullptr, nullptr});
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) name += s_[i_++];
      return std::make_shared<BoolExpr::Node>(BoolExpr::Node{Op::Var, name, false, nullptr, nullptr});
    }
    fail("operand");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

bool eval_node(const BoolExpr::Node& n, const std::map<std::string, bool>& env) {
  switch (n.op) {
    case Op::Var: {
      auto it = env.find(n.name);
      if (it == env.end()) throw std::invalid_argument("expression references unknown input " + n.name);
      return it->second;
    }
    case Op::Const: return n.value;
    case Op::Not: return !eval_node(*n.lhs, env);
    case Op::And: return eval_node(*n.lhs, env) && eval_node(*n.rhs, env);
    case Op::Xor: return eval_node(*n.lhs, env) != eval_node(*n.rhs, env);
    case Op::Or: return eval_node(*n.lhs, env) || eval_node(*n.rhs, env);
  }
  return false;
}

void collect(const BoolExpr::Node& n, std::set<std::string>& out) {
  if (n.op == Op::Var) out.insert(n.name);
  if (n.lhs) collect(*n.lhs, out);
  if (n.rhs) collect(*n.rhs, out);
}

}  // namespace

BoolExpr BoolExpr::parse(const std::string& text) {
  BoolExpr e;
  e.root_ = ExprParser(text).parse();
  e.text_ = text;
  return e;
}

bool BoolExpr::eval(const std::map<std::string, bool>& env) const { return eval_node(*root_, env); }

std::vector<std::string> BoolExpr::variables() const {
  std::set<std::string> vars;
  collect(*root_, vars);
  return {vars.begin(), vars.end()};
}

}  // namespace rootgate
