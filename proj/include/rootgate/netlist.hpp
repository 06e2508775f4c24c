#pragma once

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rootgate {

enum class GateKind { Grav2, Grav3, Attr, HalfAdd };

/// Port names and Boolean behaviour of one gate kind.
struct GateKindSpec {
  GateKind kind;
  const char* name;  // DSL spelling
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  bool gravity;  // tropism family
  /// Output values for the given input values (same order as `inputs`).
  std::vector<bool> (*eval)(std::span<const bool>);
};

const GateKindSpec& gate_kind_spec(GateKind kind);
const GateKindSpec* gate_kind_by_name(const std::string& name);

/// A primary input (instance empty) or a gate output `instance.port`.
struct SignalRef {
  std::string instance;
  std::string port;

  bool is_primary() const { return instance.empty(); }
  std::string str() const { return instance.empty() ? port : instance + "." + port; }

  friend bool operator==(const SignalRef&, const SignalRef&) = default;
  friend auto operator<=>(const SignalRef&, const SignalRef&) = default;
};

struct GateInstance {
  std::string id;
  GateKind kind;
  std::vector<SignalRef> args;  // one per kind input, in order

  friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

struct PrimaryOutput {
  std::string name;
  SignalRef source;

  friend bool operator==(const PrimaryOutput&, const PrimaryOutput&) = default;
};

struct Wire {
  SignalRef from;  // gate output
  std::string to_instance;
  std::string to_port;

  friend bool operator==(const Wire&, const Wire&) = default;
};

struct Netlist {
  std::vector<std::string> primary_inputs;
  std::vector<PrimaryOutput> primary_outputs;
  std::vector<GateInstance> gates;

  const GateInstance* gate(const std::string& id) const;
  /// Gate-to-gate connections, in gate declaration order.
  std::vector<Wire> wires() const;
  /// Gate ids ordered so every gate follows its drivers.
  std::vector<std::string> topological_order() const;

  friend bool operator==(const Netlist&, const Netlist&) = default;
};

/// Syntax error with 1-based position and what the parser wanted.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string expected, std::string found);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

 private:
  int line_;
  int column_;
  std::string expected_;
};

/// Structurally invalid netlist: unknown kind, dangling wire, cycle, arity, duplicates.
class NetlistError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Grammar:
///   circuit := {stmt}
///   stmt    := "in" idlist ";" | "out" outitem {"," outitem} ";" | id "=" KIND "(" arglist ")" ";"
///   outitem := id "=" id "." id
///   arg     := id | id "." id
/// Identifiers are [a-z][a-z0-9_]*; "#" starts a comment running to end of line.
Netlist parse_netlist(const std::string& text);

/// Canonical text that parse_netlist accepts.
std::string print_netlist(const Netlist& nl);

/// Throws NetlistError if the netlist breaks a structural rule.
void check_netlist(const Netlist& nl);

/// Pure Boolean evaluation, gates in topological order.
std::map<std::string, bool> eval_oracle(const Netlist& nl, const std::map<std::string, bool>& inputs);

/// Value of one signal under an input assignment.
bool eval_signal(const Netlist& nl, const SignalRef& ref, const std::map<std::string, bool>& inputs);

/// Boolean expression over named variables: ! & ^ | (tightest first), parentheses, 0, 1.
class BoolExpr {
 public:
  static BoolExpr parse(const std::string& text);

  /// Throws std::invalid_argument on a variable missing from `env`.
  bool eval(const std::map<std::string, bool>& env) const;
  std::vector<std::string> variables() const;
  const std::string& text() const { return text_; }

  struct Node;

 private:
  std::shared_ptr<const Node> root_;
  std::string text_;
};

}  // namespace rootgate
