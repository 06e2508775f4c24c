#pragma once

// Independent reference machinery for the tests. Nothing here calls the
// library's own evaluators; truth tables are written out by hand.

#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "rootgate/growth_sim.hpp"
#include "rootgate/netlist.hpp"

namespace testing_support {

using Assignment = std::map<std::string, bool>;
using Formula = std::function<std::map<std::string, bool>(const Assignment&)>;

// Every assignment of `names`, first name most significant, ascending.
inline std::vector<Assignment> all_assignments(const std::vector<std::string>& names) {
  std::vector<Assignment> out;
  const std::size_t n = names.size();
  for (std::size_t m = 0; m < (std::size_t{1} << n); ++m) {
    Assignment a;
    for (std::size_t i = 0; i < n; ++i) a[names[i]] = (m >> (n - 1 - i)) & 1U;
    out.push_back(a);
  }
  return out;
}

// Hand-written gate functions, kept apart from the library's kind table.
inline std::map<std::string, bool> grav2(const Assignment& a) {
  const bool x = a.at("x"), y = a.at("y");
  return {{"p", x && y}, {"q", x || y}};
}
inline std::map<std::string, bool> grav3(const Assignment& a) {
  const bool x = a.at("x"), y = a.at("y"), z = a.at("z");
  return {{"p", x || y || z}, {"q", x && y}, {"r", z && (x || y)}};
}
inline std::map<std::string, bool> attr(const Assignment& a) {
  const bool x = a.at("x"), y = a.at("y");
  return {{"p", !x && y}, {"q", x}};
}
inline std::map<std::string, bool> half_adder(const Assignment& a) {
  const bool x = a.at("x"), y = a.at("y");
  return {{"p", x != y}, {"q", x || y}, {"r", x && y}};
}

// Independent netlist evaluator: memoised recursion over signal references
// with its own copy of the gate functions.
class ReferenceEvaluator {
 public:
  ReferenceEvaluator(const rootgate::Netlist& nl, const Assignment& inputs) : nl_(nl), inputs_(inputs) {}

  bool value(const rootgate::SignalRef& ref) {
    if (ref.is_primary()) return inputs_.at(ref.port);
    const auto key = ref.str();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const rootgate::GateInstance* g = nullptr;
    for (const auto& cand : nl_.gates)
      if (cand.id == ref.instance) g = &cand;
    Assignment local;
    const char* names[] = {"x", "y", "z"};
    for (std::size_t i = 0; i < g->args.size(); ++i) local[names[i]] = value(g->args[i]);
    std::map<std::string, bool> outs;
    switch (g->kind) {
      case rootgate::GateKind::Grav2: outs = grav2(local); break;
      case rootgate::GateKind::Grav3: outs = grav3(local); break;
      case rootgate::GateKind::Attr: outs = attr(local); break;
      case rootgate::GateKind::HalfAdd: outs = half_adder(local); break;
    }
    for (const auto& [port, v] : outs) memo_[ref.instance + "." + port] = v;
    return memo_.at(key);
  }

  std::map<std::string, bool> outputs() {
    std::map<std::string, bool> out;
    for (const auto& o : nl_.primary_outputs) out[o.name] = value(o.source);
    return out;
  }

 private:
  const rootgate::Netlist& nl_;
  Assignment inputs_;
  std::map<std::string, bool> memo_;
};

// Random acyclic single-regime netlist: up to `max_gates` gates over up to
// `max_inputs` primary inputs; every gate reads earlier gates or inputs.
inline rootgate::Netlist random_netlist(std::mt19937& rng, int max_gates, int max_inputs, bool gravity) {
  using namespace rootgate;
  std::uniform_int_distribution<int> n_inputs(1, max_inputs);
  std::uniform_int_distribution<int> n_gates(1, max_gates);
  Netlist nl;
  const int ni = n_inputs(rng);
  for (int i = 0; i < ni; ++i) nl.primary_inputs.push_back("i" + std::to_string(i));
  const std::vector<GateKind> kinds =
      gravity ? std::vector<GateKind>{GateKind::Grav2, GateKind::Grav3}
              : std::vector<GateKind>{GateKind::Attr, GateKind::HalfAdd};
  std::vector<SignalRef> signals;
  for (const auto& in : nl.primary_inputs) signals.push_back({"", in});
  const int ng = n_gates(rng);
  for (int g = 0; g < ng; ++g) {
    GateInstance gate;
    gate.id = "g" + std::to_string(g);
    gate.kind = kinds[std::uniform_int_distribution<std::size_t>(0, kinds.size() - 1)(rng)];
    const auto& spec = gate_kind_spec(gate.kind);
    for (std::size_t k = 0; k < spec.inputs.size(); ++k)
      gate.args.push_back(signals[std::uniform_int_distribution<std::size_t>(0, signals.size() - 1)(rng)]);
    for (const auto& o : spec.outputs) signals.push_back({gate.id, o});
    nl.gates.push_back(std::move(gate));
  }
  // The last gate always drives an output; others do so at random.
  int out_count = 0;
  for (std::size_t g = 0; g < nl.gates.size(); ++g) {
    const auto& spec = gate_kind_spec(nl.gates[g].kind);
    for (const auto& o : spec.outputs) {
      const bool last = g + 1 == nl.gates.size();
      if (last || std::bernoulli_distribution(0.25)(rng))
        nl.primary_outputs.push_back({"o" + std::to_string(out_count++), {nl.gates[g].id, o}});
    }
  }
  return nl;
}

// Drives the engine one step at a time and checks, after every step, that
// occupancy only grew and no element has two owners.
struct ReplayResult {
  std::vector<rootgate::TraceEvent> trace;
  std::vector<std::string> problems;
};

inline ReplayResult replay(const rootgate::ChannelNetwork& net, const rootgate::InputAssignment& inputs,
                           const rootgate::TiePolicy& tie, const rootgate::DelayMap& delays = {}) {
  using namespace rootgate;
  ReplayResult out;
  const NetworkIndex index(net);
  EngineState state = initial_state(net, inputs, delays);
  std::map<ElementId, int> seen;
  Ticks last_time = -1;
  for (int guard = 0; !state.finished(); ++guard) {
    if (guard > 1000000) {
      out.problems.push_back("no termination");
      break;
    }
    auto events = step(index, state, tie);
    out.trace.insert(out.trace.end(), events.begin(), events.end());
    if (state.time < last_time) out.problems.push_back("time went backwards");
    last_time = state.time;
    for (const auto& [el, owner] : seen) {
      auto it = state.occupancy.owner.find(el);
      if (it == state.occupancy.owner.end()) out.problems.push_back(el + " was vacated");
      else if (it->second != owner) out.problems.push_back(el + " changed owner");
    }
    seen = state.occupancy.owner;
    std::map<ElementId, std::set<int>> bodies;
    for (const auto& r : state.roots)
      for (const auto& el : r.trajectory)
        if (index.channel(el)) bodies[el].insert(r.id);
    for (const auto& [ch, ids] : bodies)
      if (ids.size() > 1) out.problems.push_back(ch + " holds " + std::to_string(ids.size()) + " roots");
  }
  return out;
}

}  // namespace testing_support
