#include "rootgate/growth_sim.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace rootgate {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Initiated: return "Initiated";
    case EventKind::ArrivedAtJunction: return "ArrivedAtJunction";
    case EventKind::EnteredChannel: return "EnteredChannel";
    case EventKind::Deflected: return "Deflected";
    case EventKind::Blocked: return "Blocked";
    case EventKind::Exited: return "Exited";
  }
  return "?";
}

namespace {

std::string join_ids(const std::vector<int>& ids) {
  std::string s;
  for (int id : ids) s += (s.empty() ? "" : ",") + std::to_string(id);
  return s;
}

}  // namespace

TieError::TieError(ElementId junction, Ticks time, std::vector<int> roots)
    : SimulationError("tie at junction " + junction + " at t=" + std::to_string(time) + " between roots " +
                      join_ids(roots)),
      junction_(std::move(junction)),
      time_(time),
      roots_(std::move(roots)) {}

bool EngineState::finished() const {
  return pending.empty() &&
         std::none_of(roots.begin(), roots.end(), [](const RootApex& r) { return r.status == RootStatus::Growing; });
}

EngineState initial_state(const ChannelNetwork& net, const InputAssignment& inputs, const DelayMap& delays) {
  std::vector<std::pair<ElementId, std::string>> starts;
  for (const auto& [name, ports] : net.bindings) {
    auto it = inputs.find(name);
    if (it == inputs.end() || !it->second) continue;
    for (const auto& p : ports) starts.emplace_back(p, name);
  }
  std::sort(starts.begin(), starts.end());
  EngineState state;
  int next_id = 0;
  for (const auto& [port, name] : starts) {
    auto d = delays.find(name);
    state.pending.push_back({d == delays.end() ? 0 : d->second, next_id++, port, name});
  }
  return state;
}

namespace {

struct Choice {
  std::size_t index;
  const RouteEntry* entry;
};

class Stepper {
 public:
  Stepper(const NetworkIndex& index, EngineState& state, const TiePolicy& tie)
      : index_(index), state_(state), tie_(tie) {}

  std::vector<TraceEvent> run() {
    if (state_.finished()) return {};
    const Ticks now = next_time();
    state_.time = now;
    for (auto& r : state_.roots)
      if (r.status == RootStatus::Growing) r.grown = std::min(length(r), now - r.entered_at);

    std::vector<int> due;
    for (const auto& r : state_.roots)
      if (r.status == RootStatus::Growing && r.entered_at + length(r) == now) due.push_back(r.id);
    std::sort(due.begin(), due.end());

    // Fixed before any decision: a root committed this tick must not join a
    // group further downstream.
    std::map<int, ElementId> arriving;
    for (int id : due) arriving[id] = index_.channel(root(id).channel)->to;

    std::set<ElementId> handled;
    for (int id : due) {
      RootApex& r = root(id);
      const ElementId at = arriving.at(id);
      if (index_.port(at)) {
        r.status = RootStatus::Exited;
        r.exit_port = at;
        r.trajectory.push_back(at);
        emit(EventKind::Exited, id, at);
      } else if (handled.insert(at).second) {
        std::vector<int> group;
        for (int other : due)
          if (arriving.at(other) == at) group.push_back(other);
        decide(at, group);
      }
    }

    std::vector<PendingStart> starting;
    std::vector<PendingStart> later;
    for (const auto& p : state_.pending) (p.time == now ? starting : later).push_back(p);
    std::sort(starting.begin(), starting.end(), [](const auto& a, const auto& b) { return a.root < b.root; });
    state_.pending = std::move(later);
    for (const auto& p : starting) initiate(p);
    return std::move(events_);
  }

 private:
  Ticks length(const RootApex& r) const { return index_.channel(r.channel)->length; }

  RootApex& root(int id) {
    for (auto& r : state_.roots)
      if (r.id == id) return r;
    throw SimulationError("unknown root " + std::to_string(id));
  }

  Ticks next_time() const {
    Ticks t = std::numeric_limits<Ticks>::max();
    for (const auto& p : state_.pending) t = std::min(t, p.time);
    for (const auto& r : state_.roots)
      if (r.status == RootStatus::Growing) t = std::min(t, r.entered_at + length(r));
    return t;
  }

  void emit(EventKind kind, int root, const ElementId& element) {
    events_.push_back({state_.time, kind, root, element});
  }

  void occupy(const ElementId& id, int owner, bool is_junction) {
    if (!state_.occupancy.owner.emplace(id, owner).second) return;
    (is_junction ? state_.occupancy.occupied_junctions : state_.occupancy.occupied_channels).insert(id);
  }

  void initiate(const PendingStart& p) {
    const auto& outs = index_.outgoing(p.port);
    if (outs.size() != 1) throw SimulationError("input port " + p.port + " has no single outgoing channel");
    const Channel* c = outs.front();
    if (state_.occupancy.occupied(c->id))
      throw SimulationError("root " + std::to_string(p.root) + " initiated into occupied channel " + c->id);
    RootApex r;
    r.id = p.root;
    r.source_port = p.port;
    r.input = p.input;
    r.trajectory = {p.port, c->id};
    r.channel = c->id;
    r.entered_at = state_.time;
    occupy(c->id, r.id, false);
    auto pos = std::lower_bound(state_.roots.begin(), state_.roots.end(), r.id,
                                [](const RootApex& a, int id) { return a.id < id; });
    state_.roots.insert(pos, std::move(r));
    emit(EventKind::Initiated, p.root, p.port);
    emit(EventKind::EnteredChannel, p.root, c->id);
  }

  const std::vector<RouteEntry>& preferences(const ElementId& junction, const ElementId& in) const {
    static const std::vector<RouteEntry> kNone;
    const auto& routing = index_.junction(junction)->routing;
    auto it = routing.find(in);
    return it == routing.end() ? kNone : it->second;
  }

  std::optional<Choice> choose(const ElementId& junction, const RootApex& r, const std::set<ElementId>& banned) const {
    const auto& prefs = preferences(junction, r.channel);
    for (std::size_t i = 0; i < prefs.size(); ++i) {
      const auto& e = prefs[i];
      if (banned.count(e.out)) continue;
      const bool blocked = std::any_of(e.blocked_by.begin(), e.blocked_by.end(),
                                       [&](const ElementId& b) { return state_.occupancy.occupied(b); });
      if (!blocked) return Choice{i, &e};
    }
    return std::nullopt;
  }

  bool conflict(const ElementId& junction, const Choice& a, const Choice& b) const {
    if (a.entry->out == b.entry->out) return true;
    auto hits = [&](const Choice& x, const Choice& y) {
      return y.entry->blocked_by.count(x.entry->out) ||
             (!state_.occupancy.occupied(junction) && y.entry->blocked_by.count(junction));
    };
    return hits(a, b) || hits(b, a);
  }

  void commit(const ElementId& junction, RootApex& r, const std::optional<Choice>& choice) {
    if (!choice) {
      r.status = RootStatus::Blocked;
      emit(EventKind::Blocked, r.id, junction);
      return;
    }
    const ElementId& out = choice->entry->out;
    occupy(junction, r.id, true);
    occupy(out, r.id, false);
    r.trajectory.push_back(junction);
    r.trajectory.push_back(out);
    r.channel = out;
    r.entered_at = state_.time;
    r.grown = 0;
    if (choice->index > 0) emit(EventKind::Deflected, r.id, out);
    emit(EventKind::EnteredChannel, r.id, out);
  }

  void decide(const ElementId& junction, const std::vector<int>& group) {
    for (int id : group) emit(EventKind::ArrivedAtJunction, id, junction);

    std::set<ElementId> banned;
    auto choices_for = [&] {
      std::vector<std::optional<Choice>> cs;
      for (int id : group) cs.push_back(choose(junction, root(id), banned));
      return cs;
    };
    auto conflicting_pairs = [&](const std::vector<std::optional<Choice>>& cs) {
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t k = i + 1; k < cs.size(); ++k)
          if (cs[i] && cs[k] && conflict(junction, *cs[i], *cs[k])) pairs.emplace_back(i, k);
      return pairs;
    };

    auto choices = choices_for();
    auto pairs = conflicting_pairs(choices);
    if (!pairs.empty()) {
      switch (tie_.kind) {
        case TiePolicy::Kind::Error:
          throw TieError(junction, state_.time, group);
        case TiePolicy::Kind::PriorityByInput: {
          std::vector<int> order = group;
          auto rank = [&](int id) {
            const auto& input = root(id).input;
            auto it = std::find(tie_.priority.begin(), tie_.priority.end(), input);
            return it - tie_.priority.begin();
          };
          std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return rank(a) < rank(b); });
          for (int id : order) {
            auto c = choose(junction, root(id), banned);
            commit(junction, root(id), c);
          }
          return;
        }
        case TiePolicy::Kind::BothDeflect:
          while (!pairs.empty()) {
            for (auto [i, k] : pairs) {
              banned.insert(choices[i]->entry->out);
              banned.insert(choices[k]->entry->out);
            }
            choices = choices_for();
            pairs = conflicting_pairs(choices);
          }
          break;
      }
    }
    for (std::size_t i = 0; i < group.size(); ++i) commit(junction, root(group[i]), choices[i]);
  }

  const NetworkIndex& index_;
  EngineState& state_;
  const TiePolicy& tie_;
  std::vector<TraceEvent> events_;
};

void check_inputs(const ChannelNetwork& net, const InputAssignment& inputs, const TiePolicy& tie,
                  const DelayMap& delays) {
  const auto names = net.logical_inputs();
  std::vector<std::string> given;
  for (const auto& [name, v] : inputs) given.push_back(name);
  if (given != names) throw SimulationError("input assignment does not match the network's logical inputs");
  for (const auto& [name, d] : delays) {
    if (!inputs.count(name)) throw SimulationError("delay given for unknown input " + name);
    if (d < 0) throw SimulationError("negative delay for input " + name);
  }
  if (tie.kind == TiePolicy::Kind::PriorityByInput) {
    auto sorted = tie.priority;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != names) throw SimulationError("priority order must list every logical input exactly once");
  }
}

Ticks total_length(const ChannelNetwork& net) {
  return std::accumulate(net.channels.begin(), net.channels.end(), Ticks{0},
                         [](Ticks acc, const Channel& c) { return acc + c.length; });
}

}  // namespace

std::vector<TraceEvent> step(const NetworkIndex& index, EngineState& state, const TiePolicy& tie) {
  return Stepper(index, state, tie).run();
}

SimOutcome simulate(const ChannelNetwork& net, const InputAssignment& inputs, const TiePolicy& tie,
                    const DelayMap& delays) {
  if (auto v = validate_network(net); !v.empty())
    throw SimulationError("invalid network: " + v.front().element + ": " + v.front().message);
  check_inputs(net, inputs, tie, delays);

  const NetworkIndex index(net);
  EngineState state = initial_state(net, inputs, delays);
  Ticks max_delay = 0;
  for (const auto& [name, d] : delays) max_delay = std::max(max_delay, d);
  const Ticks bound = total_length(net) + max_delay;

  SimOutcome outcome;
  while (!state.finished()) {
    auto events = step(index, state, tie);
    if (state.time > bound) throw SimulationError("simulation exceeded its termination bound");
    outcome.trace.insert(outcome.trace.end(), events.begin(), events.end());
  }
  for (const auto& id : net.output_ports()) outcome.outputs[id] = false;
  for (const auto& r : state.roots)
    if (r.status == RootStatus::Exited && outcome.outputs.count(r.exit_port)) outcome.outputs[r.exit_port] = true;
  outcome.roots = std::move(state.roots);
  return outcome;
}

std::vector<OutputMap> apply_delay_insensitivity_probe(const ChannelNetwork& net, const InputAssignment& inputs,
                                                       const TiePolicy& tie, const std::string& input,
                                                       const std::vector<Ticks>& delays) {
  std::vector<OutputMap> results;
  for (Ticks d : delays) results.push_back(simulate(net, inputs, tie, {{input, d}}).outputs);
  return results;
}

std::vector<std::string> audit_outcome(const ChannelNetwork& net, const SimOutcome& outcome, Ticks max_delay) {
  std::vector<std::string> problems;
  const NetworkIndex index(net);

  for (std::size_t i = 1; i < outcome.trace.size(); ++i)
    if (outcome.trace[i].time < outcome.trace[i - 1].time) problems.push_back("trace times decrease");

  std::map<int, std::vector<const TraceEvent*>> per_root;
  for (const auto& e : outcome.trace) per_root[e.root].push_back(&e);

  std::size_t initiated = 0;
  std::size_t terminated = 0;
  std::map<ElementId, std::set<int>> channel_users;
  std::map<ElementId, std::set<int>> junction_claims;
  for (const auto& [id, events] : per_root) {
    const std::string who = "root " + std::to_string(id);
    if (events.front()->kind != EventKind::Initiated) problems.push_back(who + " does not start with Initiated");
    std::vector<ElementId> entered;
    int terminals = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
      const auto& e = *events[i];
      if (e.kind == EventKind::Initiated) ++initiated;
      if (e.kind == EventKind::EnteredChannel) {
        entered.push_back(e.element);
        channel_users[e.element].insert(id);
      }
      if (e.kind == EventKind::Blocked || e.kind == EventKind::Exited) {
        ++terminals;
        if (i + 1 != events.size()) problems.push_back(who + " has events after its terminal event");
      }
    }
    if (terminals > 1) problems.push_back(who + " has more than one terminal event");
    terminated += terminals;

    auto it = std::find_if(outcome.roots.begin(), outcome.roots.end(), [&](const RootApex& r) { return r.id == id; });
    if (it == outcome.roots.end()) {
      problems.push_back(who + " vanished from the final root list");
      continue;
    }
    // Trajectory preservation: every channel ever entered is still part of the body, in order.
    std::vector<ElementId> body;
    for (const auto& el : it->trajectory)
      if (index.channel(el)) body.push_back(el);
    if (body != entered) problems.push_back(who + " trajectory disagrees with its trace");
    for (const auto& el : it->trajectory)
      if (index.junction(el)) junction_claims[el].insert(id);
  }

  for (const auto& [ch, users] : channel_users)
    if (users.size() > Channel::kCapacity) problems.push_back("channel " + ch + " holds more than one root");
  for (const auto& r : outcome.roots) {
    if (r.status == RootStatus::Growing) problems.push_back("root " + std::to_string(r.id) + " still growing");
  }
  if (initiated != outcome.roots.size() || terminated != outcome.roots.size())
    problems.push_back("root conservation violated: initiated " + std::to_string(initiated) + ", terminated " +
                       std::to_string(terminated) + ", listed " + std::to_string(outcome.roots.size()));

  if (!outcome.trace.empty() && outcome.trace.back().time > total_length(net) + max_delay)
    problems.push_back("run exceeded the termination bound");
  return problems;
}

std::string trace_to_jsonl(const std::vector<TraceEvent>& trace) {
  std::string out;
  for (const auto& e : trace) {
    nlohmann::ordered_json line;
    line["time"] = e.time;
    line["kind"] = to_string(e.kind);
    line["root"] = e.root;
    line["element"] = e.element;
    out += line.dump() + "\n";
  }
  return out;
}

namespace {

using nlohmann::json;

const char* status_name(RootStatus s) {
  switch (s) {
    case RootStatus::Growing: return "growing";
    case RootStatus::Blocked: return "blocked";
    case RootStatus::Exited: return "exited";
  }
  return "growing";
}

RootStatus status_from(const std::string& s) {
  if (s == "growing") return RootStatus::Growing;
  if (s == "blocked") return RootStatus::Blocked;
  if (s == "exited") return RootStatus::Exited;
  throw SimulationError("unknown root status '" + s + "'");
}

}  // namespace

std::string engine_state_to_json(const EngineState& state) {
  json doc;
  doc["time"] = state.time;
  json roots = json::array();
  for (const auto& r : state.roots)
    roots.push_back({{"id", r.id},
                     {"source_port", r.source_port},
                     {"input", r.input},
                     {"trajectory", r.trajectory},
                     {"channel", r.channel},
                     {"grown", r.grown},
                     {"entered_at", r.entered_at},
                     {"status", status_name(r.status)},
                     {"exit_port", r.exit_port}});
  doc["roots"] = roots;
  json pending = json::array();
  for (const auto& p : state.pending)
    pending.push_back({{"time", p.time}, {"root", p.root}, {"port", p.port}, {"input", p.input}});
  doc["pending"] = pending;
  doc["owner"] = state.occupancy.owner;
  doc["occupied_channels"] = state.occupancy.occupied_channels;
  doc["occupied_junctions"] = state.occupancy.occupied_junctions;
  return doc.dump();
}

EngineState engine_state_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    EngineState s;
    s.time = doc.at("time").get<Ticks>();
    for (const auto& r : doc.at("roots")) {
      RootApex a;
      a.id = r.at("id").get<int>();
      a.source_port = r.at("source_port").get<std::string>();
      a.input = r.at("input").get<std::string>();
      a.trajectory = r.at("trajectory").get<std::vector<ElementId>>();
      a.channel = r.at("channel").get<std::string>();
      a.grown = r.at("grown").get<Ticks>();
      a.entered_at = r.at("entered_at").get<Ticks>();
      a.status = status_from(r.at("status").get<std::string>());
      a.exit_port = r.at("exit_port").get<std::string>();
      s.roots.push_back(std::move(a));
    }
    for (const auto& p : doc.at("pending"))
      s.pending.push_back({p.at("time").get<Ticks>(), p.at("root").get<int>(), p.at("port").get<std::string>(),
                           p.at("input").get<std::string>()});
    s.occupancy.owner = doc.at("owner").get<std::map<ElementId, int>>();
    s.occupancy.occupied_channels = doc.at("occupied_channels").get<std::set<ElementId>>();
    s.occupancy.occupied_junctions = doc.at("occupied_junctions").get<std::set<ElementId>>();
    return s;
  } catch (const json::exception& e) {
    throw SimulationError(std::string("engine state JSON: ") + e.what());
  }
}

}  // namespace rootgate
