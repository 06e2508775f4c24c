#include "rootgate/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <set>

#include "rootgate/tropism.hpp"

namespace rootgate {

std::map<std::string, Ticks> solve_padding(const std::vector<std::string>& vars,
                                           const std::vector<PadConstraint>& constraints) {
  std::map<std::string, Ticks> pad;
  for (const auto& v : vars) pad[v] = 0;
  for (const auto& c : constraints)
    if (!pad.count(c.earlier) || !pad.count(c.later))
      throw std::invalid_argument("padding constraint names an unknown variable");

  // Longest paths from an implicit source joined to every variable with weight 0.
  std::map<std::string, int> via;  // constraint that last raised each variable
  std::string last_raised;
  for (std::size_t round = 0; round <= vars.size(); ++round) {
    last_raised.clear();
    for (std::size_t i = 0; i < constraints.size(); ++i) {
      const auto& c = constraints[i];
      if (pad[c.earlier] + c.min_gap > pad[c.later]) {
        pad[c.later] = pad[c.earlier] + c.min_gap;
        via[c.later] = static_cast<int>(i);
        last_raised = c.later;
      }
    }
    if (last_raised.empty()) return pad;
  }

  std::string v = last_raised;
  for (std::size_t i = 0; i < vars.size(); ++i) v = constraints[via.at(v)].earlier;
  std::vector<int> cycle;
  std::string u = v;
  do {
    cycle.push_back(via.at(u));
    u = constraints[cycle.back()].earlier;
  } while (u != v);
  std::reverse(cycle.begin(), cycle.end());
  std::string msg = "arrival-order constraints cannot all hold:";
  for (int i : cycle) {
    const auto& c = constraints[i];
    msg += "\n  pad(" + c.later + ") - pad(" + c.earlier + ") >= " + std::to_string(c.min_gap);
    if (!c.reason.empty()) msg += "  [" + c.reason + "]";
  }
  throw CompileError(msg);
}

GateDesign design_for(GateKind kind) {
  switch (kind) {
    case GateKind::Grav2: return GateDesign::Gravity2x2;
    case GateKind::Grav3: return GateDesign::Gravity3x3;
    case GateKind::Attr: return GateDesign::Attraction;
    case GateKind::HalfAdd: return GateDesign::HalfAdder;
  }
  throw std::logic_error("unknown gate kind");
}

namespace {

using Interval = std::pair<Ticks, Ticks>;

constexpr double kLeafLead = 3.0;     // primary input port distance beyond the rim
constexpr double kClearance = 5.0;    // gap between a subtree and its return ring
constexpr double kArcStep = std::numbers::pi / 18;  // 10 degrees
constexpr double kMaxHalfWedge = 80.0 * std::numbers::pi / 180.0;

Point unit(double angle) { return {std::cos(angle), std::sin(angle)}; }
double angle_of(Point p) { return std::atan2(p.y, p.x); }

double angular_gap(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * std::numbers::pi);
  return std::min(d, 2 * std::numbers::pi - d);
}

double polyline_length(const std::vector<Point>& pts) {
  double len = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += norm(pts[i] - pts[i - 1]);
  return len;
}

struct PortInfo {
  ElementId port;
  ElementId channel;  // template channel leaving (input) or entering (output) the port
  ElementId junction; // its junction end
  Ticks length = 0;
  Point position;
  double angle = 0;
  std::size_t arg = 0;  // inputs: index into the gate's argument list
};

// Facts about one gate kind's template the compiler needs.
struct KindInfo {
  GateTemplate tmpl;
  std::vector<PortInfo> inputs;
  std::map<ElementId, PortInfo> outputs;
  std::map<std::pair<ElementId, ElementId>, Interval> transit;  // (input port, output port)
  struct Order {
    ElementId first, second, junction;
    Ticks first_path, second_path;
  };
  std::vector<Order> order;
};

void walk(const NetworkIndex& index, const ElementId& origin, const Channel& c, Ticks so_far,
          std::map<std::pair<ElementId, ElementId>, Interval>& out) {
  const Ticks t = so_far + c.length;
  if (const Junction* j = index.junction(c.to)) {
    auto it = j->routing.find(c.id);
    if (it == j->routing.end()) return;
    for (const auto& e : it->second) walk(index, origin, *index.channel(e.out), t, out);
    return;
  }
  auto key = std::make_pair(origin, c.to);
  auto found = out.find(key);
  if (found == out.end())
    out[key] = {t, t};
  else
    found->second = {std::min(found->second.first, t), std::max(found->second.second, t)};
}

KindInfo make_kind_info(GateKind kind, const GateParams& params) {
  KindInfo info;
  info.tmpl = gate_template(design_for(kind), params);
  const auto& net = info.tmpl.network;
  const NetworkIndex index(net);
  const auto& spec = gate_kind_spec(kind);

  for (const auto& [logical, ports] : net.bindings) {
    const auto arg = std::find(spec.inputs.begin(), spec.inputs.end(), logical) - spec.inputs.begin();
    for (const auto& pid : ports) {
      const Port* p = index.port(pid);
      const Channel* c = index.outgoing(pid).front();
      info.inputs.push_back({pid, c->id, c->to, c->length, p->position, angle_of(p->position),
                             static_cast<std::size_t>(arg)});
    }
  }
  std::sort(info.inputs.begin(), info.inputs.end(), [](const PortInfo& a, const PortInfo& b) { return a.port < b.port; });
  for (const auto& pid : net.output_ports()) {
    const Port* p = index.port(pid);
    const Channel* c = index.incoming(pid).front();
    info.outputs[pid] = {pid, c->id, c->from, c->length, p->position, angle_of(p->position), 0};
  }
  for (const auto& in : info.inputs) walk(index, in.port, *index.channel(in.channel), 0, info.transit);
  for (const auto& o : info.tmpl.order)
    info.order.push_back({o.first, o.second, o.junction, *path_length(net, o.first, o.junction),
                          *path_length(net, o.second, o.junction)});
  return info;
}

// One physical copy of a netlist gate.
struct Copy {
  const GateInstance* gate = nullptr;
  const KindInfo* kind = nullptr;
  std::string prefix;
  std::set<ElementId> used_outputs;  // template output ports that continue elsewhere
  std::map<ElementId, std::vector<std::string>> primary_names;  // root copies only

  struct Feed {
    std::string primary;  // set for primary inputs
    std::unique_ptr<Copy> child;
    ElementId child_output;
    double distance = 0;        // child centre from this centre
    std::vector<Point> route;   // local coordinates, child rim to this rim
    Ticks route_length = 0;
  };
  std::map<ElementId, Feed> feeds;  // by template input port

  double radius = 0;  // extent of the subtree around this centre
  std::map<ElementId, Ticks> pads;
  std::map<ElementId, Interval> out_times;

  std::string local(const ElementId& id) const { return prefix + "/" + id; }
};

class Compiler {
 public:
  Compiler(const Netlist& nl, const GateParams& params) : nl_(nl), params_(params) {}

  ChannelNetwork run() {
    check_netlist(nl_);
    if (nl_.gates.empty()) throw CompileError("netlist has no gates");
    if (nl_.primary_outputs.empty()) throw CompileError("netlist has no primary outputs");
    const bool gravity = gate_kind_spec(nl_.gates.front().kind).gravity;
    for (const auto& g : nl_.gates)
      if (gate_kind_spec(g.kind).gravity != gravity)
        throw CompileError("gate " + g.id + " mixes tropism regimes: gravity (GRAV2, GRAV3) and attraction (ATTR, "
                           "HALFADD) gates cannot share a circuit");
    net_.regime = gravity ? Regime::Gravity : Regime::Attraction;
    for (const auto& g : nl_.gates)
      if (!kinds_.count(g.kind)) kinds_.emplace(g.kind, make_kind_info(g.kind, params_));

    std::vector<std::unique_ptr<Copy>> roots;
    for (const auto& o : nl_.primary_outputs) {
      Copy* home = nullptr;
      for (auto& r : roots)
        if (r->gate->id == o.source.instance && !r->primary_names.count(o.source.port)) home = r.get();
      if (!home) {
        roots.push_back(expand(*nl_.gate(o.source.instance), {}));
        home = roots.back().get();
      }
      home->primary_names[o.source.port].push_back(o.name);
      home->used_outputs.insert(o.source.port);
    }

    double cursor = 0;
    for (auto& r : roots) {
      measure(*r);
      schedule(*r);
      const double half = r->radius + kClearance;
      emit(*r, {cursor + half, 0});
      cursor += 2 * half;
    }
    finish();
    return std::move(net_);
  }

 private:
  std::unique_ptr<Copy> expand(const GateInstance& g, const ElementId& used_output) {
    auto c = std::make_unique<Copy>();
    c->gate = &g;
    c->kind = &kinds_.at(g.kind);
    c->prefix = g.id + "#" + std::to_string(copies_[g.id]++);
    if (!used_output.empty()) c->used_outputs.insert(used_output);
    for (const auto& in : c->kind->inputs) {
      const SignalRef& src = g.args.at(in.arg);
      Copy::Feed f;
      if (src.is_primary()) {
        f.primary = src.port;
      } else {
        f.child = expand(*nl_.gate(src.instance), src.port);
        f.child_output = src.port;
      }
      c->feeds.emplace(in.port, std::move(f));
    }
    return c;
  }

  // Subtree sizes and the return route of every child, bottom-up.
  void measure(Copy& c) {
    std::vector<double> active;
    for (const auto& in : c.kind->inputs) active.push_back(in.angle);
    for (const auto& o : c.used_outputs) active.push_back(c.kind->outputs.at(o).angle);

    c.radius = kGateRadius;
    for (const auto& in : c.kind->inputs) {
      Copy::Feed& f = c.feeds.at(in.port);
      if (!f.child) {
        c.radius = std::max(c.radius, kGateRadius + kLeafLead);
        continue;
      }
      measure(*f.child);
      double half = kMaxHalfWedge;
      for (double a : active)
        if (a != in.angle) half = std::min(half, angular_gap(a, in.angle) / 2);
      const double ring = (f.child->radius + kClearance) / std::cos(kArcStep / 2);
      f.distance = std::max(ring / std::sin(half), ring + kGateRadius + kClearance);
      c.radius = std::max(c.radius, f.distance + ring);

      const Point centre = f.distance * unit(in.angle);
      const PortInfo& out = f.child->kind->outputs.at(f.child_output);
      const double from = out.angle;
      double sweep = std::remainder(in.angle + std::numbers::pi - from, 2 * std::numbers::pi);
      f.route = {centre + out.position, centre + ring * unit(from)};
      const int steps = static_cast<int>(std::ceil(std::abs(sweep) / kArcStep - 1e-9));
      for (int k = 1; k <= steps; ++k) f.route.push_back(centre + ring * unit(from + sweep * k / steps));
      f.route.push_back(in.position);
      f.route_length = static_cast<Ticks>(std::ceil(polyline_length(f.route) - 1e-9));
    }
  }

  // Arrival windows and input padding, bottom-up.
  void schedule(Copy& c) {
    std::map<ElementId, Interval> base;
    for (const auto& in : c.kind->inputs) {
      Copy::Feed& f = c.feeds.at(in.port);
      if (!f.child) {
        base[in.port] = {static_cast<Ticks>(kLeafLead), static_cast<Ticks>(kLeafLead)};
        continue;
      }
      schedule(*f.child);
      const Interval w = f.child->out_times.at(f.child_output);
      base[in.port] = {w.first + f.route_length, w.second + f.route_length};
    }

    std::vector<std::string> vars;
    for (const auto& in : c.kind->inputs) vars.push_back(in.port);
    std::vector<PadConstraint> cons;
    for (const auto& o : c.kind->order) {
      const Ticks gap = base[o.first].second + o.first_path + params_.margin - base[o.second].first - o.second_path;
      cons.push_back({o.first, o.second, gap,
                      c.prefix + ": " + o.first + " must pass " + o.junction + " before " + o.second + " arrives"});
    }
    c.pads = solve_padding(vars, cons);

    for (const auto& [key, t] : c.kind->transit) {
      const auto& [in, out] = key;
      const Ticks pad = c.pads.at(in);
      const Interval w{base[in].first + pad + t.first, base[in].second + pad + t.second};
      auto it = c.out_times.find(out);
      if (it == c.out_times.end())
        c.out_times[out] = w;
      else
        it->second = {std::min(it->second.first, w.first), std::max(it->second.second, w.second)};
    }
  }

  void emit(Copy& c, Point centre) {
    const auto& tmpl = c.kind->tmpl.network;
    auto& names = rename_[c.prefix];
    for (const auto& j : tmpl.junctions) {
      names[j.id] = c.local(j.id);
      net_.junctions.push_back({c.local(j.id), centre + j.position, {}});
    }
    for (const auto& ch : tmpl.channels) names.emplace(ch.id, c.local(ch.id));

    std::set<ElementId> edge_channels;
    for (const auto& in : c.kind->inputs) edge_channels.insert(in.channel);
    for (const auto& [id, o] : c.kind->outputs) edge_channels.insert(o.channel);
    for (const auto& ch : tmpl.channels) {
      if (edge_channels.count(ch.id)) continue;
      Channel copy{c.local(ch.id), c.local(ch.from), c.local(ch.to), ch.length, {}};
      for (const auto& p : ch.via) copy.via.push_back(centre + p);
      net_.channels.push_back(std::move(copy));
    }

    for (const auto& in : c.kind->inputs) {
      Copy::Feed& f = c.feeds.at(in.port);
      const Ticks pad = c.pads.at(in.port);
      Channel ch{c.local(in.channel), "", c.local(in.junction), 0, {}};
      if (!f.child) {
        const ElementId port = f.primary + "#" + std::to_string(leaf_count_[f.primary]++);
        net_.ports.push_back({port, centre + (kGateRadius + kLeafLead) / kGateRadius * in.position, PortRole::Input});
        net_.bindings[f.primary].insert(port);
        ch.from = port;
        ch.length = static_cast<Ticks>(kLeafLead) + pad + in.length;
        ch.via = {centre + in.position};
      } else {
        const Point child_centre = centre + f.distance * unit(in.angle);
        emit(*f.child, child_centre);
        const PortInfo& out = f.child->kind->outputs.at(f.child_output);
        rename_[f.child->prefix][out.channel] = ch.id;
        ch.from = f.child->local(out.junction);
        ch.length = out.length + f.route_length + pad + in.length;
        for (const auto& p : f.route) {
          const Point q = centre + p;
          if (ch.via.empty() || norm(q - ch.via.back()) > 1e-9) ch.via.push_back(q);
        }
      }
      net_.channels.push_back(std::move(ch));
    }

    for (const auto& [pid, o] : c.kind->outputs) {
      auto named = c.primary_names.find(pid);
      if (c.used_outputs.count(pid) && named == c.primary_names.end()) continue;  // parent draws it
      const ElementId port = named != c.primary_names.end() ? named->second.front() : c.local(pid);
      const PortRole role = named != c.primary_names.end() ? PortRole::Output : PortRole::Sink;
      net_.ports.push_back({port, centre + o.position, role});
      if (net_.regime == Regime::Attraction) net_.attractants.insert(port);
      net_.channels.push_back({c.local(o.channel), c.local(o.junction), port, o.length, {}});
    }
    copies_out_.push_back(&c);
  }

  void finish() {
    const std::vector<Junction> expected = expected_routing();
    net_ = apply_routing(std::move(net_));
    for (const auto& want : expected) {
      const auto it = std::find_if(net_.junctions.begin(), net_.junctions.end(),
                                   [&](const Junction& j) { return j.id == want.id; });
      if (it == net_.junctions.end() || it->routing != want.routing)
        throw std::logic_error("compiled routing at " + want.id + " differs from its gate template");
    }

    const auto crossings = find_channel_crossings(net_);
    if (net_.regime == Regime::Attraction && !crossings.empty()) {
      std::string msg = "attraction circuit needs crossing channels:";
      for (const auto& b : crossings) msg += " " + b.first + "/" + b.second;
      throw CompileError(msg);
    }
    net_.bridges = crossings;

    const auto problems = validate_network(net_);
    if (!problems.empty())
      throw std::logic_error("compiled network is invalid: " + problems.front().element + ": " +
                             problems.front().message);
  }

  std::vector<Junction> expected_routing() const {
    std::vector<Junction> out;
    for (const Copy* c : copies_out_) {
      const auto& names = rename_.at(c->prefix);
      for (const auto& j : c->kind->tmpl.network.junctions) {
        Junction g{names.at(j.id), {}, {}};
        for (const auto& [in, entries] : j.routing) {
          auto& list = g.routing[names.at(in)];
          for (const auto& e : entries) {
            RouteEntry r{names.at(e.out), {}};
            for (const auto& b : e.blocked_by) r.blocked_by.insert(names.at(b));
            list.push_back(std::move(r));
          }
        }
        out.push_back(std::move(g));
      }
    }
    return out;
  }

  const Netlist& nl_;
  GateParams params_;
  std::map<GateKind, KindInfo> kinds_;
  std::map<std::string, int> copies_;
  std::map<std::string, int> leaf_count_;
  std::map<std::string, std::map<ElementId, ElementId>> rename_;  // copy prefix -> template id -> global id
  std::vector<const Copy*> copies_out_;
  ChannelNetwork net_;
};

}  // namespace

ChannelNetwork compile(const Netlist& nl, const GateParams& params) {
  check_params(params);
  return Compiler(nl, params).run();
}

}  // namespace rootgate
