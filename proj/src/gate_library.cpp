#include "rootgate/gate_library.hpp"

#include <numbers>
#include <stdexcept>

#include "rootgate/tropism.hpp"

namespace rootgate {

void check_params(const GateParams& params) {
  if (params.margin < 1) throw std::invalid_argument("margin must be >= 1");
  if (params.scale < 1) throw std::invalid_argument("scale must be >= 1");
}

const char* design_name(GateDesign design) {
  switch (design) {
    case GateDesign::Basic: return "basic";
    case GateDesign::Gravity2x2: return "grav2";
    case GateDesign::Gravity3x3: return "grav3";
    case GateDesign::Attraction: return "attr";
    case GateDesign::HalfAdder: return "half-adder";
  }
  return "?";
}

std::optional<GateDesign> design_from_name(const std::string& name) {
  for (auto d : all_designs())
    if (name == design_name(d)) return d;
  return std::nullopt;
}

std::vector<GateDesign> all_designs() {
  return {GateDesign::Basic, GateDesign::Gravity2x2, GateDesign::Gravity3x3, GateDesign::Attraction,
          GateDesign::HalfAdder};
}

namespace {

double deg(double d) { return d * std::numbers::pi / 180.0; }

// Where the ray from `origin` along `dir` leaves the gate disk.
Point rim_along(Point origin, Point dir) {
  const Point d = normalized(dir);
  const double b = dot(origin, d);
  const double c = dot(origin, origin) - kGateRadius * kGateRadius;
  return origin + (-b + std::sqrt(b * b - c)) * d;
}

class Sketch {
 public:
  explicit Sketch(Regime regime) { net_.regime = regime; }

  Sketch& junction(ElementId id, Point at) {
    net_.junctions.push_back({std::move(id), at, {}});
    return *this;
  }
  Sketch& input(ElementId id, Point at, const std::string& logical) {
    net_.bindings[logical].insert(id);
    net_.ports.push_back({std::move(id), at, PortRole::Input});
    return *this;
  }
  Sketch& output(ElementId id, Point at) {
    if (net_.regime == Regime::Attraction) net_.attractants.insert(id);
    net_.ports.push_back({std::move(id), at, PortRole::Output});
    return *this;
  }
  Sketch& channel(ElementId id, ElementId from, ElementId to, Ticks length) {
    net_.channels.push_back({std::move(id), std::move(from), std::move(to), length, {}});
    return *this;
  }

  ChannelNetwork finish() { return apply_routing(std::move(net_)); }

 private:
  ChannelNetwork net_;
};

void enforce(const GateTemplate& t, const GateParams& params) {
  for (const auto& o : t.order) {
    const auto first = path_length(t.network, o.first, o.junction);
    const auto second = path_length(t.network, o.second, o.junction);
    if (!first || !second || *first + params.margin > *second)
      throw std::logic_error("layout violates arrival order " + o.first + " < " + o.second + " at " + o.junction);
  }
}

GateTemplate basic(const GateParams& p) {
  const Ticks s = p.scale;
  Sketch k(Regime::Gravity);
  k.junction("j", {0, 0})
      .input("x", polar(kGateRadius, deg(108)), "x")
      .input("y", polar(kGateRadius, deg(72)), "y")
      .output("p", polar(kGateRadius, deg(200)))
      .output("q", polar(kGateRadius, deg(270)))
      .output("r", polar(kGateRadius, deg(340)))
      .channel("cx", "x", "j", 2 * s)
      .channel("cy", "y", "j", 2 * s)
      .channel("cp", "j", "p", 2 * s)
      .channel("cq", "j", "q", 2 * s)
      .channel("cr", "j", "r", 2 * s);
  return {k.finish(), {}};
}

GateTemplate gravity_2x2(const GateParams& p) {
  const Ticks s = p.scale;
  Sketch k(Regime::Gravity);
  // Segment a (from x) is longer than segment b (from y); c deflects to p, d drops to q.
  k.junction("j", {0, 0})
      .input("x", polar(kGateRadius, deg(135)), "x")
      .input("y", polar(kGateRadius, deg(90)), "y")
      .output("p", polar(kGateRadius, deg(207)))
      .output("q", polar(kGateRadius, deg(270)))
      .channel("a", "x", "j", s * (1 + p.margin))
      .channel("b", "y", "j", s)
      .channel("c", "j", "p", 2 * s)
      .channel("d", "j", "q", 2 * s);
  return {k.finish(), {{"y", "x", "j"}}};
}

GateTemplate gravity_3x3(const GateParams& p) {
  const Ticks s = p.scale;
  Sketch k(Regime::Gravity);
  k.junction("j", {0, 0})
      .input("x", polar(kGateRadius, deg(90)), "x")
      .input("y", polar(kGateRadius, deg(108)), "y")
      .input("z", polar(kGateRadius, deg(72)), "z")
      .output("p", polar(kGateRadius, deg(270)))
      .output("q", polar(kGateRadius, deg(200)))
      .output("r", polar(kGateRadius, deg(340)))
      .channel("cx", "x", "j", s)
      .channel("cy", "y", "j", s * (1 + p.margin))
      .channel("cz", "z", "j", s * (1 + 2 * p.margin))
      .channel("cp", "j", "p", 2 * s)
      .channel("cq", "j", "q", 2 * s)
      .channel("cr", "j", "r", 2 * s);
  return {k.finish(), {{"x", "y", "j"}, {"y", "z", "j"}}};
}

GateTemplate attraction(const GateParams& p) {
  const Ticks s = p.scale;
  Sketch k(Regime::Attraction);
  // x and y cross at j; x reaches j first and its body then bars y.
  k.junction("j", {0, 0})
      .input("x", polar(kGateRadius, deg(135)), "x")
      .input("y", polar(kGateRadius, deg(225)), "y")
      .output("p", polar(kGateRadius, deg(45)))
      .output("q", polar(kGateRadius, deg(315)))
      .channel("cx", "x", "j", s)
      .channel("cy", "y", "j", s * (1 + p.margin))
      .channel("cp", "j", "p", 2 * s)
      .channel("cq", "j", "q", 2 * s);
  return {k.finish(), {{"x", "y", "j"}}};
}

GateTemplate half_adder(const GateParams& p) {
  const Ticks s = p.scale;
  const Ticks m = p.margin;
  const Point j1{0, 3}, j2{4, 0}, j3{-4, 0}, j4{0, -3};
  Sketch k(Regime::Attraction);
  // Two crossings: j1 (northern pair) and j4 (southern pair). Outputs from j1
  // and j4 merge pairwise at j2 (towards p) and j3 (towards q). The southern
  // x root escapes to r when a y body already lies across j4.
  k.junction("j1", j1)
      .junction("j2", j2)
      .junction("j3", j3)
      .junction("j4", j4)
      .input("xN", rim_along(j1, j1 - j3), "x")
      .input("yN", rim_along(j1, j1 - j2), "y")
      .input("xS", rim_along(j4, j4 - j2), "x")
      .input("yS", rim_along(j4, j4 - j3), "y")
      .output("p", rim_along(j2, {1, 0}))
      .output("q", rim_along(j3, {-1, 0}))
      .output("r", rim_along(j4, {1, -1}))
      .channel("cxN", "xN", "j1", 2 * s)
      .channel("cyN", "yN", "j1", (2 + m) * s)
      .channel("cyS", "yS", "j4", (2 + m) * s)
      .channel("cxS", "xS", "j4", (2 + 2 * m) * s)
      .channel("c12", "j1", "j2", 5 * s)
      .channel("c13", "j1", "j3", 5 * s)
      .channel("c42", "j4", "j2", 5 * s)
      .channel("c43", "j4", "j3", 5 * s)
      .channel("cp", "j2", "p", 2 * s)
      .channel("cq", "j3", "q", 2 * s)
      .channel("cr", "j4", "r", 2 * s);
  return {k.finish(), {{"xN", "yN", "j1"}, {"yS", "xS", "j4"}, {"xN", "yS", "j3"}}};
}

}  // namespace

GateTemplate gate_template(GateDesign design, const GateParams& params) {
  check_params(params);
  GateTemplate t;
  switch (design) {
    case GateDesign::Basic: t = basic(params); break;
    case GateDesign::Gravity2x2: t = gravity_2x2(params); break;
    case GateDesign::Gravity3x3: t = gravity_3x3(params); break;
    case GateDesign::Attraction: t = attraction(params); break;
    case GateDesign::HalfAdder: t = half_adder(params); break;
  }
  enforce(t, params);
  return t;
}

ChannelNetwork build_design(GateDesign design, const GateParams& params) {
  return gate_template(design, params).network;
}

ChannelNetwork build_basic_gravity_gate(const GateParams& params) { return build_design(GateDesign::Basic, params); }
ChannelNetwork build_gravity_gate_2x2(const GateParams& params) { return build_design(GateDesign::Gravity2x2, params); }
ChannelNetwork build_gravity_gate_3x3(const GateParams& params) { return build_design(GateDesign::Gravity3x3, params); }
ChannelNetwork build_attraction_gate(const GateParams& params) { return build_design(GateDesign::Attraction, params); }
ChannelNetwork build_half_adder(const GateParams& params) { return build_design(GateDesign::HalfAdder, params); }

}  // namespace rootgate
