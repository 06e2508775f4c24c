#include "rootgate/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace rootgate {

namespace {

constexpr double kPad = 4.0;
const char* const kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const char* role_name(PortRole r) {
  switch (r) {
    case PortRole::Input: return "input";
    case PortRole::Output: return "output";
    case PortRole::Sink: return "sink";
  }
  return "?";
}

const char* status_name(RootStatus s) {
  switch (s) {
    case RootStatus::Growing: return "growing";
    case RootStatus::Blocked: return "blocked";
    case RootStatus::Exited: return "exited";
  }
  return "?";
}

}  // namespace

std::string render_svg(const ChannelNetwork& net, const SimOutcome* outcome) {
  const NetworkIndex index(net);
  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x;
  double hi_x = -lo_x, hi_y = -lo_x;
  auto grow = [&](Point p) {
    lo_x = std::min(lo_x, p.x);
    lo_y = std::min(lo_y, p.y);
    hi_x = std::max(hi_x, p.x);
    hi_y = std::max(hi_y, p.y);
  };
  for (const auto& j : net.junctions) grow(j.position);
  for (const auto& p : net.ports) grow(p.position);
  for (const auto& c : net.channels)
    for (const auto& v : c.via) grow(v);
  if (lo_x > hi_x) lo_x = lo_y = hi_x = hi_y = 0;

  // Screen y grows downward.
  auto sx = [&](Point p) { return num(p.x - lo_x + kPad); };
  auto sy = [&](Point p) { return num(hi_y - p.y + kPad); };
  auto points = [&](const std::vector<Point>& pts) {
    std::string s;
    for (const auto& p : pts) s += (s.empty() ? "" : " ") + sx(p) + "," + sy(p);
    return s;
  };

  const double w = hi_x - lo_x + 2 * kPad, h = hi_y - lo_y + 2 * kPad;
  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\" width=\"" +
         num(w * 20) + "\" height=\"" + num(h * 20) + "\">\n";
  out += "<style>.channel{fill:none;stroke:#999;stroke-width:0.6}.junction{fill:#333}"
         ".port{stroke:#333;stroke-width:0.15}.port-input{fill:#fff}.port-output{fill:#333}.port-sink{fill:#bbb}"
         ".root{fill:none;stroke-width:0.35;stroke-linejoin:round}.blocked{fill:none;stroke:#000;stroke-width:0.2}"
         "text{font:1.2px sans-serif}</style>\n";

  out += "<g class=\"channels\">\n";
  for (const auto& c : net.channels)
    out += "<polyline class=\"channel\" data-id=\"" + escape(c.id) + "\" points=\"" + points(index.polyline(c)) +
           "\"/>\n";
  out += "</g>\n<g class=\"junctions\">\n";
  for (const auto& j : net.junctions)
    out += "<circle class=\"junction\" data-id=\"" + escape(j.id) + "\" cx=\"" + sx(j.position) + "\" cy=\"" +
           sy(j.position) + "\" r=\"0.5\"/>\n";
  out += "</g>\n<g class=\"ports\">\n";
  for (const auto& p : net.ports) {
    out += "<circle class=\"port port-" + std::string(role_name(p.role)) + "\" data-id=\"" + escape(p.id) +
           "\" cx=\"" + sx(p.position) + "\" cy=\"" + sy(p.position) + "\" r=\"0.7\"/>\n";
    out += "<text x=\"" + sx(p.position + Point{1, 0}) + "\" y=\"" + sy(p.position + Point{0, 1}) + "\">" +
           escape(p.id) + "</text>\n";
  }
  out += "</g>\n";

  if (outcome) {
    out += "<g class=\"roots\">\n";
    for (const auto& r : outcome->roots) {
      std::vector<Point> pts;
      for (const auto& id : r.trajectory) {
        if (const Channel* c = index.channel(id)) {
          for (const auto& p : index.polyline(*c))
            if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
        } else if (auto p = index.position(id)) {
          if (pts.empty() || !(pts.back() == *p)) pts.push_back(*p);
        }
      }
      ElementId end = r.exit_port;
      if (end.empty()) {
        const Channel* c = index.channel(r.channel);
        end = c ? c->to : r.source_port;
      }
      const char* colour = kPalette[r.id % std::size(kPalette)];
      out += "<polyline class=\"root\" data-root=\"" + std::to_string(r.id) + "\" data-input=\"" + escape(r.input) +
             "\" data-end=\"" + escape(end) + "\" data-status=\"" + status_name(r.status) + "\" stroke=\"" + colour +
             "\" points=\"" + points(pts) + "\"/>\n";
      if (r.status == RootStatus::Blocked && !pts.empty())
        out += "<circle class=\"blocked\" data-root=\"" + std::to_string(r.id) + "\" cx=\"" + sx(pts.back()) +
               "\" cy=\"" + sy(pts.back()) + "\" r=\"1.2\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace rootgate
