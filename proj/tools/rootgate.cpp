#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rootgate/compiler.hpp"
#include "rootgate/gate_library.hpp"
#include "rootgate/growth_sim.hpp"
#include "rootgate/netlist.hpp"
#include "rootgate/network_json.hpp"
#include "rootgate/svg.hpp"
#include "rootgate/verify.hpp"

using namespace rootgate;

namespace {

constexpr int kFail = 1;
constexpr int kError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// "x=1,y=0" -> {x: "1", y: "0"}
std::map<std::string, std::string> key_values(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected name=value, got " + item);
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

TiePolicy parse_tie(const std::string& text) {
  if (text == "error") return TiePolicy::error();
  if (text == "both") return TiePolicy::both_deflect();
  if (text.rfind("priority=", 0) == 0) {
    std::vector<std::string> order;
    std::stringstream ss(text.substr(9));
    std::string name;
    while (std::getline(ss, name, ',')) order.push_back(name);
    return TiePolicy::priority_by_input(order);
  }
  throw std::invalid_argument("tie policy must be error, both or priority=a,b,...");
}

// Reference formulas per library gate, and the tie policy each is read under.
struct GateCheck {
  GateDesign design;
  std::map<std::string, std::string> expected;
  TiePolicy tie;
};

std::vector<GateCheck> reference_checks() {
  return {
      {GateDesign::Basic, {{"p", "x&y"}, {"q", "x|y"}, {"r", "x&y"}}, TiePolicy::both_deflect()},
      {GateDesign::Gravity2x2, {{"p", "x&y"}, {"q", "x|y"}}, TiePolicy::error()},
      {GateDesign::Gravity3x3, {{"p", "x|y|z"}, {"q", "x&y"}, {"r", "z&(x|y)"}}, TiePolicy::error()},
      {GateDesign::Attraction, {{"p", "!x&y"}, {"q", "x"}}, TiePolicy::error()},
      {GateDesign::HalfAdder, {{"p", "x^y"}, {"q", "x|y"}, {"r", "x&y"}}, TiePolicy::error()},
  };
}

std::string row_label(const TruthTable& t, std::size_t r) {
  std::string s;
  for (std::size_t i = 0; i < t.inputs.size(); ++i)
    s += (s.empty() ? "" : ",") + t.inputs[i] + "=" + (t.rows[r].inputs[i] ? "1" : "0");
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Root-growth logic gate simulator"};
  app.footer(
      "Exit status: 0 success or PASS, 1 FAIL, 2 error.\n"
      "ROOTGATE_SEED is reserved and ignored: the engine is deterministic.");
  app.require_subcommand(1);

  GateParams params;
  std::string target, out_path;
  auto* build = app.add_subcommand("build", "Build a library gate or compile a netlist file to network JSON");
  build->add_option("target", target, "basic, grav2, grav3, attr, half-adder, or a netlist file")->required();
  build->add_option("--margin", params.margin, "arrival-order margin in ticks")->check(CLI::PositiveNumber);
  build->add_option("--scale", params.scale, "channel length multiplier")->check(CLI::PositiveNumber);
  build->add_option("-o,--output", out_path, "write here instead of stdout");

  std::string net_path, set_text, delay_text, tie_text = "error", trace_path, svg_path;
  auto* sim = app.add_subcommand("sim", "Simulate one input assignment");
  sim->add_option("network", net_path, "network JSON")->required();
  sim->add_option("--set", set_text, "TRUE/FALSE per logical input, e.g. x=1,y=0 (unset inputs are 0)");
  sim->add_option("--delay", delay_text, "initiation delay in ticks, e.g. x=5");
  sim->add_option("--tie", tie_text, "error | both | priority=x,y");
  sim->add_option("--trace", trace_path, "write the event trace as JSON lines");
  sim->add_option("--svg", svg_path, "write an SVG drawing with root overlays");

  std::string expect_text;
  bool parallel = false;
  auto* table = app.add_subcommand("table", "Enumerate the truth table");
  table->add_option("network", net_path, "network JSON")->required();
  table->add_option("--expect", expect_text, "expected functions, e.g. \"p=x&y;q=x|y\"");
  table->add_option("--tie", tie_text, "error | both | priority=x,y");
  table->add_flag("--parallel", parallel, "simulate rows concurrently");

  auto* verify_all = app.add_subcommand("verify-all", "Check every library gate against its reference formulas");
  verify_all->add_option("--margin", params.margin)->check(CLI::PositiveNumber);
  verify_all->add_option("--scale", params.scale)->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      ChannelNetwork net;
      if (auto d = design_from_name(target))
        net = build_design(*d, params);
      else
        net = compile(parse_netlist(read_file(target)), params);
      const std::string json = network_to_json(net);
      if (out_path.empty())
        std::cout << json;
      else
        write_file(out_path, json);
      return 0;
    }

    if (*sim) {
      const ChannelNetwork net = load_network(net_path);
      InputAssignment inputs;
      for (const auto& name : net.logical_inputs()) inputs[name] = false;
      for (const auto& [name, v] : key_values(set_text)) {
        if (!inputs.count(name)) throw std::invalid_argument("network has no input " + name);
        if (v != "0" && v != "1") throw std::invalid_argument("input values are 0 or 1, got " + name + "=" + v);
        inputs[name] = v == "1";
      }
      DelayMap delays;
      for (const auto& [name, v] : key_values(delay_text)) delays[name] = std::stoll(v);
      const SimOutcome outcome = simulate(net, inputs, parse_tie(tie_text), delays);
      for (const auto& [port, v] : outcome.outputs) std::cout << port << "=" << v << "\n";
      for (const auto& r : outcome.roots) {
        std::cout << "root " << r.id << " (" << r.input << " from " << r.source_port << "): ";
        if (r.status == RootStatus::Exited)
          std::cout << "exited " << r.exit_port;
        else if (r.status == RootStatus::Blocked)
          std::cout << "blocked after " << r.channel;
        else
          std::cout << "growing";
        std::cout << "\n";
      }
      if (!trace_path.empty()) write_file(trace_path, trace_to_jsonl(outcome.trace));
      if (!svg_path.empty()) write_file(svg_path, render_svg(net, &outcome));
      return 0;
    }

    if (*table) {
      const ChannelNetwork net = load_network(net_path);
      const Execution mode = parallel ? Execution::Parallel : Execution::Serial;
      if (expect_text.empty()) {
        std::cout << format_table(enumerate_truth_table(net, parse_tie(tie_text), mode));
        return 0;
      }
      const VerifyReport report = verify_against(net, parse_expectations(expect_text), parse_tie(tie_text), mode);
      std::cout << format_table(report.table) << (report.pass ? "PASS" : "FAIL") << "\n";
      return report.pass ? 0 : kFail;
    }

    if (*verify_all) {
      bool all = true;
      for (const auto& check : reference_checks()) {
        const VerifyReport report = verify_against(build_design(check.design, params), check.expected, check.tie);
        std::string formulas;
        for (const auto& [o, e] : check.expected) formulas += (formulas.empty() ? "" : "; ") + o + "=" + e;
        std::cout << (report.pass ? "PASS " : "FAIL ") << design_name(check.design) << "  " << formulas;
        for (auto r : report.failing_rows) std::cout << "  [mismatch at " << row_label(report.table, r) << "]";
        std::cout << "\n";
        all = all && report.pass;
      }
      std::cout << (all ? "PASS" : "FAIL") << "\n";
      return all ? 0 : kFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "rootgate: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
