#include "rootgate/verify.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <sstream>

#include "rootgate/netlist.hpp"

namespace rootgate {

std::map<std::string, bool> TruthTable::output_map(std::size_t row) const {
  std::map<std::string, bool> out;
  for (std::size_t i = 0; i < outputs.size(); ++i) out[outputs[i]] = rows.at(row).outputs[i];
  return out;
}

namespace {

TruthRow run_row(const ChannelNetwork& net, const TruthTable& shape, std::size_t index, const TiePolicy& tie) {
  const std::size_t n = shape.inputs.size();
  TruthRow row;
  InputAssignment a;
  for (std::size_t i = 0; i < n; ++i) {
    const bool v = (index >> (n - 1 - i)) & 1U;
    row.inputs.push_back(v);
    a[shape.inputs[i]] = v;
  }
  row.outcome = simulate(net, a, tie);
  for (const auto& o : shape.outputs) row.outputs.push_back(row.outcome.outputs.at(o));
  return row;
}

}  // namespace

TruthTable enumerate_truth_table(const ChannelNetwork& net, const TiePolicy& tie, Execution mode) {
  TruthTable t;
  t.inputs = net.logical_inputs();
  t.outputs = net.output_ports();
  if (t.inputs.size() > 20) throw std::invalid_argument("too many logical inputs to enumerate");
  const std::size_t count = std::size_t{1} << t.inputs.size();
  if (mode == Execution::Serial) {
    for (std::size_t i = 0; i < count; ++i) t.rows.push_back(run_row(net, t, i, tie));
    return t;
  }
  const std::size_t workers = std::min<std::size_t>(count, std::max(1U, std::thread::hardware_concurrency()));
  t.rows.resize(count);
  std::vector<std::future<void>> pending;
  for (std::size_t w = 0; w < workers; ++w)
    pending.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < count; i += workers) t.rows[i] = run_row(net, t, i, tie);
    }));
  for (auto& f : pending) f.get();
  return t;
}

VerifyReport verify_against(const ChannelNetwork& net, const std::map<std::string, std::string>& expected,
                            const TiePolicy& tie, Execution mode) {
  const auto outputs = net.output_ports();
  const auto inputs = net.logical_inputs();
  std::map<std::string, BoolExpr> exprs;
  for (const auto& [name, text] : expected) {
    if (std::find(outputs.begin(), outputs.end(), name) == outputs.end())
      throw std::invalid_argument("network has no output " + name);
    BoolExpr e = BoolExpr::parse(text);
    for (const auto& v : e.variables())
      if (std::find(inputs.begin(), inputs.end(), v) == inputs.end())
        throw std::invalid_argument("expression for " + name + " uses unknown input " + v);
    exprs.emplace(name, std::move(e));
  }

  VerifyReport report;
  report.expected = expected;
  report.table = enumerate_truth_table(net, tie, mode);
  auto& t = report.table;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::map<std::string, bool> env;
    for (std::size_t i = 0; i < t.inputs.size(); ++i) env[t.inputs[i]] = t.rows[r].inputs[i];
    bool row_ok = true;
    for (std::size_t o = 0; o < t.outputs.size(); ++o) {
      auto it = exprs.find(t.outputs[o]);
      const bool ok = it == exprs.end() || it->second.eval(env) == t.rows[r].outputs[o];
      t.rows[r].pass.push_back(ok);
      row_ok = row_ok && ok;
    }
    if (!row_ok) report.failing_rows.push_back(r);
  }
  report.pass = report.failing_rows.empty();
  return report;
}

std::map<std::string, std::string> parse_expectations(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expectation needs output=expression: " + item);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string name = trim(item.substr(0, eq));
    if (name.empty()) throw std::invalid_argument("expectation without an output name: " + item);
    out[name] = trim(item.substr(eq + 1));
  }
  return out;
}

std::string format_table(const TruthTable& table) {
  std::ostringstream os;
  for (const auto& n : table.inputs) os << n << ' ';
  os << '|';
  for (const auto& n : table.outputs) os << ' ' << n;
  const bool checked = !table.rows.empty() && !table.rows.front().pass.empty();
  if (checked) os << " | verdict";
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.inputs.size(); ++i)
      os << std::string(table.inputs[i].size() - 1, ' ') << row.inputs[i] << ' ';
    os << '|';
    bool ok = true;
    for (std::size_t i = 0; i < row.outputs.size(); ++i) {
      os << ' ' << std::string(table.outputs[i].size() - 1, ' ') << row.outputs[i];
      if (checked && !row.pass[i]) ok = false;
    }
    if (checked) os << " | " << (ok ? "ok" : "FAIL");
    os << '\n';
  }
  return os.str();
}

}  // namespace rootgate
