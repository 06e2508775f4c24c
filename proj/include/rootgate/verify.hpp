#pragma once

#include <map>
#include <string>
#include <vector>

#include "rootgate/growth_sim.hpp"

namespace rootgate {

struct TruthRow {
  std::vector<bool> inputs;   // in TruthTable::inputs order
  std::vector<bool> outputs;  // in TruthTable::outputs order
  std::vector<bool> pass;     // per output; empty without expectations
  SimOutcome outcome;
};

/// One row per assignment, ascending binary with the first input as the most
/// significant bit. Inputs and outputs are sorted by name.
struct TruthTable {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::vector<TruthRow> rows;

  /// Outputs as {name: value} for one row.
  std::map<std::string, bool> output_map(std::size_t row) const;
};

enum class Execution { Serial, Parallel };

/// Simulate every assignment with zero delays. Propagates simulate() errors.
TruthTable enumerate_truth_table(const ChannelNetwork& net, const TiePolicy& tie,
                                 Execution mode = Execution::Serial);

struct VerifyReport {
  TruthTable table;
  std::map<std::string, std::string> expected;  // output -> expression text
  std::vector<std::size_t> failing_rows;
  bool pass = false;
};

/// Compare every row against Boolean expressions over the logical inputs.
/// Throws std::invalid_argument for an unknown output or input name.
VerifyReport verify_against(const ChannelNetwork& net, const std::map<std::string, std::string>& expected,
                            const TiePolicy& tie, Execution mode = Execution::Serial);

/// Parses "p=x&y;q=x|y".
std::map<std::string, std::string> parse_expectations(const std::string& text);

/// Plain-text table; adds a verdict column when expectations were checked.
std::string format_table(const TruthTable& table);

}  // namespace rootgate
