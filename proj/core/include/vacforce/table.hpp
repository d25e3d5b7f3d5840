#pragma once

#include <string>
#include <vector>

#include "vacforce/forces.hpp"

namespace vacforce {

// One sweep point. Scalar scenarios (asymptotics, atom-atom) populate
// only total/error/converged and leave the breakdown at zero.
struct ResultRow {
  double distance = 0.0;
  ForceResult force;
};

// Sweep results plus the metadata needed to reproduce the run exactly:
// the fully resolved configuration document and the output units. Values
// are stored in the declared output units.
class ResultTable {
 public:
  ResultTable(std::string scenario, std::string resolved_config_json,
              std::string distance_unit, std::string force_unit);

  void add_row(ResultRow row) { rows_.push_back(row); }

  const std::string& scenario() const { return scenario_; }
  const std::string& resolved_config_json() const { return config_json_; }
  const std::string& distance_unit() const { return distance_unit_; }
  const std::string& force_unit() const { return force_unit_; }
  const std::vector<ResultRow>& rows() const { return rows_; }

 private:
  std::string scenario_;
  std::string config_json_;
  std::string distance_unit_;
  std::string force_unit_;
  std::vector<ResultRow> rows_;
};

enum class TableFormat { Csv, Human };

// CSV: '#'-prefixed metadata lines, a header row, then data rows with
// full-precision (round-trippable) decimal floats. Human: aligned
// columns at 6 significant digits.
std::string emit_table(const ResultTable& table, TableFormat format);

}  // namespace vacforce
