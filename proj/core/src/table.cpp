#include "vacforce/table.hpp"

#include <cstdio>
#include <sstream>
#include <utility>

#include "vacforce/errors.hpp"

namespace vacforce {

namespace {

// Shortest decimal form that parses back to the same double.
std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

ResultTable::ResultTable(std::string scenario, std::string resolved_config_json,
                         std::string distance_unit, std::string force_unit)
    : scenario_(std::move(scenario)),
      config_json_(std::move(resolved_config_json)),
      distance_unit_(std::move(distance_unit)),
      force_unit_(std::move(force_unit)) {
  if (scenario_.empty() || config_json_.empty() || distance_unit_.empty() ||
      force_unit_.empty()) {
    throw ConfigError("result table metadata must not be empty");
  }
}

std::string emit_table(const ResultTable& table, TableFormat format) {
  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << "# vacforce " << table.scenario() << " sweep\n";
    out << "# config = " << table.resolved_config_json() << "\n";
    out << "# distance unit: " << table.distance_unit() << "\n";
    out << "# force unit: " << table.force_unit() << "\n";
    out << "distance,total,screened,assisted,screened_tm,screened_te,"
           "assisted_tm,assisted_te,error_estimate,converged\n";
    for (const ResultRow& row : table.rows()) {
      const ForceResult& f = row.force;
      out << full_precision(row.distance) << ',' << full_precision(f.total)
          << ',' << full_precision(f.screened) << ','
          << full_precision(f.assisted) << ','
          << full_precision(f.screened_parts.tm) << ','
          << full_precision(f.screened_parts.te) << ','
          << full_precision(f.assisted_parts.tm) << ','
          << full_precision(f.assisted_parts.te) << ','
          << full_precision(f.error_estimate) << ','
          << (f.converged ? '1' : '0') << '\n';
    }
    return out.str();
  }

  out << "vacforce " << table.scenario() << " sweep\n";
  out << "distance unit: " << table.distance_unit() << "\n";
  out << "force unit:    " << table.force_unit() << "\n\n";
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %-14s %-14s %-14s %-12s %s\n",
                "distance", "total", "screened", "assisted", "error", "ok");
  out << line;
  for (const ResultRow& row : table.rows()) {
    const ForceResult& f = row.force;
    std::snprintf(line, sizeof line, "%-14s %-14s %-14s %-14s %-12s %s\n",
                  compact(row.distance).c_str(), compact(f.total).c_str(),
                  compact(f.screened).c_str(), compact(f.assisted).c_str(),
                  compact(f.error_estimate).c_str(), f.converged ? "yes" : "NO");
    out << line;
  }
  return out.str();
}

}  // namespace vacforce
