#ifndef HULLSOLVE_REPORT_HPP
#define HULLSOLVE_REPORT_HPP

#include "hullsolve/io.hpp"

#include <map>
#include <string>
#include <vector>

namespace hullsolve::io {

// Flat, machine-readable summary of one CLI run. Keys of the maps are
// sorted, so serialisation is deterministic apart from the timing fields.
struct RunReport {
  std::vector<std::string> command;            // argv echo
  std::string subcommand;
  std::map<std::string, std::string> config;   // effective settings
  std::string status;
  int exit_code = 0;
  std::string message;
  std::vector<double> x;
  std::map<std::string, double> diagnostics;   // residual_norm, caps, bounds, ...
  std::vector<double> witness_margins;
  std::vector<TraceRow> trace;
  std::vector<std::map<std::string, double>> instances;  // bench only
  double wall_time_s = 0.0;

  bool operator==(const RunReport&) const = default;
};

std::string serialize_report(const RunReport& r);
RunReport parse_report(const std::string& text);

}  // namespace hullsolve::io

#endif  // HULLSOLVE_REPORT_HPP
