#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "spmdbench/harness/records.hpp"
#include "spmdbench/metrics/phi.hpp"

namespace spmdbench::harness {

struct PhiReport {
  /// Per-workload results in first-seen order of the candidate file.
  std::vector<std::pair<std::string, metrics::PhiResult>> workloads;
  /// Keys present in only one of the two files.
  std::vector<std::string> unmatched;
  bool any_wall_clock = false;
};

/// Orientation of a summary's figure of merit ("wall_time_s" is lower-is-better).
metrics::FomOrientation orientation_of(const std::string& fom_name);

/// Joins on (workload, kernel, dtype, params) and builds one efficiency entry per match.
PhiReport phi_compare(const std::vector<SummaryRecord>& candidate,
                      const std::vector<SummaryRecord>& baseline, bool cap);

void print_phi_report(std::ostream& out, const PhiReport& report);

/// Reads both summary CSVs, prints the report, returns the process exit code
/// (0 ok, 1 no matching keys, 3 I/O).
int phi_command(const std::string& candidate_csv, const std::string& baseline_csv, bool cap,
                std::ostream& out, std::ostream& err);

}  // namespace spmdbench::harness
