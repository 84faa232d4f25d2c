#include "spmdbench/harness/phi_command.hpp"

#include <algorithm>
#include <iomanip>
#include <set>

#include "spmdbench/errors.hpp"

namespace spmdbench::harness {

namespace {

std::string join_key(const SummaryRecord& s) {
  return s.workload + "," + s.kernel + "," + s.dtype + "," + s.params;
}

}  // namespace

metrics::FomOrientation orientation_of(const std::string& fom_name) {
  return fom_name == "wall_time_s" ? metrics::FomOrientation::lower_is_better
                                   : metrics::FomOrientation::higher_is_better;
}

PhiReport phi_compare(const std::vector<SummaryRecord>& candidate,
                      const std::vector<SummaryRecord>& baseline, bool cap) {
  std::map<std::string, const SummaryRecord*> base;
  for (const auto& b : baseline) base.emplace(join_key(b), &b);

  PhiReport report;
  std::vector<std::string> order;
  std::map<std::string, std::vector<metrics::EfficiencyEntry>> entries;
  std::set<std::string> matched;
  for (const auto& c : candidate) {
    const std::string key = join_key(c);
    const auto it = base.find(key);
    if (it == base.end()) {
      report.unmatched.push_back("candidate only: " + key);
      continue;
    }
    const SummaryRecord& b = *it->second;
    if (b.fom_name != c.fom_name) {
      throw InvalidArgument("figure of merit mismatch for " + key + ": " + c.fom_name + " vs " +
                            b.fom_name);
    }
    matched.insert(key);
    const auto orientation = orientation_of(c.fom_name);
    if (orientation == metrics::FomOrientation::lower_is_better) report.any_wall_clock = true;
    if (!entries.count(c.workload)) order.push_back(c.workload);
    entries[c.workload].push_back(metrics::efficiency(c.kernel + " " + c.dtype + " " + c.params,
                                                      c.fom_value, b.fom_value, orientation));
  }
  for (const auto& b : baseline) {
    if (!matched.count(join_key(b))) report.unmatched.push_back("baseline only: " + join_key(b));
  }
  for (const auto& w : order) report.workloads.emplace_back(w, metrics::phi_bar(entries[w], cap));
  return report;
}

void print_phi_report(std::ostream& out, const PhiReport& report) {
  for (const auto& [workload, result] : report.workloads) {
    out << workload << (result.capped ? " (capped at 1)" : "") << '\n';
    std::size_t width = 0;
    for (const auto& e : result.entries) width = std::max(width, e.case_id.size());
    for (const auto& e : result.entries) {
      out << "  " << std::left << std::setw(static_cast<int>(width)) << e.case_id << "  "
          << metrics::format_efficiency(e.e) << '\n';
    }
    out << "  Phi = " << metrics::format_efficiency(result.phi) << '\n';
  }
  if (report.any_wall_clock) {
    out << "note: wall-clock entries use baseline_time / candidate_time\n";
  }
}

int phi_command(const std::string& candidate_csv, const std::string& baseline_csv, bool cap,
                std::ostream& out, std::ostream& err) {
  std::vector<SummaryRecord> cand, base;
  try {
    cand = read_summary_csv(candidate_csv);
    base = read_summary_csv(baseline_csv);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  const PhiReport report = phi_compare(cand, base, cap);
  for (const auto& u : report.unmatched) err << "unmatched key: " << u << '\n';
  if (report.workloads.empty()) {
    err << "error: no matching (workload, kernel, dtype, params) keys\n";
    return 1;
  }
  print_phi_report(out, report);
  return 0;
}

}  // namespace spmdbench::harness
