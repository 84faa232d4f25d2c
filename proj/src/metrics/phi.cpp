#include "spmdbench/metrics/phi.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "spmdbench/errors.hpp"

namespace spmdbench::metrics {

EfficiencyEntry efficiency(std::string case_id, double candidate_perf, double baseline_perf,
                           FomOrientation orientation) {
  if (!(candidate_perf > 0.0) || !(baseline_perf > 0.0)) {
    throw InvalidArgument("efficiency for '" + case_id + "' needs positive figures of merit");
  }
  const double e = orientation == FomOrientation::higher_is_better ? candidate_perf / baseline_perf
                                                                   : baseline_perf / candidate_perf;
  return {std::move(case_id), candidate_perf, baseline_perf, e};
}

PhiResult phi_bar(std::vector<EfficiencyEntry> entries, bool capped) {
  if (entries.empty()) throw InvalidArgument("phi_bar needs at least one efficiency entry");
  double sum = 0.0;
  for (auto& entry : entries) {
    if (!std::isfinite(entry.e) || entry.e < 0.0) {
      throw InvalidArgument("efficiency for '" + entry.case_id + "' must be finite and >= 0");
    }
    if (capped) entry.e = std::min(entry.e, 1.0);
    sum += entry.e;
  }
  PhiResult r;
  r.phi = sum / static_cast<double>(entries.size());
  r.entries = std::move(entries);
  r.capped = capped;
  return r;
}

std::string format_efficiency(double e) {
  char buf[32];
  if (e >= 0.01 || e == 0.0) {
    std::snprintf(buf, sizeof buf, "%.2f", e);
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.1e", e);
  // Drop the exponent's sign padding: "7.0e-03" -> "7.0e-3".
  std::string s(buf);
  const auto pos = s.find('e');
  std::string mantissa = s.substr(0, pos);
  int exponent = std::stoi(s.substr(pos + 1));
  return mantissa + "e" + std::to_string(exponent);
}

}  // namespace spmdbench::metrics
