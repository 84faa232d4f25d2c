#pragma once

#include <string>
#include <vector>

namespace spmdbench::metrics {

/// How a figure of merit orders results.
enum class FomOrientation {
  higher_is_better,  // bandwidth, GFLOP/s: e = candidate / baseline
  lower_is_better,   // wall-clock time:    e = baseline / candidate
};

struct EfficiencyEntry {
  std::string case_id;
  double candidate_perf = 0.0;
  double baseline_perf = 0.0;
  double e = 0.0;
};

/// Builds an entry with the orientation-correct ratio, so e > 1 always means the
/// candidate is better. Both figures must be positive.
EfficiencyEntry efficiency(std::string case_id, double candidate_perf, double baseline_perf,
                           FomOrientation orientation);

struct PhiResult {
  std::vector<EfficiencyEntry> entries;
  double phi = 0.0;
  bool capped = false;
};

/// Arithmetic mean of the entries' e, optionally after clamping each to <= 1.
/// The returned entries carry the (possibly clamped) e used in the mean.
PhiResult phi_bar(std::vector<EfficiencyEntry> entries, bool capped = false);

/// Two decimals for e >= 0.01 ("0.92"), otherwise one-digit scientific ("7.0e-3").
std::string format_efficiency(double e);

}  // namespace spmdbench::metrics
