#include "spmdbench/metrics/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "spmdbench/errors.hpp"

namespace spmdbench::metrics {

Stats run_stats(std::span<const double> times) {
  if (times.empty()) throw InvalidArgument("run_stats needs at least one sample");
  Stats s;
  s.n = times.size();
  const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
  s.min = *lo;
  s.max = *hi;
  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  for (double t : sorted) sum += t;
  s.mean = std::clamp(sum / static_cast<double>(s.n), s.min, s.max);
  if (s.n > 1) {
    double ss = 0.0;
    for (double t : sorted) ss += (t - s.mean) * (t - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

}  // namespace spmdbench::metrics
