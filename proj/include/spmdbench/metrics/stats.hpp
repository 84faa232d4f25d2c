#pragma once

#include <cstddef>
#include <span>

namespace spmdbench::metrics {

struct Stats {
  std::size_t n = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // sample (n - 1); 0 for a single sample
};

/// Throws InvalidArgument on an empty sample.
Stats run_stats(std::span<const double> times);

}  // namespace spmdbench::metrics
