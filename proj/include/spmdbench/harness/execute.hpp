#pragma once

#include <string>
#include <vector>

#include "spmdbench/harness/plan.hpp"
#include "spmdbench/harness/records.hpp"

namespace spmdbench::harness {

struct VerifyOutcome {
  std::string kernel;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ExecuteResult {
  std::vector<BenchmarkRecord> records;
  std::vector<SummaryRecord> summaries;
  std::vector<VerifyOutcome> verification;
};

/// Runs warmup_discard + iterations launches, drops the warm-ups, verifies the
/// final outputs against the workload oracle and summarizes each kernel from
/// its minimum time. Throws VerificationError on an oracle mismatch. Writes the
/// plan's CSV files when set.
ExecuteResult execute(const RunPlan& plan);

/// One launch per kernel followed by the oracle checks; never throws on a
/// mismatch, the outcomes carry pass/fail.
std::vector<VerifyOutcome> verify(const RunPlan& plan);

/// Figure of merit for one kernel at a given time; the name is one of
/// "bandwidth_GBps", "gflops", "wall_time_s".
struct Fom {
  std::string name;
  double value = 0.0;
};
Fom compute_fom(const RunPlan& plan, const std::string& kernel, double time_s);

/// Rebuilds summaries from raw records (minimum time per kernel).
std::vector<SummaryRecord> summarize(const RunPlan& plan,
                                     const std::vector<BenchmarkRecord>& records);

}  // namespace spmdbench::harness
