#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spmdbench::harness {

/// One timed post-warm-up kernel launch.
struct BenchmarkRecord {
  std::string workload;
  std::string kernel;
  std::string backend;
  std::string dtype;
  std::string params;
  std::uint64_t iter = 0;
  double time_s = 0.0;

  friend bool operator==(const BenchmarkRecord&, const BenchmarkRecord&) = default;
};

struct SummaryRecord {
  std::string workload;
  std::string kernel;
  std::string backend;
  std::string dtype;
  std::string params;
  std::string fom_name;
  double fom_value = 0.0;
  double time_min_s = 0.0;
  double time_mean_s = 0.0;
  double time_max_s = 0.0;
  double time_stddev_s = 0.0;

  friend bool operator==(const SummaryRecord&, const SummaryRecord&) = default;
};

inline constexpr std::string_view kRawHeader = "workload,kernel,backend,dtype,params,iter,time_s";
inline constexpr std::string_view kSummaryHeader =
    "workload,kernel,backend,dtype,params,fom_name,fom_value,time_min_s,time_mean_s,time_max_s,"
    "time_stddev_s";

/// Full-precision scientific notation, e.g. "1.2345678901234567e-04".
std::string format_double(double v);

void write_csv(std::ostream& out, std::span<const BenchmarkRecord> records);
void write_csv(std::ostream& out, std::span<const SummaryRecord> summaries);
/// Throw IoError when the path cannot be written.
void write_csv(const std::string& path, std::span<const BenchmarkRecord> records);
void write_csv(const std::string& path, std::span<const SummaryRecord> summaries);

/// Readers reject files whose header differs from the contract (InvalidArgument)
/// and throw IoError when the path cannot be opened.
std::vector<BenchmarkRecord> read_raw_csv(std::istream& in);
std::vector<SummaryRecord> read_summary_csv(std::istream& in);
std::vector<BenchmarkRecord> read_raw_csv(const std::string& path);
std::vector<SummaryRecord> read_summary_csv(const std::string& path);

}  // namespace spmdbench::harness
