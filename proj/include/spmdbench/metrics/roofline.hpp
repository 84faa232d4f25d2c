#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace spmdbench::metrics {

struct HardwarePeaks {
  std::string name;
  double bandwidth_gbs = 0.0;  // GB/s
  double fp32_tflops = 0.0;
  double fp64_tflops = 0.0;
};

enum class Precision { fp32, fp64 };

/// NVIDIA H100 NVL and AMD MI300A theoretical peaks.
const std::vector<HardwarePeaks>& builtin_hardware_peaks();

/// Lines of `name,bandwidth_GBs,fp32_TFLOPs,fp64_TFLOPs`; '#' starts a comment.
std::vector<HardwarePeaks> parse_hardware_peaks(std::istream& in);
std::vector<HardwarePeaks> load_hardware_peaks(const std::string& path);

const HardwarePeaks& find_peaks(const std::vector<HardwarePeaks>& table, std::string_view name);

/// min(peak FLOP/s, ai * peak bytes/s) in FLOP/s.
double roofline_attainable(double ai, const HardwarePeaks& peaks, Precision precision);

}  // namespace spmdbench::metrics
