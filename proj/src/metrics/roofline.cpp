#include "spmdbench/metrics/roofline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "spmdbench/errors.hpp"

namespace spmdbench::metrics {

const std::vector<HardwarePeaks>& builtin_hardware_peaks() {
  static const std::vector<HardwarePeaks> table = {
      {"H100", 3900.0, 60.0, 30.0},
      {"MI300A", 5300.0, 122.6, 61.3},
  };
  return table;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<HardwarePeaks> parse_hardware_peaks(std::istream& in) {
  std::vector<HardwarePeaks> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(trim(f));
    if (fields.size() != 4) {
      throw InvalidArgument("hardware peaks line " + std::to_string(lineno) +
                            ": expected name,bandwidth,fp32,fp64");
    }
    HardwarePeaks p;
    p.name = fields[0];
    try {
      p.bandwidth_gbs = std::stod(fields[1]);
      p.fp32_tflops = std::stod(fields[2]);
      p.fp64_tflops = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw InvalidArgument("hardware peaks line " + std::to_string(lineno) + ": bad number");
    }
    if (p.name.empty() || !(p.bandwidth_gbs > 0) || !(p.fp32_tflops > 0) || !(p.fp64_tflops > 0)) {
      throw InvalidArgument("hardware peaks line " + std::to_string(lineno) +
                            ": name must be set and all peaks positive");
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<HardwarePeaks> load_hardware_peaks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open hardware peaks file '" + path + "'");
  return parse_hardware_peaks(in);
}

const HardwarePeaks& find_peaks(const std::vector<HardwarePeaks>& table, std::string_view name) {
  const auto it = std::find_if(table.begin(), table.end(),
                               [&](const HardwarePeaks& p) { return p.name == name; });
  if (it == table.end()) throw InvalidArgument("unknown hardware '" + std::string(name) + "'");
  return *it;
}

double roofline_attainable(double ai, const HardwarePeaks& peaks, Precision precision) {
  if (!(ai >= 0.0)) throw InvalidArgument("arithmetic intensity must be >= 0");
  const double flops = (precision == Precision::fp32 ? peaks.fp32_tflops : peaks.fp64_tflops) * 1e12;
  const double bytes = peaks.bandwidth_gbs * 1e9;
  return std::min(flops, ai * bytes);
}

}  // namespace spmdbench::metrics
