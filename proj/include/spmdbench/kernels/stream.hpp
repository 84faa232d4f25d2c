#pragma once

#include <cstdint>
#include <vector>

#include "spmdbench/exec/backend.hpp"
#include "spmdbench/exec/buffer.hpp"
#include "spmdbench/exec/types.hpp"

namespace spmdbench::kernels {

struct StreamConfig {
  std::uint64_t N = std::uint64_t{1} << 25;
  double scalar = 0.4;
  double initA = 0.1;
  double initB = 0.2;
  double initC = 0.0;
  std::uint32_t iterations = 100;
  std::uint32_t dot_num_blocks = 256;
  std::uint32_t tbsize = 1024;
  exec::ElemType elem_type = exec::ElemType::f64;
};

/// Throws InvalidArgument when N is not a multiple of tbsize, tbsize is not a
/// power of two, or dot_num_blocks is zero.
void validate(const StreamConfig& cfg);

/// Device arrays a, b, c of one stream run.
struct StreamArrays {
  exec::Buffer a;
  exec::Buffer b;
  exec::Buffer c;
};

StreamArrays stream_init(const StreamConfig& cfg);

/// Seconds per kernel for one iteration. `dot` covers the device reduction
/// plus the host-side sum over block partials; `dot_device` is the first
/// (device) phase alone.
struct StreamTimes {
  double copy = 0.0;
  double mul = 0.0;
  double add = 0.0;
  double triad = 0.0;
  double dot = 0.0;
  double dot_device = 0.0;
};

struct StreamResult {
  std::vector<StreamTimes> times;
  double dot = 0.0;
};

double stream_copy(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend);
double stream_mul(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend);
double stream_add(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend);
double stream_triad(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend);

/// Shared-memory tree dot product of a and b: per-block partials on the device,
/// then a sequential host sum over the partials.
struct DotResult {
  double value = 0.0;
  double seconds = 0.0;
  double device_seconds = 0.0;
};
DotResult stream_dot(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend);

/// Runs cfg.iterations iterations of copy, mul, add, triad, dot on `s`.
StreamResult stream_kernels(StreamArrays& s, const StreamConfig& cfg,
                            const exec::Backend& backend);

/// Convenience: initialize fresh arrays and run stream_kernels.
StreamResult stream_kernels(const StreamConfig& cfg, const exec::Backend& backend);

struct StreamExpected {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double dot = 0.0;
};

/// Scalar recurrence of the four array kernels in the config's element type.
StreamExpected stream_expected(const StreamConfig& cfg, std::uint32_t niter);

/// Largest relative deviation of any element of a, b, c from `e`.
double stream_max_rel_error(const StreamArrays& s, const StreamExpected& e);

}  // namespace spmdbench::kernels
