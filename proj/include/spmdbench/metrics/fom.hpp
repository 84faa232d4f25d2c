#pragma once

#include <cstdint>
#include <string_view>

namespace spmdbench::metrics {

/// GB = 1e9 bytes throughout.
inline constexpr double kBytesPerGB = 1e9;

struct StencilBytes {
  std::uint64_t fetch;
  std::uint64_t write;
};

/// Effective bytes moved by one Laplacian sweep: [L^3 - 8 - 12(L-2)] fetched,
/// (L-2)^3 written, each times the element size.
StencilBytes stencil_bytes(std::uint64_t L, std::uint64_t elem_size_bytes);

/// (fetch + write) / time in GB/s.
double stencil_bandwidth(std::uint64_t L, std::uint64_t elem_size_bytes, double kernel_time_s);

enum class StreamOp { copy, mul, add, triad, dot };

StreamOp parse_stream_op(std::string_view name);
std::string_view to_string(StreamOp op) noexcept;

/// Number of arrays touched: 2 for copy/mul/dot, 3 for add/triad.
int stream_array_count(StreamOp op) noexcept;

double stream_bandwidth(StreamOp op, std::uint64_t N, std::uint64_t elem_size_bytes,
                        double kernel_time_s);
double stream_bandwidth(std::string_view op, std::uint64_t N, std::uint64_t elem_size_bytes,
                        double kernel_time_s);

/// Nominal FLOPs of one fasten launch:
/// ops_wg = 28 ppwi + natlig (2 + 18 ppwi + natpro (10 + 30 ppwi)), total = ops_wg nposes / ppwi.
std::uint64_t bude_ops_per_workgroup(std::uint64_t ppwi, std::uint64_t natlig,
                                     std::uint64_t natpro);
std::uint64_t bude_total_ops(std::uint64_t ppwi, std::uint64_t natlig, std::uint64_t natpro,
                             std::uint64_t nposes);
double bude_gflops(std::uint64_t ppwi, std::uint64_t natlig, std::uint64_t natpro,
                   std::uint64_t nposes, double kernel_time_s);

}  // namespace spmdbench::metrics
