#include "spmdbench/metrics/fom.hpp"

#include <string>

#include "spmdbench/errors.hpp"

namespace spmdbench::metrics {

namespace {

void require_positive_time(double t) {
  if (!(t > 0.0)) throw InvalidArgument("kernel time must be > 0 seconds");
}

}  // namespace

StencilBytes stencil_bytes(std::uint64_t L, std::uint64_t elem_size_bytes) {
  if (L < 3) throw InvalidArgument("stencil bandwidth requires L >= 3");
  const std::uint64_t fetch = L * L * L - 8 - 12 * (L - 2);
  const std::uint64_t write = (L - 2) * (L - 2) * (L - 2);
  return {fetch * elem_size_bytes, write * elem_size_bytes};
}

double stencil_bandwidth(std::uint64_t L, std::uint64_t elem_size_bytes, double kernel_time_s) {
  require_positive_time(kernel_time_s);
  const StencilBytes b = stencil_bytes(L, elem_size_bytes);
  return static_cast<double>(b.fetch + b.write) / kernel_time_s / kBytesPerGB;
}

StreamOp parse_stream_op(std::string_view name) {
  if (name == "copy") return StreamOp::copy;
  if (name == "mul") return StreamOp::mul;
  if (name == "add") return StreamOp::add;
  if (name == "triad") return StreamOp::triad;
  if (name == "dot") return StreamOp::dot;
  throw InvalidArgument("unknown stream op '" + std::string(name) + "'");
}

std::string_view to_string(StreamOp op) noexcept {
  switch (op) {
    case StreamOp::copy: return "copy";
    case StreamOp::mul: return "mul";
    case StreamOp::add: return "add";
    case StreamOp::triad: return "triad";
    case StreamOp::dot: return "dot";
  }
  return "?";
}

int stream_array_count(StreamOp op) noexcept {
  return op == StreamOp::add || op == StreamOp::triad ? 3 : 2;
}

double stream_bandwidth(StreamOp op, std::uint64_t N, std::uint64_t elem_size_bytes,
                        double kernel_time_s) {
  require_positive_time(kernel_time_s);
  const double bytes = static_cast<double>(stream_array_count(op)) *
                       static_cast<double>(elem_size_bytes) * static_cast<double>(N);
  return bytes / kernel_time_s / kBytesPerGB;
}

double stream_bandwidth(std::string_view op, std::uint64_t N, std::uint64_t elem_size_bytes,
                        double kernel_time_s) {
  return stream_bandwidth(parse_stream_op(op), N, elem_size_bytes, kernel_time_s);
}

std::uint64_t bude_ops_per_workgroup(std::uint64_t ppwi, std::uint64_t natlig,
                                     std::uint64_t natpro) {
  return 28 * ppwi + natlig * (2 + 18 * ppwi + natpro * (10 + 30 * ppwi));
}

std::uint64_t bude_total_ops(std::uint64_t ppwi, std::uint64_t natlig, std::uint64_t natpro,
                             std::uint64_t nposes) {
  if (ppwi == 0 || nposes % ppwi != 0) {
    throw InvalidArgument("bude nposes must be divisible by ppwi");
  }
  return bude_ops_per_workgroup(ppwi, natlig, natpro) * (nposes / ppwi);
}

double bude_gflops(std::uint64_t ppwi, std::uint64_t natlig, std::uint64_t natpro,
                   std::uint64_t nposes, double kernel_time_s) {
  const std::uint64_t total = bude_total_ops(ppwi, natlig, natpro, nposes);
  require_positive_time(kernel_time_s);
  return static_cast<double>(total) / kernel_time_s * 1e-9;
}

}  // namespace spmdbench::metrics
