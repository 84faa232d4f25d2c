#include "spmdbench/exec/types.hpp"

#include "spmdbench/errors.hpp"

namespace spmdbench::exec {

std::string_view to_string(ElemType t) noexcept { return t == ElemType::f32 ? "f32" : "f64"; }

ElemType parse_elem_type(std::string_view text) {
  if (text == "f32" || text == "float32") return ElemType::f32;
  if (text == "f64" || text == "float64") return ElemType::f64;
  throw InvalidArgument("unknown element type '" + std::string(text) + "' (expected f32 or f64)");
}

std::string to_string(const Dim3& d) {
  return std::to_string(d.x) + "x" + std::to_string(d.y) + "x" + std::to_string(d.z);
}

void LaunchConfig::validate() const {
  if (grid_dim.volume() == 0) throw InvalidArgument("grid dimensions must all be >= 1");
  if (block_dim.volume() == 0) throw InvalidArgument("block dimensions must all be >= 1");
}

LaunchConfig launch_1d(std::uint64_t n, std::uint32_t block) {
  if (block == 0) throw InvalidArgument("block size must be >= 1");
  const std::uint64_t blocks = (n + block - 1) / block;
  if (blocks == 0 || blocks > 0xffffffffULL) {
    throw InvalidArgument("1D launch of " + std::to_string(n) + " items is not representable");
  }
  return {Dim3{static_cast<std::uint32_t>(blocks), 1, 1}, Dim3{block, 1, 1}};
}

}  // namespace spmdbench::exec
