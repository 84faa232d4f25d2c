#pragma once

#include <cstdint>

#include "spmdbench/exec/backend.hpp"
#include "spmdbench/exec/buffer.hpp"
#include "spmdbench/exec/types.hpp"

namespace spmdbench::kernels {

/// Seven-point Laplacian on an L^3 unit cube, row-major with i slowest, k fastest.
struct StencilConfig {
  std::uint32_t L = 64;
  double h = 0.0;
  double invhx2 = 0.0;
  double invhy2 = 0.0;
  double invhz2 = 0.0;
  double invhxyz2 = 0.0;
  exec::ElemType elem_type = exec::ElemType::f64;
  exec::LaunchConfig launch;
  std::uint32_t iterations = 100;

  std::uint64_t points() const noexcept { return std::uint64_t{L} * L * L; }
};

/// Builds a config with h = 1/(L-1), grid (ceil(L/block_x), L, L), block (block_x, 1, 1).
StencilConfig make_stencil_config(std::uint32_t L, exec::ElemType type, std::uint32_t block_x = 1024,
                                  std::uint32_t iterations = 100);

/// Throws InvalidArgument on L < 3, inconsistent coefficients, or a launch that
/// does not cover all L^3 points.
void validate(const StencilConfig& cfg);

/// u[i,j,k] = x^2 + y^2 + z^2 with x = i*h, y = j*h, z = k*h.
exec::Buffer stencil_init(const StencilConfig& cfg);

/// Applies the interior Laplacian u -> f. Boundary cells of f are left untouched.
double laplacian_kernel(exec::Buffer& f, const exec::Buffer& u, const StencilConfig& cfg,
                        const exec::Backend& backend);

/// max |f - 6| over interior points (the Laplacian of the quadratic field).
double stencil_verify(const exec::Buffer& f, const StencilConfig& cfg);

/// Harness tolerance for stencil_verify: the fixed per-type tolerance widened by
/// the binary rounding bound 4 * eps * max|u| * 12 / h^2 at large L.
double stencil_tolerance(const StencilConfig& cfg);

}  // namespace spmdbench::kernels
