#include "spmdbench/kernels/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spmdbench/errors.hpp"
#include "spmdbench/exec/launch.hpp"

namespace spmdbench::kernels {

using exec::ElemType;

StencilConfig make_stencil_config(std::uint32_t L, ElemType type, std::uint32_t block_x,
                                  std::uint32_t iterations) {
  if (L < 3) throw InvalidArgument("stencil requires L >= 3, got " + std::to_string(L));
  if (block_x == 0) throw InvalidArgument("stencil block size must be >= 1");
  StencilConfig cfg;
  cfg.L = L;
  cfg.h = 1.0 / static_cast<double>(L - 1);
  cfg.invhx2 = 1.0 / (cfg.h * cfg.h);
  cfg.invhy2 = cfg.invhx2;
  cfg.invhz2 = cfg.invhx2;
  cfg.invhxyz2 = -2.0 * (cfg.invhx2 + cfg.invhy2 + cfg.invhz2);
  cfg.elem_type = type;
  cfg.launch = {exec::Dim3{(L + block_x - 1) / block_x, L, L}, exec::Dim3{block_x, 1, 1}};
  cfg.iterations = iterations;
  return cfg;
}

void validate(const StencilConfig& cfg) {
  if (cfg.L < 3) throw InvalidArgument("stencil requires L >= 3");
  if (cfg.invhxyz2 != -2.0 * (cfg.invhx2 + cfg.invhy2 + cfg.invhz2)) {
    throw InvalidArgument("stencil center coefficient must equal -2*(invhx2+invhy2+invhz2)");
  }
  cfg.launch.validate();
  const auto& g = cfg.launch.grid_dim;
  const auto& b = cfg.launch.block_dim;
  if (std::uint64_t{g.x} * b.x < cfg.L || std::uint64_t{g.y} * b.y < cfg.L ||
      std::uint64_t{g.z} * b.z < cfg.L) {
    throw InvalidArgument("stencil launch " + exec::to_string(g) + " blocks of " +
                          exec::to_string(b) + " does not cover L=" + std::to_string(cfg.L));
  }
}

namespace {

template <class T>
void init_field(exec::Buffer& u, const StencilConfig& cfg) {
  auto d = u.data<T>();
  const std::uint32_t L = cfg.L;
  for (std::uint32_t i = 0; i < L; ++i) {
    const double x = i * cfg.h;
    for (std::uint32_t j = 0; j < L; ++j) {
      const double y = j * cfg.h;
      for (std::uint32_t k = 0; k < L; ++k) {
        const double z = k * cfg.h;
        d[(std::size_t{i} * L + j) * L + k] = static_cast<T>(x * x + y * y + z * z);
      }
    }
  }
}

template <class T>
exec::Kernel make_laplacian() {
  exec::Kernel k;
  k.name = "laplacian";
  using exec::ArgKind;
  // f, u, nx, ny, nz, invhx2, invhy2, invhz2, invhxyz2
  k.params = {ArgKind::buffer,  ArgKind::buffer, ArgKind::integer,
              ArgKind::integer, ArgKind::integer, ArgKind::scalar,
              ArgKind::scalar,  ArgKind::scalar,  ArgKind::scalar};
  k.body = [](const exec::BlockContext& ctx, const exec::KernelArgs& args) {
    const auto f = args.buffer<T>(0);
    const auto u = args.buffer<T>(1);
    const auto nx = static_cast<std::uint64_t>(args.integer(2));
    const auto ny = static_cast<std::uint64_t>(args.integer(3));
    const auto nz = static_cast<std::uint64_t>(args.integer(4));
    const T invhx2 = static_cast<T>(args.scalar(5));
    const T invhy2 = static_cast<T>(args.scalar(6));
    const T invhz2 = static_cast<T>(args.scalar(7));
    const T invhxyz2 = static_cast<T>(args.scalar(8));
    const auto at = [ny, nz](std::uint64_t i, std::uint64_t j, std::uint64_t k) {
      return (i * ny + j) * nz + k;
    };
    ctx.for_each_thread([&](exec::ThreadIdx t) {
      const std::uint64_t k = t.x + std::uint64_t{ctx.block_idx.x} * ctx.block_dim.x;
      const std::uint64_t j = t.y + std::uint64_t{ctx.block_idx.y} * ctx.block_dim.y;
      const std::uint64_t i = t.z + std::uint64_t{ctx.block_idx.z} * ctx.block_dim.z;
      if (i > 0 && i < nx - 1 && j > 0 && j < ny - 1 && k > 0 && k < nz - 1) {
        f[at(i, j, k)] = u[at(i, j, k)] * invhxyz2 +
                         (u[at(i - 1, j, k)] + u[at(i + 1, j, k)]) * invhx2 +
                         (u[at(i, j - 1, k)] + u[at(i, j + 1, k)]) * invhy2 +
                         (u[at(i, j, k - 1)] + u[at(i, j, k + 1)]) * invhz2;
      }
    });
  };
  return k;
}

template <class T>
double max_interior_error(const exec::Buffer& f, std::uint32_t L) {
  const auto d = f.data<T>();
  double err = 0.0;
  for (std::uint32_t i = 1; i + 1 < L; ++i)
    for (std::uint32_t j = 1; j + 1 < L; ++j)
      for (std::uint32_t k = 1; k + 1 < L; ++k) {
        const double v = static_cast<double>(d[(std::size_t{i} * L + j) * L + k]);
        err = std::max(err, std::abs(v - 6.0));
      }
  return err;
}

}  // namespace

exec::Buffer stencil_init(const StencilConfig& cfg) {
  validate(cfg);
  exec::Buffer u("u", cfg.points(), cfg.elem_type, 0.0);
  if (cfg.elem_type == ElemType::f32) {
    init_field<float>(u, cfg);
  } else {
    init_field<double>(u, cfg);
  }
  return u;
}

double laplacian_kernel(exec::Buffer& f, const exec::Buffer& u, const StencilConfig& cfg,
                        const exec::Backend& backend) {
  validate(cfg);
  if (f.size() != cfg.points() || u.size() != cfg.points()) {
    throw InvalidArgument("stencil buffers must hold L^3 = " + std::to_string(cfg.points()) +
                          " elements");
  }
  if (f.elem_type() != cfg.elem_type || u.elem_type() != cfg.elem_type) {
    throw InvalidArgument("stencil buffer element type does not match config");
  }
  static const exec::Kernel k32 = make_laplacian<float>();
  static const exec::Kernel k64 = make_laplacian<double>();
  const auto L = static_cast<std::int64_t>(cfg.L);
  auto& u_mut = const_cast<exec::Buffer&>(u);
  return exec::launch(cfg.elem_type == ElemType::f32 ? k32 : k64, cfg.launch, backend,
                      {f, u_mut, L, L, L, cfg.invhx2, cfg.invhy2, cfg.invhz2, cfg.invhxyz2});
}

double stencil_verify(const exec::Buffer& f, const StencilConfig& cfg) {
  if (f.size() != cfg.points()) throw InvalidArgument("stencil output must hold L^3 elements");
  return cfg.elem_type == ElemType::f32 ? max_interior_error<float>(f, cfg.L)
                                        : max_interior_error<double>(f, cfg.L);
}

double stencil_tolerance(const StencilConfig& cfg) {
  const bool single = cfg.elem_type == ElemType::f32;
  const double base = single ? 1e-2 : 1e-8;
  const double eps = single ? std::numeric_limits<float>::epsilon()
                            : std::numeric_limits<double>::epsilon();
  const double bound = 4.0 * eps * 3.0 * 12.0 * cfg.invhx2;
  return std::max(base, bound);
}

}  // namespace spmdbench::kernels
