#include "spmdbench/exec/launch.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>

namespace spmdbench::exec {

namespace {

std::string_view kind_name(ArgKind k) {
  switch (k) {
    case ArgKind::buffer: return "buffer";
    case ArgKind::scalar: return "scalar";
    case ArgKind::integer: return "integer";
  }
  return "?";
}

bool matches(ArgKind k, const KernelArg& a) {
  switch (k) {
    case ArgKind::buffer: return std::holds_alternative<std::reference_wrapper<Buffer>>(a);
    case ArgKind::scalar: return std::holds_alternative<double>(a);
    case ArgKind::integer: return std::holds_alternative<std::int64_t>(a);
  }
  return false;
}

void check_args(const Kernel& kernel, std::span<const KernelArg> args) {
  if (args.size() != kernel.params.size()) {
    throw InvalidArgument("kernel '" + kernel.name + "' expects " +
                          std::to_string(kernel.params.size()) + " arguments, got " +
                          std::to_string(args.size()));
  }
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!matches(kernel.params[i], args[i])) {
      throw InvalidArgument("kernel '" + kernel.name + "' argument " + std::to_string(i) +
                            " must be a " + std::string(kind_name(kernel.params[i])));
    }
  }
}

Dim3 delinearize(std::uint64_t b, const Dim3& grid) {
  const auto x = static_cast<std::uint32_t>(b % grid.x);
  const auto rest = b / grid.x;
  return {x, static_cast<std::uint32_t>(rest % grid.y), static_cast<std::uint32_t>(rest / grid.y)};
}

}  // namespace

double atomic_add(Buffer& buf, std::size_t index, double delta) {
  if (index >= buf.size()) throw IndexError(buf.name(), index, buf.size());
  if (buf.elem_type() == ElemType::f32) {
    auto d = buf.data<float>();
    return std::atomic_ref<float>(d[index]).fetch_add(static_cast<float>(delta));
  }
  auto d = buf.data<double>();
  return std::atomic_ref<double>(d[index]).fetch_add(delta);
}

double launch(const Kernel& kernel, const LaunchConfig& cfg, const Backend& backend,
              std::span<const KernelArg> args, const LaunchOptions& options) {
  cfg.validate();
  check_args(kernel, args);
  if (!kernel.body) throw InvalidArgument("kernel '" + kernel.name + "' has no body");

  const std::uint64_t nblocks = cfg.grid_dim.volume();
  const std::vector<std::uint64_t>* order = nullptr;
  if (options.block_order && backend.is_reference()) {
    order = &*options.block_order;
    std::vector<std::uint64_t> sorted = *order;
    std::sort(sorted.begin(), sorted.end());
    bool perm = sorted.size() == nblocks;
    for (std::uint64_t i = 0; perm && i < nblocks; ++i) perm = sorted[i] == i;
    if (!perm) throw InvalidArgument("block_order must be a permutation of the grid's blocks");
  }

  const KernelArgs bound(args, backend.is_reference());
  // One scratch region per worker, reused across the blocks that worker runs.
  const std::size_t words = (kernel.shared_bytes + sizeof(std::max_align_t) - 1) /
                            sizeof(std::max_align_t);
  std::vector<std::vector<std::max_align_t>> scratch(backend.worker_count(),
                                                     std::vector<std::max_align_t>(words));

  const std::function<void(std::uint64_t, unsigned)> run_block = [&](std::uint64_t b,
                                                                     unsigned worker) {
    const std::uint64_t id = order ? (*order)[b] : b;
    std::span<std::byte> shared(reinterpret_cast<std::byte*>(scratch[worker].data()),
                                kernel.shared_bytes);
    const BlockContext ctx(delinearize(id, cfg.grid_dim), cfg.block_dim, cfg.grid_dim, shared);
    kernel.body(ctx, bound);
  };

  const auto t0 = std::chrono::steady_clock::now();
  backend.run_blocks(nblocks, run_block);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace spmdbench::exec
