#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "spmdbench/errors.hpp"
#include "spmdbench/exec/backend.hpp"
#include "spmdbench/exec/buffer.hpp"
#include "spmdbench/exec/types.hpp"

namespace spmdbench::exec {

/// View of a buffer handed to kernel bodies. Indexing is bounds-checked when the
/// launch runs on the reference backend.
template <class T>
class DeviceSpan {
 public:
  DeviceSpan() = default;
  DeviceSpan(std::span<T> data, const std::string* name, bool checked)
      : data_(data.data()), size_(data.size()), name_(name), checked_(checked) {}

  std::size_t size() const noexcept { return size_; }
  T* data() const noexcept { return data_; }

  T& operator[](std::size_t i) const {
    if (checked_ && i >= size_) throw IndexError(*name_, i, size_);
    return data_[i];
  }

  /// Atomic fetch-add; returns the value observed before the addition.
  T atomic_add(std::size_t i, T delta) const {
    if (i >= size_) throw IndexError(*name_, i, size_);
    return std::atomic_ref<T>(data_[i]).fetch_add(delta, std::memory_order_relaxed);
  }

 private:
  T* data_ = nullptr;
  std::size_t size_ = 0;
  const std::string* name_ = nullptr;
  bool checked_ = false;
};

/// Host-side atomic add on a whole buffer.
double atomic_add(Buffer& buf, std::size_t index, double delta);

enum class ArgKind { buffer, scalar, integer };

using KernelArg = std::variant<std::reference_wrapper<Buffer>, double, std::int64_t>;

/// Bound argument list as seen from a kernel body.
class KernelArgs {
 public:
  KernelArgs(std::span<const KernelArg> args, bool checked) : args_(args), checked_(checked) {}

  template <class T>
  DeviceSpan<T> buffer(std::size_t slot) const {
    Buffer& b = std::get<std::reference_wrapper<Buffer>>(args_[slot]).get();
    return DeviceSpan<T>(b.data<T>(), &b.name(), checked_);
  }

  double scalar(std::size_t slot) const { return std::get<double>(args_[slot]); }
  std::int64_t integer(std::size_t slot) const { return std::get<std::int64_t>(args_[slot]); }

 private:
  std::span<const KernelArg> args_;
  bool checked_;
};

struct ThreadIdx {
  std::uint32_t x;
  std::uint32_t y;
  std::uint32_t z;
  std::uint32_t linear;
};

/// Per-block execution state. A kernel body runs once per block and expresses
/// its threads through for_each_thread; every for_each_thread call is one
/// barrier segment: all threads finish it before the next one starts.
class BlockContext {
 public:
  BlockContext(Dim3 block_idx, Dim3 block_dim, Dim3 grid_dim, std::span<std::byte> shared)
      : block_idx(block_idx), block_dim(block_dim), grid_dim(grid_dim), shared_(shared) {}

  const Dim3 block_idx;
  const Dim3 block_dim;
  const Dim3 grid_dim;

  std::uint32_t threads() const noexcept { return static_cast<std::uint32_t>(block_dim.volume()); }

  /// Block-shared scratch of `count` elements. Contents are not cleared between
  /// blocks.
  template <class T>
  std::span<T> shared(std::size_t count) const {
    if (count * sizeof(T) > shared_.size()) {
      throw InvalidArgument("shared scratch request of " + std::to_string(count * sizeof(T)) +
                            " bytes exceeds kernel allocation of " +
                            std::to_string(shared_.size()));
    }
    return {reinterpret_cast<T*>(shared_.data()), count};
  }

  template <class F>
  void for_each_thread(F&& f) const {
    std::uint32_t linear = 0;
    for (std::uint32_t z = 0; z < block_dim.z; ++z)
      for (std::uint32_t y = 0; y < block_dim.y; ++y)
        for (std::uint32_t x = 0; x < block_dim.x; ++x) f(ThreadIdx{x, y, z, linear++});
  }

 private:
  std::span<std::byte> shared_;
};

struct Kernel {
  std::string name;
  std::vector<ArgKind> params;
  std::size_t shared_bytes = 0;
  std::function<void(const BlockContext&, const KernelArgs&)> body;
};

struct LaunchOptions {
  /// Explicit block execution order (a permutation of linearized block ids).
  /// Honoured by the reference backend only.
  std::optional<std::vector<std::uint64_t>> block_order;
};

/// Runs `kernel` over the whole grid and returns the elapsed wall-clock seconds
/// of block execution. Throws InvalidArgument on arity/kind mismatch.
double launch(const Kernel& kernel, const LaunchConfig& cfg, const Backend& backend,
              std::span<const KernelArg> args, const LaunchOptions& options = {});

inline double launch(const Kernel& kernel, const LaunchConfig& cfg, const Backend& backend,
                     std::initializer_list<KernelArg> args, const LaunchOptions& options = {}) {
  return launch(kernel, cfg, backend, std::span<const KernelArg>(args.begin(), args.size()),
                options);
}

}  // namespace spmdbench::exec
