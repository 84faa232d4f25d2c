#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>

namespace spmdbench::exec {

enum class BackendKind { reference_sequential, parallel_cpu };

std::string_view to_string(BackendKind k) noexcept;

namespace detail {
class WorkerPool;
}

/// Number of hardware execution units, at least 1.
unsigned default_worker_count() noexcept;

/// Execution substrate for launches.
///
/// The reference backend runs blocks one after another on the calling thread in
/// ascending linearized order. The parallel backend hands whole blocks to a
/// fixed pool of worker threads; threads inside a block always run sequentially
/// on one worker. Backend values are cheap to copy and share one pool.
class Backend {
 public:
  static Backend reference();
  /// `workers == 0` selects default_worker_count().
  static Backend parallel(unsigned workers = 0);

  BackendKind kind() const noexcept { return kind_; }
  unsigned worker_count() const noexcept { return workers_; }
  bool is_reference() const noexcept { return kind_ == BackendKind::reference_sequential; }

  /// Runs body(block, worker) for every block in [0, nblocks). Blocks until all
  /// complete; the first exception thrown by any block is rethrown here.
  void run_blocks(std::uint64_t nblocks,
                  const std::function<void(std::uint64_t block, unsigned worker)>& body) const;

 private:
  Backend(BackendKind kind, unsigned workers, std::shared_ptr<detail::WorkerPool> pool);

  BackendKind kind_;
  unsigned workers_;
  std::shared_ptr<detail::WorkerPool> pool_;
};

}  // namespace spmdbench::exec
