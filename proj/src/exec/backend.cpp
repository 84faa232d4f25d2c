#include "spmdbench/exec/backend.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <system_error>
#include <thread>
#include <vector>

#include "spmdbench/errors.hpp"

namespace spmdbench::exec {

std::string_view to_string(BackendKind k) noexcept {
  return k == BackendKind::reference_sequential ? "ref" : "parallel";
}

unsigned default_worker_count() noexcept {
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace detail {

// Persistent pool; each job is a block range pulled dynamically by workers.
class WorkerPool {
 public:
  explicit WorkerPool(unsigned workers) {
    threads_.reserve(workers);
    try {
      for (unsigned w = 0; w < workers; ++w) threads_.emplace_back([this, w] { worker_loop(w); });
    } catch (const std::system_error& e) {
      shutdown();
      throw EnvironmentError(std::string("failed to create worker pool: ") + e.what());
    }
  }

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  ~WorkerPool() { shutdown(); }

  void run(std::uint64_t nblocks, const std::function<void(std::uint64_t, unsigned)>& body) {
    std::lock_guard launch_lock(launch_mutex_);
    {
      std::lock_guard lk(mutex_);
      body_ = &body;
      nblocks_ = nblocks;
      next_.store(0, std::memory_order_relaxed);
      pending_ = static_cast<unsigned>(threads_.size());
      error_ = nullptr;
      ++generation_;
    }
    start_cv_.notify_all();
    std::unique_lock lk(mutex_);
    done_cv_.wait(lk, [this] { return pending_ == 0; });
    body_ = nullptr;
    if (error_) std::rethrow_exception(error_);
  }

 private:
  void worker_loop(unsigned worker) {
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(std::uint64_t, unsigned)>* body = nullptr;
      std::uint64_t nblocks = 0;
      {
        std::unique_lock lk(mutex_);
        start_cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        body = body_;
        nblocks = nblocks_;
      }
      try {
        for (;;) {
          const std::uint64_t b = next_.fetch_add(1, std::memory_order_relaxed);
          if (b >= nblocks) break;
          (*body)(b, worker);
        }
      } catch (...) {
        std::lock_guard lk(mutex_);
        if (!error_) error_ = std::current_exception();
        next_.store(nblocks, std::memory_order_relaxed);
      }
      {
        std::lock_guard lk(mutex_);
        if (--pending_ == 0) done_cv_.notify_one();
      }
    }
  }

  void shutdown() {
    {
      std::lock_guard lk(mutex_);
      stop_ = true;
    }
    start_cv_.notify_all();
    for (auto& t : threads_)
      if (t.joinable()) t.join();
  }

  std::vector<std::thread> threads_;
  std::mutex launch_mutex_;
  std::mutex mutex_;
  std::condition_variable start_cv_;
  std::condition_variable done_cv_;
  const std::function<void(std::uint64_t, unsigned)>* body_ = nullptr;
  std::uint64_t nblocks_ = 0;
  std::atomic<std::uint64_t> next_{0};
  unsigned pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
  std::exception_ptr error_;
};

}  // namespace detail

Backend::Backend(BackendKind kind, unsigned workers, std::shared_ptr<detail::WorkerPool> pool)
    : kind_(kind), workers_(workers), pool_(std::move(pool)) {}

Backend Backend::reference() { return Backend(BackendKind::reference_sequential, 1, nullptr); }

Backend Backend::parallel(unsigned workers) {
  if (workers == 0) workers = default_worker_count();
  return Backend(BackendKind::parallel_cpu, workers,
                 std::make_shared<detail::WorkerPool>(workers));
}

void Backend::run_blocks(std::uint64_t nblocks,
                         const std::function<void(std::uint64_t, unsigned)>& body) const {
  if (nblocks == 0) return;
  if (!pool_) {
    for (std::uint64_t b = 0; b < nblocks; ++b) body(b, 0);
    return;
  }
  pool_->run(nblocks, body);
}

}  // namespace spmdbench::exec
