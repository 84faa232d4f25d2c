#include "spmdbench/kernels/stream.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>

#include "spmdbench/errors.hpp"
#include "spmdbench/exec/launch.hpp"

namespace spmdbench::kernels {

using exec::ArgKind;
using exec::ElemType;

void validate(const StreamConfig& cfg) {
  if (cfg.tbsize == 0 || !std::has_single_bit(cfg.tbsize)) {
    throw InvalidArgument("stream tbsize must be a power of two, got " +
                          std::to_string(cfg.tbsize));
  }
  if (cfg.N == 0 || cfg.N % cfg.tbsize != 0) {
    throw InvalidArgument("stream N=" + std::to_string(cfg.N) + " must be a positive multiple of tbsize=" +
                          std::to_string(cfg.tbsize));
  }
  if (cfg.dot_num_blocks == 0) throw InvalidArgument("stream dot_num_blocks must be >= 1");
}

StreamArrays stream_init(const StreamConfig& cfg) {
  validate(cfg);
  return {exec::Buffer("a", cfg.N, cfg.elem_type, cfg.initA),
          exec::Buffer("b", cfg.N, cfg.elem_type, cfg.initB),
          exec::Buffer("c", cfg.N, cfg.elem_type, cfg.initC)};
}

namespace {

std::size_t global_id(const exec::BlockContext& ctx, const exec::ThreadIdx& t) {
  return std::size_t{ctx.block_dim.x} * ctx.block_idx.x + t.x;
}

template <class T>
exec::Kernel make_copy() {
  return {"copy", {ArgKind::buffer, ArgKind::buffer}, 0,
          [](const exec::BlockContext& ctx, const exec::KernelArgs& args) {
            const auto a = args.buffer<T>(0);
            const auto c = args.buffer<T>(1);
            ctx.for_each_thread([&](exec::ThreadIdx t) {
              const auto i = global_id(ctx, t);
              c[i] = a[i];
            });
          }};
}

template <class T>
exec::Kernel make_mul() {
  return {"mul", {ArgKind::buffer, ArgKind::buffer, ArgKind::scalar}, 0,
          [](const exec::BlockContext& ctx, const exec::KernelArgs& args) {
            const auto b = args.buffer<T>(0);
            const auto c = args.buffer<T>(1);
            const T scalar = static_cast<T>(args.scalar(2));
            ctx.for_each_thread([&](exec::ThreadIdx t) {
              const auto i = global_id(ctx, t);
              b[i] = scalar * c[i];
            });
          }};
}

template <class T>
exec::Kernel make_add() {
  return {"add", {ArgKind::buffer, ArgKind::buffer, ArgKind::buffer}, 0,
          [](const exec::BlockContext& ctx, const exec::KernelArgs& args) {
            const auto a = args.buffer<T>(0);
            const auto b = args.buffer<T>(1);
            const auto c = args.buffer<T>(2);
            ctx.for_each_thread([&](exec::ThreadIdx t) {
              const auto i = global_id(ctx, t);
              c[i] = a[i] + b[i];
            });
          }};
}

template <class T>
exec::Kernel make_triad() {
  return {"triad", {ArgKind::buffer, ArgKind::buffer, ArgKind::buffer, ArgKind::scalar}, 0,
          [](const exec::BlockContext& ctx, const exec::KernelArgs& args) {
            const auto a = args.buffer<T>(0);
            const auto b = args.buffer<T>(1);
            const auto c = args.buffer<T>(2);
            const T scalar = static_cast<T>(args.scalar(3));
            ctx.for_each_thread([&](exec::ThreadIdx t) {
              const auto i = global_id(ctx, t);
              a[i] = b[i] + scalar * c[i];
            });
          }};
}

// Grid-stride accumulation into block-shared partials, then a halving tree
// reduction. Each for_each_thread call below is separated by a barrier.
template <class T>
exec::Kernel make_dot(std::uint32_t tbsize) {
  return {"dot",
          {ArgKind::buffer, ArgKind::buffer, ArgKind::buffer, ArgKind::integer},
          std::size_t{tbsize} * sizeof(T),
          [](const exec::BlockContext& ctx, const exec::KernelArgs& args) {
            const auto a = args.buffer<T>(0);
            const auto b = args.buffer<T>(1);
            const auto sums = args.buffer<T>(2);
            const auto size = static_cast<std::size_t>(args.integer(3));
            const auto tb_sum = ctx.shared<T>(ctx.block_dim.x);
            const std::size_t threads_in_grid = std::size_t{ctx.block_dim.x} * ctx.grid_dim.x;

            ctx.for_each_thread([&](exec::ThreadIdx t) {
              tb_sum[t.x] = T(0);
              for (std::size_t i = global_id(ctx, t); i < size; i += threads_in_grid) {
                tb_sum[t.x] += a[i] * b[i];
              }
            });
            for (std::uint32_t offset = ctx.block_dim.x / 2; offset > 0; offset /= 2) {
              ctx.for_each_thread([&](exec::ThreadIdx t) {
                if (t.x < offset) tb_sum[t.x] += tb_sum[t.x + offset];
              });
            }
            ctx.for_each_thread([&](exec::ThreadIdx t) {
              if (t.x == 0) sums[ctx.block_idx.x] = tb_sum[0];
            });
          }};
}

template <class T>
struct StreamKernels {
  exec::Kernel copy = make_copy<T>();
  exec::Kernel mul = make_mul<T>();
  exec::Kernel add = make_add<T>();
  exec::Kernel triad = make_triad<T>();
};

template <class T>
const StreamKernels<T>& kernels_for() {
  static const StreamKernels<T> k;
  return k;
}

exec::LaunchConfig array_launch(const StreamConfig& cfg) {
  return exec::launch_1d(cfg.N, cfg.tbsize);
}

template <class T>
DotResult dot_impl(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend) {
  const exec::Kernel kernel = make_dot<T>(cfg.tbsize);
  exec::Buffer sums("sums", cfg.dot_num_blocks, cfg.elem_type, 0.0);
  const exec::LaunchConfig lc{exec::Dim3{cfg.dot_num_blocks, 1, 1}, exec::Dim3{cfg.tbsize, 1, 1}};

  const auto t0 = std::chrono::steady_clock::now();
  const double device =
      exec::launch(kernel, lc, backend, {s.a, s.b, sums, static_cast<std::int64_t>(cfg.N)});
  T total = T(0);
  for (const T partial : sums.data<T>()) total += partial;
  const auto t1 = std::chrono::steady_clock::now();
  return {static_cast<double>(total), std::chrono::duration<double>(t1 - t0).count(), device};
}

template <class T>
StreamExpected expected_impl(const StreamConfig& cfg, std::uint32_t niter) {
  T a = static_cast<T>(cfg.initA);
  T b = static_cast<T>(cfg.initB);
  T c = static_cast<T>(cfg.initC);
  const T scalar = static_cast<T>(cfg.scalar);
  for (std::uint32_t it = 0; it < niter; ++it) {
    c = a;
    b = scalar * c;
    c = a + b;
    a = b + scalar * c;
  }
  const double n = static_cast<double>(cfg.N);
  return {a, b, c, n * static_cast<double>(a) * static_cast<double>(b)};
}

template <class T>
double max_rel_error(const exec::Buffer& buf, double expected) {
  double worst = 0.0;
  const double scale = expected != 0.0 ? std::abs(expected) : 1.0;
  for (const T v : buf.data<T>()) {
    worst = std::max(worst, std::abs(static_cast<double>(v) - expected) / scale);
  }
  return worst;
}

}  // namespace

double stream_copy(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend) {
  const auto& k = cfg.elem_type == ElemType::f32 ? kernels_for<float>().copy
                                                 : kernels_for<double>().copy;
  return exec::launch(k, array_launch(cfg), backend, {s.a, s.c});
}

double stream_mul(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend) {
  const auto& k =
      cfg.elem_type == ElemType::f32 ? kernels_for<float>().mul : kernels_for<double>().mul;
  return exec::launch(k, array_launch(cfg), backend, {s.b, s.c, cfg.scalar});
}

double stream_add(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend) {
  const auto& k =
      cfg.elem_type == ElemType::f32 ? kernels_for<float>().add : kernels_for<double>().add;
  return exec::launch(k, array_launch(cfg), backend, {s.a, s.b, s.c});
}

double stream_triad(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend) {
  const auto& k = cfg.elem_type == ElemType::f32 ? kernels_for<float>().triad
                                                 : kernels_for<double>().triad;
  return exec::launch(k, array_launch(cfg), backend, {s.a, s.b, s.c, cfg.scalar});
}

DotResult stream_dot(StreamArrays& s, const StreamConfig& cfg, const exec::Backend& backend) {
  validate(cfg);
  return cfg.elem_type == ElemType::f32 ? dot_impl<float>(s, cfg, backend)
                                        : dot_impl<double>(s, cfg, backend);
}

StreamResult stream_kernels(StreamArrays& s, const StreamConfig& cfg,
                            const exec::Backend& backend) {
  validate(cfg);
  if (s.a.size() != cfg.N || s.b.size() != cfg.N || s.c.size() != cfg.N) {
    throw InvalidArgument("stream arrays must hold N elements");
  }
  StreamResult r;
  r.times.reserve(cfg.iterations);
  for (std::uint32_t it = 0; it < cfg.iterations; ++it) {
    StreamTimes t;
    t.copy = stream_copy(s, cfg, backend);
    t.mul = stream_mul(s, cfg, backend);
    t.add = stream_add(s, cfg, backend);
    t.triad = stream_triad(s, cfg, backend);
    const DotResult d = stream_dot(s, cfg, backend);
    t.dot = d.seconds;
    t.dot_device = d.device_seconds;
    r.dot = d.value;
    r.times.push_back(t);
  }
  return r;
}

StreamResult stream_kernels(const StreamConfig& cfg, const exec::Backend& backend) {
  StreamArrays s = stream_init(cfg);
  return stream_kernels(s, cfg, backend);
}

StreamExpected stream_expected(const StreamConfig& cfg, std::uint32_t niter) {
  return cfg.elem_type == ElemType::f32 ? expected_impl<float>(cfg, niter)
                                        : expected_impl<double>(cfg, niter);
}

double stream_max_rel_error(const StreamArrays& s, const StreamExpected& e) {
  const bool single = s.a.elem_type() == ElemType::f32;
  const auto one = [&](const exec::Buffer& b, double v) {
    return single ? max_rel_error<float>(b, v) : max_rel_error<double>(b, v);
  };
  return std::max({one(s.a, e.a), one(s.b, e.b), one(s.c, e.c)});
}

}  // namespace spmdbench::kernels
