#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "spmdbench/errors.hpp"
#include "spmdbench/exec/backend.hpp"
#include "spmdbench/exec/buffer.hpp"
#include "spmdbench/exec/launch.hpp"

namespace ex = spmdbench::exec;
using spmdbench::IndexError;
using spmdbench::InvalidArgument;

namespace {

ex::Kernel fill_one() {
  ex::Kernel k;
  k.name = "fill_one";
  k.params = {ex::ArgKind::buffer, ex::ArgKind::integer};
  k.body = [](const ex::BlockContext& ctx, const ex::KernelArgs& args) {
    auto out = args.buffer<double>(0);
    const auto n = static_cast<std::uint64_t>(args.integer(1));
    ctx.for_each_thread([&](ex::ThreadIdx t) {
      const std::uint64_t i = std::uint64_t{ctx.block_idx.x} * ctx.block_dim.x + t.x;
      if (i < n) out[i] = 1.0;
    });
  };
  return k;
}

// Records the order in which blocks start.
ex::Kernel record_block() {
  ex::Kernel k;
  k.name = "record";
  k.params = {ex::ArgKind::buffer};
  k.body = [](const ex::BlockContext& ctx, const ex::KernelArgs& args) {
    auto log = args.buffer<double>(0);
    const double slot = log.atomic_add(log.size() - 1, 1.0);
    log[static_cast<std::size_t>(slot)] = ctx.block_idx.x;
  };
  return k;
}

}  // namespace

TEST(Buffer, FillSemantics) {
  const auto b = ex::create_buffer(4, ex::ElemType::f64, 0.0);
  EXPECT_EQ(b.to_vector(), std::vector<double>(4, 0.0));

  const auto f = ex::create_buffer(3, ex::ElemType::f32, 0.1);
  for (float v : f.data<float>()) EXPECT_EQ(v, 0.1f);
  EXPECT_EQ(f.get(2), static_cast<double>(0.1f));
}

TEST(Buffer, LargeLength) {
  const auto b = ex::create_buffer(std::int64_t{1} << 25, ex::ElemType::f64, 0.1);
  EXPECT_EQ(b.size(), 33554432u);
}

TEST(Buffer, RejectsNonPositiveLength) {
  EXPECT_THROW(ex::create_buffer(0, ex::ElemType::f64, 0.0), InvalidArgument);
  EXPECT_THROW(ex::create_buffer(-3, ex::ElemType::f32, 0.0), InvalidArgument);
}

TEST(Buffer, TypedAccessMismatchThrows) {
  auto b = ex::create_buffer(2, ex::ElemType::f32, 0.0);
  EXPECT_THROW(b.data<double>(), InvalidArgument);
  EXPECT_THROW(b.get(2), IndexError);
}

TEST(Launch, FillOneCoversGrid) {
  auto buf = ex::create_buffer(1024, ex::ElemType::f64, 0.0, "out");
  const ex::LaunchConfig cfg{{4, 1, 1}, {256, 1, 1}};
  const double t = ex::launch(fill_one(), cfg, ex::Backend::reference(),
                              {std::ref(buf), std::int64_t{1024}});
  EXPECT_GE(t, 0.0);
  for (double v : buf.to_vector()) ASSERT_EQ(v, 1.0);
}

TEST(Launch, EmptyKernelIsNoOp) {
  ex::Kernel k{"empty", {ex::ArgKind::buffer}, 0, [](const ex::BlockContext&, const ex::KernelArgs&) {}};
  auto buf = ex::create_buffer(8, ex::ElemType::f64, 3.0);
  const double t = ex::launch(k, {{1, 1, 1}, {1, 1, 1}}, ex::Backend::reference(), {std::ref(buf)});
  EXPECT_GE(t, 0.0);
  EXPECT_EQ(buf.to_vector(), std::vector<double>(8, 3.0));
}

TEST(Launch, ReferenceAndParallelAgree) {
  auto a = ex::create_buffer(1000, ex::ElemType::f64, 0.0);
  auto b = ex::create_buffer(1000, ex::ElemType::f64, 0.0);
  const auto cfg = ex::launch_1d(1000, 64);
  ex::launch(fill_one(), cfg, ex::Backend::reference(), {std::ref(a), std::int64_t{1000}});
  ex::launch(fill_one(), cfg, ex::Backend::parallel(4), {std::ref(b), std::int64_t{1000}});
  EXPECT_EQ(a.to_vector(), b.to_vector());
}

TEST(Launch, ReferenceRunsBlocksInAscendingOrder) {
  const std::uint32_t nblocks = 16;
  auto log = ex::create_buffer(nblocks + 1, ex::ElemType::f64, 0.0, "log");
  ex::launch(record_block(), {{nblocks, 1, 1}, {1, 1, 1}}, ex::Backend::reference(), {std::ref(log)});
  for (std::uint32_t i = 0; i < nblocks; ++i) EXPECT_EQ(log.get(i), i);
}

TEST(Launch, ExplicitBlockOrderIsHonoured) {
  const std::uint32_t nblocks = 16;
  std::vector<std::uint64_t> order(nblocks);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 rng(7);
  std::shuffle(order.begin(), order.end(), rng);

  auto log = ex::create_buffer(nblocks + 1, ex::ElemType::f64, 0.0, "log");
  ex::LaunchOptions opts;
  opts.block_order = order;
  ex::launch(record_block(), {{nblocks, 1, 1}, {1, 1, 1}}, ex::Backend::reference(),
             {std::ref(log)}, opts);
  for (std::uint32_t i = 0; i < nblocks; ++i) EXPECT_EQ(log.get(i), order[i]);
}

TEST(Launch, BlockOrderMustBePermutation) {
  auto log = ex::create_buffer(5, ex::ElemType::f64, 0.0);
  ex::LaunchOptions opts;
  opts.block_order = std::vector<std::uint64_t>{0, 1, 1, 3};
  EXPECT_THROW(ex::launch(record_block(), {{4, 1, 1}, {1, 1, 1}}, ex::Backend::reference(),
                          {std::ref(log)}, opts),
               InvalidArgument);
}

TEST(Launch, ResultIndependentOfBlockOrder) {
  auto a = ex::create_buffer(512, ex::ElemType::f64, 0.0);
  auto b = ex::create_buffer(512, ex::ElemType::f64, 0.0);
  const auto cfg = ex::launch_1d(512, 32);
  std::vector<std::uint64_t> reversed(cfg.grid_dim.volume());
  std::iota(reversed.rbegin(), reversed.rend(), 0);
  ex::LaunchOptions opts;
  opts.block_order = reversed;
  ex::launch(fill_one(), cfg, ex::Backend::reference(), {std::ref(a), std::int64_t{500}});
  ex::launch(fill_one(), cfg, ex::Backend::reference(), {std::ref(b), std::int64_t{500}}, opts);
  EXPECT_EQ(a.to_vector(), b.to_vector());
}

TEST(Launch, ArityMismatchThrows) {
  auto buf = ex::create_buffer(4, ex::ElemType::f64, 0.0);
  EXPECT_THROW(ex::launch(fill_one(), ex::launch_1d(4, 4), ex::Backend::reference(), {std::ref(buf)}),
               InvalidArgument);
  EXPECT_THROW(ex::launch(fill_one(), ex::launch_1d(4, 4), ex::Backend::reference(),
                          {std::ref(buf), 4.0}),
               InvalidArgument);
}

TEST(Launch, ZeroGeometryThrows) {
  auto buf = ex::create_buffer(4, ex::ElemType::f64, 0.0);
  EXPECT_THROW(ex::launch(fill_one(), {{0, 1, 1}, {4, 1, 1}}, ex::Backend::reference(),
                          {std::ref(buf), std::int64_t{4}}),
               InvalidArgument);
}

TEST(Launch, OutOfRangeAccessNamesBuffer) {
  auto buf = ex::create_buffer(10, ex::ElemType::f64, 0.0, "victim");
  try {
    ex::launch(fill_one(), ex::launch_1d(16, 16), ex::Backend::reference(),
               {std::ref(buf), std::int64_t{16}});
    FAIL() << "expected IndexError";
  } catch (const IndexError& e) {
    EXPECT_EQ(e.buffer(), "victim");
    EXPECT_EQ(e.index(), 10u);
    EXPECT_NE(std::string(e.what()).find("victim"), std::string::npos);
  }
}

TEST(Launch, ExceptionsPropagateFromWorkers) {
  ex::Kernel k{"throws", {}, 0, [](const ex::BlockContext& ctx, const ex::KernelArgs&) {
                 if (ctx.block_idx.x == 3) throw InvalidArgument("boom");
               }};
  EXPECT_THROW(ex::launch(k, {{8, 1, 1}, {1, 1, 1}}, ex::Backend::parallel(3), {}), InvalidArgument);
  // The pool stays usable afterwards.
  auto buf = ex::create_buffer(64, ex::ElemType::f64, 0.0);
  ex::launch(fill_one(), ex::launch_1d(64, 8), ex::Backend::parallel(3),
             {std::ref(buf), std::int64_t{64}});
  EXPECT_EQ(buf.to_vector(), std::vector<double>(64, 1.0));
}

TEST(Launch, ThreadOrderAndSharedScratch) {
  // Two barrier segments: write shared in reverse, read it back.
  ex::Kernel k;
  k.name = "reverse";
  k.params = {ex::ArgKind::buffer};
  k.shared_bytes = 8 * sizeof(double);
  k.body = [](const ex::BlockContext& ctx, const ex::KernelArgs& args) {
    auto out = args.buffer<double>(0);
    auto tile = ctx.shared<double>(8);
    const std::uint32_t n = ctx.threads();
    ctx.for_each_thread([&](ex::ThreadIdx t) { tile[n - 1 - t.linear] = t.linear; });
    ctx.for_each_thread(
        [&](ex::ThreadIdx t) { out[ctx.block_idx.x * n + t.linear] = tile[t.linear]; });
  };
  auto buf = ex::create_buffer(16, ex::ElemType::f64, 0.0);
  ex::launch(k, {{2, 1, 1}, {2, 2, 2}}, ex::Backend::parallel(2), {std::ref(buf)});
  for (std::uint32_t b = 0; b < 2; ++b)
    for (std::uint32_t i = 0; i < 8; ++i) EXPECT_EQ(buf.get(b * 8 + i), 7.0 - i);
}

TEST(Launch, SharedRequestBeyondAllocationThrows) {
  ex::Kernel k{"greedy", {}, 16, [](const ex::BlockContext& ctx, const ex::KernelArgs&) {
                 (void)ctx.shared<double>(3);
               }};
  EXPECT_THROW(ex::launch(k, {{1, 1, 1}, {1, 1, 1}}, ex::Backend::reference(), {}), InvalidArgument);
}

TEST(Atomic, SingleCaller) {
  auto buf = ex::create_buffer(1, ex::ElemType::f64, 0.0);
  EXPECT_EQ(ex::atomic_add(buf, 0, 2.5), 0.0);
  EXPECT_EQ(buf.get(0), 2.5);
  EXPECT_THROW(ex::atomic_add(buf, 1, 1.0), IndexError);
}

TEST(Atomic, ThousandConcurrentAdds) {
  ex::Kernel k{"inc", {ex::ArgKind::buffer}, 0,
               [](const ex::BlockContext& ctx, const ex::KernelArgs& args) {
                 auto slot = args.buffer<double>(0);
                 ctx.for_each_thread([&](ex::ThreadIdx) { slot.atomic_add(0, 1.0); });
               }};
  auto buf = ex::create_buffer(1, ex::ElemType::f64, 0.0);
  ex::launch(k, {{100, 1, 1}, {10, 1, 1}}, ex::Backend::parallel(4), {std::ref(buf)});
  EXPECT_EQ(buf.get(0), 1000.0);
}

TEST(Atomic, TwoAddsOfPointOne) {
  auto buf = ex::create_buffer(1, ex::ElemType::f64, 0.0);
  ex::atomic_add(buf, 0, 0.1);
  ex::atomic_add(buf, 0, 0.1);
  volatile double expected = 0.0 + 0.1;
  expected = expected + 0.1;
  EXPECT_EQ(buf.get(0), expected);
}

TEST(Backend, WorkerCounts) {
  EXPECT_EQ(ex::Backend::reference().worker_count(), 1u);
  EXPECT_TRUE(ex::Backend::reference().is_reference());
  EXPECT_EQ(ex::Backend::parallel(5).worker_count(), 5u);
  EXPECT_EQ(ex::Backend::parallel().worker_count(), ex::default_worker_count());
  EXPECT_GE(ex::default_worker_count(), 1u);
}

TEST(Types, Dim3AndElemType) {
  EXPECT_EQ(ex::to_string(ex::Dim3{512, 1, 1}), "512x1x1");
  EXPECT_EQ(ex::parse_elem_type("f32"), ex::ElemType::f32);
  EXPECT_EQ(ex::parse_elem_type("float64"), ex::ElemType::f64);
  EXPECT_THROW(ex::parse_elem_type("f16"), InvalidArgument);
  const auto cfg = ex::launch_1d(1000, 64);
  EXPECT_EQ(cfg.grid_dim.x, 16u);
}
