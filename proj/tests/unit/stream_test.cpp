#include <gtest/gtest.h>

#include <cmath>

#include "spmdbench/errors.hpp"
#include "spmdbench/kernels/stream.hpp"

namespace ex = spmdbench::exec;
namespace k = spmdbench::kernels;

namespace {

k::StreamConfig small(std::uint64_t N, std::uint32_t tb = 64) {
  k::StreamConfig cfg;
  cfg.N = N;
  cfg.tbsize = tb;
  cfg.dot_num_blocks = 8;
  cfg.iterations = 1;
  return cfg;
}

}  // namespace

TEST(StreamConfig, Validation) {
  auto cfg = small(1000, 64);
  EXPECT_THROW(k::validate(cfg), spmdbench::InvalidArgument);
  cfg = small(960, 96);
  EXPECT_THROW(k::validate(cfg), spmdbench::InvalidArgument);
  cfg = small(1024, 64);
  cfg.dot_num_blocks = 0;
  EXPECT_THROW(k::validate(cfg), spmdbench::InvalidArgument);
  EXPECT_NO_THROW(k::validate(small(1024, 64)));
}

TEST(StreamDot, InitialProduct) {
  auto cfg = small(1024);
  auto s = k::stream_init(cfg);
  const auto r = k::stream_dot(s, cfg, ex::Backend::reference());
  EXPECT_NEAR(r.value, 20.48, 1e-12);
  EXPECT_GE(r.seconds, r.device_seconds);
}

TEST(StreamCopy, Identity) {
  auto cfg = small(8, 4);
  auto s = k::stream_init(cfg);
  for (std::size_t i = 0; i < 8; ++i) s.a.set(i, 0.5 * static_cast<double>(i));
  k::stream_copy(s, cfg, ex::Backend::reference());
  EXPECT_EQ(s.c.to_vector(), s.a.to_vector());
}

TEST(StreamKernels, OneIterationRecurrence) {
  auto cfg = small(256);
  auto s = k::stream_init(cfg);
  const auto r = k::stream_kernels(s, cfg, ex::Backend::reference());
  ASSERT_EQ(r.times.size(), 1u);
  for (std::size_t i = 0; i < cfg.N; ++i) {
    EXPECT_NEAR(s.a.get(i), 0.096, 1e-15);
    EXPECT_NEAR(s.b.get(i), 0.04, 1e-15);
    EXPECT_NEAR(s.c.get(i), 0.14, 1e-15);
  }
  EXPECT_NEAR(r.dot, 256 * 0.096 * 0.04, 1e-12);
}

TEST(StreamExpected, Recurrence) {
  const auto cfg = small(1024);
  const auto e0 = k::stream_expected(cfg, 0);
  EXPECT_EQ(e0.a, 0.1);
  EXPECT_EQ(e0.b, 0.2);
  EXPECT_EQ(e0.c, 0.0);
  EXPECT_NEAR(e0.dot, 1024 * 0.02, 1e-12);
  const auto e1 = k::stream_expected(cfg, 1);
  EXPECT_NEAR(e1.a, 0.096, 1e-16);
  EXPECT_NEAR(e1.b, 0.04, 1e-16);
  EXPECT_NEAR(e1.c, 0.14, 1e-16);
  EXPECT_NEAR(e1.dot, 1024 * 0.096 * 0.04, 1e-12);
}

TEST(StreamKernels, HundredIterationsMatchRecurrence) {
  auto cfg = small(4096, 128);
  cfg.iterations = 100;
  auto s = k::stream_init(cfg);
  const auto r = k::stream_kernels(s, cfg, ex::Backend::parallel(3));
  const auto e = k::stream_expected(cfg, 100);
  EXPECT_TRUE(std::isfinite(e.a));
  EXPECT_LE(k::stream_max_rel_error(s, e), 1e-8);
  EXPECT_LE(std::abs(r.dot - e.dot) / std::abs(e.dot), 1e-8);
}

TEST(StreamDot, InvariantAcrossBlockCounts) {
  auto cfg = small(1 << 14, 256);
  auto s = k::stream_init(cfg);
  for (std::size_t i = 0; i < cfg.N; ++i) s.a.set(i, 1.0 / (1.0 + static_cast<double>(i)));
  double first = 0.0;
  for (std::uint32_t blocks : {1u, 3u, 64u, 256u}) {
    cfg.dot_num_blocks = blocks;
    const double v = k::stream_dot(s, cfg, ex::Backend::reference()).value;
    if (blocks == 1) first = v;
    EXPECT_NEAR(v, first, 1e-10 * std::abs(first)) << blocks;
  }
}

TEST(StreamKernels, Float32) {
  auto cfg = small(1024);
  cfg.elem_type = ex::ElemType::f32;
  cfg.iterations = 10;
  auto s = k::stream_init(cfg);
  k::stream_kernels(s, cfg, ex::Backend::reference());
  EXPECT_LE(k::stream_max_rel_error(s, k::stream_expected(cfg, 10)), 1e-5);
}
