#include <gtest/gtest.h>

#include <cmath>

#include "spmdbench/errors.hpp"
#include "spmdbench/kernels/stencil.hpp"

namespace ex = spmdbench::exec;
namespace k = spmdbench::kernels;

namespace {

std::size_t at(std::uint32_t L, std::uint32_t i, std::uint32_t j, std::uint32_t kk) {
  return (std::size_t{i} * L + j) * L + kk;
}

}  // namespace

TEST(StencilInit, QuadraticField) {
  const auto cfg = k::make_stencil_config(3, ex::ElemType::f64);
  EXPECT_EQ(cfg.h, 0.5);
  const auto u = k::stencil_init(cfg);
  EXPECT_EQ(u.get(at(3, 0, 0, 0)), 0.0);
  EXPECT_EQ(u.get(at(3, 2, 2, 2)), 3.0);
  EXPECT_EQ(u.get(at(3, 1, 1, 1)), 0.75);
  EXPECT_EQ(u.get(at(3, 1, 0, 0)), 0.25);
}

TEST(StencilConfig, Coefficients) {
  const auto cfg = k::make_stencil_config(11, ex::ElemType::f64, 4);
  EXPECT_DOUBLE_EQ(cfg.invhx2, 100.0);
  EXPECT_DOUBLE_EQ(cfg.invhxyz2, -600.0);
  EXPECT_EQ(cfg.launch.grid_dim, (ex::Dim3{3, 11, 11}));
  EXPECT_EQ(cfg.launch.block_dim, (ex::Dim3{4, 1, 1}));
}

TEST(StencilConfig, UncoveredGridRejected) {
  auto cfg = k::make_stencil_config(16, ex::ElemType::f64, 8);
  cfg.launch.grid_dim.y = 8;
  EXPECT_THROW(k::validate(cfg), spmdbench::InvalidArgument);
  cfg = k::make_stencil_config(16, ex::ElemType::f64, 8);
  auto u = k::stencil_init(cfg);
  ex::Buffer f("f", cfg.points(), cfg.elem_type, 0.0);
  cfg.launch.grid_dim.x = 1;
  EXPECT_THROW(k::laplacian_kernel(f, u, cfg, ex::Backend::reference()),
               spmdbench::InvalidArgument);
}

TEST(Laplacian, QuadraticGivesSix) {
  const auto cfg = k::make_stencil_config(8, ex::ElemType::f64, 4);
  const auto u = k::stencil_init(cfg);
  ex::Buffer f("f", cfg.points(), cfg.elem_type, -1.0);
  k::laplacian_kernel(f, u, cfg, ex::Backend::reference());
  for (std::uint32_t i = 1; i < 7; ++i)
    for (std::uint32_t j = 1; j < 7; ++j)
      for (std::uint32_t kk = 1; kk < 7; ++kk) EXPECT_NEAR(f.get(at(8, i, j, kk)), 6.0, 1e-10);
  // Boundary untouched.
  EXPECT_EQ(f.get(at(8, 0, 3, 3)), -1.0);
  EXPECT_EQ(f.get(at(8, 3, 3, 7)), -1.0);
}

TEST(Laplacian, ConstantFieldGivesZero) {
  for (std::uint32_t L : {9u, 6u}) {
    const auto cfg = k::make_stencil_config(L, ex::ElemType::f64, 2);
    ex::Buffer u("u", cfg.points(), cfg.elem_type, 2.0);
    ex::Buffer f("f", cfg.points(), cfg.elem_type, 9.0);
    k::laplacian_kernel(f, u, cfg, ex::Backend::reference());
    // h = 1/8: exact coefficients.
    const double tol = L == 9 ? 0.0 : 1e-12;
    for (std::uint32_t i = 1; i < L - 1; ++i)
      for (std::uint32_t j = 1; j < L - 1; ++j)
        for (std::uint32_t kk = 1; kk < L - 1; ++kk)
          EXPECT_LE(std::abs(f.get(at(L, i, j, kk))), tol);
  }
}

TEST(Laplacian, MatchesDirectEvaluation) {
  const std::uint32_t L = 9;
  const auto cfg = k::make_stencil_config(L, ex::ElemType::f64, 4);
  ex::Buffer u("u", cfg.points(), cfg.elem_type, 0.0);
  for (std::size_t n = 0; n < cfg.points(); ++n) u.set(n, std::sin(0.37 * static_cast<double>(n)));
  ex::Buffer f("f", cfg.points(), cfg.elem_type, 0.0);
  k::laplacian_kernel(f, u, cfg, ex::Backend::parallel(3));
  const double ih2 = 1.0 / (cfg.h * cfg.h);
  for (std::uint32_t i = 1; i < L - 1; ++i)
    for (std::uint32_t j = 1; j < L - 1; ++j)
      for (std::uint32_t kk = 1; kk < L - 1; ++kk) {
        const double lap = (u.get(at(L, i - 1, j, kk)) + u.get(at(L, i + 1, j, kk)) +
                            u.get(at(L, i, j - 1, kk)) + u.get(at(L, i, j + 1, kk)) +
                            u.get(at(L, i, j, kk - 1)) + u.get(at(L, i, j, kk + 1)) -
                            6.0 * u.get(at(L, i, j, kk))) * ih2;
        EXPECT_NEAR(f.get(at(L, i, j, kk)), lap, 1e-9 * std::max(1.0, std::abs(lap)));
      }
}

TEST(Laplacian, BackendsAgreeBitwise) {
  const auto cfg = k::make_stencil_config(20, ex::ElemType::f32, 8);
  const auto u = k::stencil_init(cfg);
  ex::Buffer a("a", cfg.points(), cfg.elem_type, 0.0);
  ex::Buffer b("b", cfg.points(), cfg.elem_type, 0.0);
  k::laplacian_kernel(a, u, cfg, ex::Backend::reference());
  k::laplacian_kernel(b, u, cfg, ex::Backend::parallel(4));
  EXPECT_EQ(a.to_vector(), b.to_vector());
}

TEST(StencilVerify, SmallGridsWithinTolerance) {
  for (auto type : {ex::ElemType::f64, ex::ElemType::f32}) {
    const auto cfg = k::make_stencil_config(16, type);
    const auto u = k::stencil_init(cfg);
    ex::Buffer f("f", cfg.points(), type, 0.0);
    k::laplacian_kernel(f, u, cfg, ex::Backend::reference());
    EXPECT_LE(k::stencil_verify(f, cfg), type == ex::ElemType::f64 ? 1e-8 : 1e-2);
  }
}

TEST(StencilVerify, DetectsPerturbation) {
  const auto cfg = k::make_stencil_config(10, ex::ElemType::f64, 4);
  auto u = k::stencil_init(cfg);
  u.set(at(10, 5, 5, 5), u.get(at(10, 5, 5, 5)) + 1e-3);
  ex::Buffer f("f", cfg.points(), cfg.elem_type, 0.0);
  k::laplacian_kernel(f, u, cfg, ex::Backend::reference());
  EXPECT_GT(k::stencil_verify(f, cfg), 1e-3);
}

TEST(StencilTolerance, FixedAtModestSizes) {
  EXPECT_EQ(k::stencil_tolerance(k::make_stencil_config(64, ex::ElemType::f64)), 1e-8);
  EXPECT_EQ(k::stencil_tolerance(k::make_stencil_config(16, ex::ElemType::f32)), 1e-2);
  EXPECT_GT(k::stencil_tolerance(k::make_stencil_config(1024, ex::ElemType::f64)), 1e-8);
}
