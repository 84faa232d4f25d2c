#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "spmdbench/exec/backend.hpp"
#include "spmdbench/exec/types.hpp"

namespace spmdbench::harness {

enum class Workload { stencil, stream, bude, hf };

std::string_view to_string(Workload w) noexcept;
Workload parse_workload(std::string_view name);

/// Environment variable that overrides the worker count when --workers is absent.
inline constexpr const char* kWorkersEnv = "SPMDBENCH_WORKERS";

struct RunPlan {
  Workload workload = Workload::stencil;
  exec::BackendKind backend = exec::BackendKind::reference_sequential;
  unsigned workers = 0;  // 0: default_worker_count()
  std::optional<exec::ElemType> elem_type;
  std::uint32_t iterations = 100;
  std::uint32_t warmup_discard = 1;

  // stencil
  std::uint32_t L = 64;
  // stream
  std::uint64_t N = std::uint64_t{1} << 25;
  std::uint32_t dot_blocks = 256;
  // stencil / stream / hf threads per block; unset selects the workload default
  std::optional<std::uint32_t> tbsize;
  // bude
  std::uint32_t ppwi = 4;
  std::uint32_t wg = 64;
  std::uint32_t poses = 65536;
  std::uint32_t natlig = 26;
  std::uint32_t natpro = 938;
  // hf
  std::uint32_t natoms = 64;
  std::uint32_t ngauss = 3;
  std::optional<double> dtol;
  std::optional<std::string> hf_input;

  std::uint64_t seed = 42;
  std::optional<std::string> csv_path;
  std::optional<std::string> summary_csv_path;
};

/// Element type actually used: the plan's, or f64 (stencil, stream, hf) / f32 (bude).
exec::ElemType effective_elem_type(const RunPlan& plan);

/// 1024 for stencil and stream, 256 for hf, wg for bude.
std::uint32_t effective_tbsize(const RunPlan& plan);

/// Semicolon-delimited workload parameters, e.g. "L=64;tbsize=1024".
std::string canonical_params(const RunPlan& plan);

/// Throws InvalidArgument for inconsistent plans.
void validate(const RunPlan& plan);

exec::Backend make_backend(const RunPlan& plan);

}  // namespace spmdbench::harness
