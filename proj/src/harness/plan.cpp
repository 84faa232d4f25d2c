#include "spmdbench/harness/plan.hpp"

#include <bit>

#include "spmdbench/errors.hpp"

namespace spmdbench::harness {

std::string_view to_string(Workload w) noexcept {
  switch (w) {
    case Workload::stencil: return "stencil";
    case Workload::stream: return "stream";
    case Workload::bude: return "bude";
    case Workload::hf: return "hf";
  }
  return "?";
}

Workload parse_workload(std::string_view name) {
  if (name == "stencil") return Workload::stencil;
  if (name == "stream") return Workload::stream;
  if (name == "bude") return Workload::bude;
  if (name == "hf") return Workload::hf;
  throw InvalidArgument("unknown workload '" + std::string(name) +
                        "' (expected stencil, stream, bude or hf)");
}

exec::ElemType effective_elem_type(const RunPlan& plan) {
  if (plan.elem_type) return *plan.elem_type;
  return plan.workload == Workload::bude ? exec::ElemType::f32 : exec::ElemType::f64;
}

std::uint32_t effective_tbsize(const RunPlan& plan) {
  if (plan.workload == Workload::bude) return plan.wg;
  if (plan.tbsize) return *plan.tbsize;
  return plan.workload == Workload::hf ? 256 : 1024;
}

std::string canonical_params(const RunPlan& plan) {
  const auto s = [](auto v) { return std::to_string(v); };
  switch (plan.workload) {
    case Workload::stencil:
      return "L=" + s(plan.L) + ";tbsize=" + s(effective_tbsize(plan));
    case Workload::stream:
      return "N=" + s(plan.N) + ";tbsize=" + s(effective_tbsize(plan)) +
             ";dot_blocks=" + s(plan.dot_blocks);
    case Workload::bude:
      return "ppwi=" + s(plan.ppwi) + ";wg=" + s(plan.wg) + ";poses=" + s(plan.poses) +
             ";natlig=" + s(plan.natlig) + ";natpro=" + s(plan.natpro);
    case Workload::hf:
      return "natoms=" + s(plan.natoms) + ";ngauss=" + s(plan.ngauss) +
             ";tbsize=" + s(effective_tbsize(plan));
  }
  return {};
}

void validate(const RunPlan& plan) {
  if (plan.iterations < 1) throw InvalidArgument("iterations must be >= 1");
  const std::uint32_t tb = effective_tbsize(plan);
  if (tb == 0) throw InvalidArgument("threads per block must be >= 1");
  const exec::ElemType type = effective_elem_type(plan);
  switch (plan.workload) {
    case Workload::stencil:
      if (plan.L < 3) throw InvalidArgument("stencil requires L >= 3");
      break;
    case Workload::stream:
      if (!std::has_single_bit(tb)) throw InvalidArgument("stream tbsize must be a power of two");
      if (plan.N == 0 || plan.N % tb != 0) {
        throw InvalidArgument("stream N must be a positive multiple of tbsize");
      }
      if (plan.dot_blocks == 0) throw InvalidArgument("stream dot blocks must be >= 1");
      break;
    case Workload::bude:
      if (type != exec::ElemType::f32) throw InvalidArgument("bude runs in f32 only");
      if (plan.ppwi == 0 || plan.wg == 0 || plan.poses == 0 || plan.natlig == 0 ||
          plan.natpro == 0) {
        throw InvalidArgument("bude counts must be >= 1");
      }
      if (plan.poses % plan.ppwi != 0) throw InvalidArgument("bude poses must be divisible by ppwi");
      break;
    case Workload::hf:
      if (type != exec::ElemType::f64) throw InvalidArgument("hf runs in f64 only");
      if (!plan.hf_input && plan.natoms == 0) throw InvalidArgument("hf natoms must be >= 1");
      if (!plan.hf_input && (plan.ngauss == 0 || plan.ngauss > 6)) {
        throw InvalidArgument("hf ngauss must be in 1..6");
      }
      break;
  }
}

exec::Backend make_backend(const RunPlan& plan) {
  return plan.backend == exec::BackendKind::parallel_cpu ? exec::Backend::parallel(plan.workers)
                                                         : exec::Backend::reference();
}

}  // namespace spmdbench::harness
