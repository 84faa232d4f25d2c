#include "spmdbench/harness/execute.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>

#include "spmdbench/errors.hpp"
#include "spmdbench/kernels/bude.hpp"
#include "spmdbench/kernels/hartree_fock.hpp"
#include "spmdbench/kernels/stencil.hpp"
#include "spmdbench/kernels/stream.hpp"
#include "spmdbench/metrics/fom.hpp"
#include "spmdbench/metrics/stats.hpp"

namespace spmdbench::harness {

namespace {

using exec::ElemType;
namespace k = kernels;

struct RunOutput {
  // times[kernel] in launch order, warm-ups included
  std::map<std::string, std::vector<double>> times;
  std::vector<std::string> kernel_order;
  std::vector<VerifyOutcome> verification;
  RunPlan plan;  // with file-derived parameters filled in
};

void push_time(RunOutput& out, const std::string& kernel, double t) {
  auto [it, inserted] = out.times.try_emplace(kernel);
  if (inserted) out.kernel_order.push_back(kernel);
  it->second.push_back(t);
}

VerifyOutcome outcome(std::string kernel, double deviation, double tolerance) {
  return {std::move(kernel), deviation, tolerance, deviation <= tolerance};
}

RunOutput run_stencil(const RunPlan& plan, const exec::Backend& backend, std::uint32_t launches) {
  RunOutput out;
  out.plan = plan;
  const auto cfg = k::make_stencil_config(plan.L, effective_elem_type(plan),
                                          effective_tbsize(plan), plan.iterations);
  const exec::Buffer u = k::stencil_init(cfg);
  exec::Buffer f("f", cfg.points(), cfg.elem_type, 0.0);
  for (std::uint32_t n = 0; n < launches; ++n) {
    push_time(out, "laplacian", k::laplacian_kernel(f, u, cfg, backend));
  }
  out.verification.push_back(
      outcome("laplacian", k::stencil_verify(f, cfg), k::stencil_tolerance(cfg)));
  return out;
}

RunOutput run_stream(const RunPlan& plan, const exec::Backend& backend, std::uint32_t launches) {
  RunOutput out;
  out.plan = plan;
  k::StreamConfig cfg;
  cfg.N = plan.N;
  cfg.tbsize = effective_tbsize(plan);
  cfg.dot_num_blocks = plan.dot_blocks;
  cfg.elem_type = effective_elem_type(plan);
  cfg.iterations = launches;
  k::StreamArrays arrays = k::stream_init(cfg);
  double dot = 0.0;
  for (std::uint32_t n = 0; n < launches; ++n) {
    push_time(out, "copy", k::stream_copy(arrays, cfg, backend));
    push_time(out, "mul", k::stream_mul(arrays, cfg, backend));
    push_time(out, "add", k::stream_add(arrays, cfg, backend));
    push_time(out, "triad", k::stream_triad(arrays, cfg, backend));
    const auto d = k::stream_dot(arrays, cfg, backend);
    push_time(out, "dot", d.seconds);
    dot = d.value;
  }
  const double tol = cfg.elem_type == ElemType::f64 ? 1e-8 : 1e-4;
  const auto expected = k::stream_expected(cfg, launches);
  out.verification.push_back(outcome("triad", k::stream_max_rel_error(arrays, expected), tol));
  out.verification.push_back(
      outcome("dot", std::abs(dot - expected.dot) / std::abs(expected.dot), tol));
  return out;
}

RunOutput run_bude(const RunPlan& plan, const exec::Backend& backend, std::uint32_t launches) {
  RunOutput out;
  out.plan = plan;
  const auto deck =
      k::bude_gen_deck(plan.seed, plan.natlig, plan.natpro, plan.poses, plan.ppwi, plan.wg);
  std::vector<float> etotals;
  for (std::uint32_t n = 0; n < launches; ++n) {
    auto r = k::fasten_kernel(deck, backend);
    push_time(out, "fasten", r.seconds);
    if (n + 1 == launches) {
      const auto d = r.etotals.data<float>();
      etotals.assign(d.begin(), d.end());
    }
  }
  const auto ref = k::fasten_reference(deck);
  // Bitwise comparison: any differing element fails, deviation reports its size.
  double deviation = 0.0;
  for (std::size_t p = 0; p < ref.size(); ++p) {
    if (std::bit_cast<std::uint32_t>(ref[p]) != std::bit_cast<std::uint32_t>(etotals[p])) {
      const double diff = std::abs(static_cast<double>(ref[p]) - etotals[p]);
      deviation = std::max(deviation, diff > 0.0 ? diff : std::numeric_limits<double>::min());
    }
  }
  out.verification.push_back(outcome("fasten", deviation, 0.0));
  return out;
}

RunOutput run_hf(const RunPlan& plan, const exec::Backend& backend, std::uint32_t launches) {
  RunOutput out;
  out.plan = plan;
  k::HfSystem sys = plan.hf_input ? k::hf_load_system(*plan.hf_input)
                                  : k::hf_gen_system(plan.natoms, plan.ngauss);
  if (plan.dtol) sys.dtol = *plan.dtol;
  out.plan.natoms = sys.natoms;
  out.plan.ngauss = sys.ngauss;
  const std::uint32_t tb = effective_tbsize(plan);
  std::vector<double> fock;
  for (std::uint32_t n = 0; n < launches; ++n) {
    auto r = k::hf_kernel(sys, backend, tb);
    push_time(out, "hartree_fock", r.seconds);
    if (n + 1 == launches) fock = r.fock.to_vector();
  }
  const auto ref = k::hf_reference(sys);
  double deviation = 0.0;
  for (std::size_t e = 0; e < ref.size(); ++e) deviation = std::max(deviation, std::abs(ref[e] - fock[e]));
  out.verification.push_back(outcome("hartree_fock", deviation, 1e-8));
  return out;
}

RunOutput run(const RunPlan& plan, std::uint32_t launches) {
  validate(plan);
  const exec::Backend backend = make_backend(plan);
  switch (plan.workload) {
    case Workload::stencil: return run_stencil(plan, backend, launches);
    case Workload::stream: return run_stream(plan, backend, launches);
    case Workload::bude: return run_bude(plan, backend, launches);
    case Workload::hf: return run_hf(plan, backend, launches);
  }
  throw InvalidArgument("unknown workload");
}

}  // namespace

Fom compute_fom(const RunPlan& plan, const std::string& kernel, double time_s) {
  const auto elem = exec::size_bytes(effective_elem_type(plan));
  switch (plan.workload) {
    case Workload::stencil:
      return {"bandwidth_GBps", metrics::stencil_bandwidth(plan.L, elem, time_s)};
    case Workload::stream:
      return {"bandwidth_GBps", metrics::stream_bandwidth(kernel, plan.N, elem, time_s)};
    case Workload::bude:
      return {"gflops", metrics::bude_gflops(plan.ppwi, plan.natlig, plan.natpro, plan.poses, time_s)};
    case Workload::hf:
      return {"wall_time_s", time_s};
  }
  throw InvalidArgument("unknown workload");
}

std::vector<SummaryRecord> summarize(const RunPlan& plan,
                                     const std::vector<BenchmarkRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> by_kernel;
  for (const auto& r : records) {
    auto [it, inserted] = by_kernel.try_emplace(r.kernel);
    if (inserted) order.push_back(r.kernel);
    it->second.push_back(r.time_s);
  }
  std::vector<SummaryRecord> out;
  for (const auto& kernel : order) {
    const auto& times = by_kernel[kernel];
    const metrics::Stats st = metrics::run_stats(times);
    const Fom fom = compute_fom(plan, kernel, st.min);
    out.push_back({std::string(to_string(plan.workload)), kernel,
                   std::string(exec::to_string(plan.backend)),
                   std::string(exec::to_string(effective_elem_type(plan))), canonical_params(plan),
                   fom.name, fom.value, st.min, st.mean, st.max, st.stddev});
  }
  return out;
}

ExecuteResult execute(const RunPlan& plan) {
  const RunOutput raw = run(plan, plan.warmup_discard + plan.iterations);
  for (const auto& v : raw.verification) {
    if (!v.passed) throw VerificationError(v.kernel, v.deviation, v.tolerance);
  }

  ExecuteResult result;
  result.verification = raw.verification;
  const std::string workload(to_string(plan.workload));
  const std::string backend(exec::to_string(plan.backend));
  const std::string dtype(exec::to_string(effective_elem_type(raw.plan)));
  const std::string params = canonical_params(raw.plan);
  // Kernels interleaved per iteration, in launch order.
  for (std::uint32_t it = 0; it < plan.iterations; ++it) {
    for (const auto& kernel : raw.kernel_order) {
      const double t = raw.times.at(kernel)[plan.warmup_discard + it];
      result.records.push_back({workload, kernel, backend, dtype, params, it,
                                std::max(t, std::numeric_limits<double>::denorm_min())});
    }
  }
  result.summaries = summarize(raw.plan, result.records);

  if (plan.csv_path) write_csv(*plan.csv_path, result.records);
  if (plan.summary_csv_path) write_csv(*plan.summary_csv_path, result.summaries);
  return result;
}

std::vector<VerifyOutcome> verify(const RunPlan& plan) { return run(plan, 1).verification; }

}  // namespace spmdbench::harness
