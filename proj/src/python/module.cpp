#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "spmdbench/errors.hpp"
#include "spmdbench/exec/backend.hpp"
#include "spmdbench/harness/cli.hpp"
#include "spmdbench/harness/execute.hpp"
#include "spmdbench/kernels/bude.hpp"
#include "spmdbench/kernels/hartree_fock.hpp"
#include "spmdbench/kernels/stencil.hpp"
#include "spmdbench/kernels/stream.hpp"
#include "spmdbench/metrics/fom.hpp"
#include "spmdbench/metrics/phi.hpp"
#include "spmdbench/metrics/roofline.hpp"
#include "spmdbench/metrics/stats.hpp"

namespace py = pybind11;
namespace ex = spmdbench::exec;
namespace h = spmdbench::harness;
namespace k = spmdbench::kernels;
namespace m = spmdbench::metrics;

namespace {

ex::Backend backend_from(const std::string& name, unsigned workers) {
  if (name == "ref" || name == "reference") return ex::Backend::reference();
  if (name == "parallel") return ex::Backend::parallel(workers);
  throw spmdbench::InvalidArgument("unknown backend '" + name + "' (expected ref or parallel)");
}

template <class T>
py::array_t<T> to_numpy(std::span<const T> v) {
  py::array_t<T> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> buffer_to_numpy(const ex::Buffer& b) {
  const auto v = b.to_vector();
  return to_numpy<double>(v);
}

py::dict record_dict(const h::BenchmarkRecord& r) {
  py::dict d;
  d["workload"] = r.workload;
  d["kernel"] = r.kernel;
  d["backend"] = r.backend;
  d["dtype"] = r.dtype;
  d["params"] = r.params;
  d["iter"] = r.iter;
  d["time_s"] = r.time_s;
  return d;
}

py::dict summary_dict(const h::SummaryRecord& s) {
  py::dict d;
  d["workload"] = s.workload;
  d["kernel"] = s.kernel;
  d["backend"] = s.backend;
  d["dtype"] = s.dtype;
  d["params"] = s.params;
  d["fom_name"] = s.fom_name;
  d["fom_value"] = s.fom_value;
  d["time_min_s"] = s.time_min_s;
  d["time_mean_s"] = s.time_mean_s;
  d["time_max_s"] = s.time_max_s;
  d["time_stddev_s"] = s.time_stddev_s;
  return d;
}

py::dict stencil_run(std::uint32_t L, const std::string& dtype, const std::string& backend,
                     unsigned workers, std::uint32_t block_x) {
  const auto cfg = k::make_stencil_config(L, ex::parse_elem_type(dtype), block_x);
  const auto u = k::stencil_init(cfg);
  ex::Buffer f("f", cfg.points(), cfg.elem_type, 0.0);
  const double t = k::laplacian_kernel(f, u, cfg, backend_from(backend, workers));
  py::dict d;
  d["seconds"] = t;
  d["max_error"] = k::stencil_verify(f, cfg);
  d["f"] = buffer_to_numpy(f);
  return d;
}

py::dict stream_run(std::uint64_t N, std::uint32_t iterations, const std::string& dtype,
                    std::uint32_t tbsize, std::uint32_t dot_blocks, const std::string& backend,
                    unsigned workers) {
  k::StreamConfig cfg;
  cfg.N = N;
  cfg.iterations = iterations;
  cfg.elem_type = ex::parse_elem_type(dtype);
  cfg.tbsize = tbsize;
  cfg.dot_num_blocks = dot_blocks;
  auto s = k::stream_init(cfg);
  const auto r = k::stream_kernels(s, cfg, backend_from(backend, workers));
  const auto e = k::stream_expected(cfg, iterations);
  py::dict times;
  for (const char* name : {"copy", "mul", "add", "triad", "dot"}) times[name] = py::list();
  for (const auto& t : r.times) {
    times["copy"].cast<py::list>().append(t.copy);
    times["mul"].cast<py::list>().append(t.mul);
    times["add"].cast<py::list>().append(t.add);
    times["triad"].cast<py::list>().append(t.triad);
    times["dot"].cast<py::list>().append(t.dot);
  }
  py::dict d;
  d["dot"] = r.dot;
  d["expected"] = py::make_tuple(e.a, e.b, e.c, e.dot);
  d["max_rel_error"] = k::stream_max_rel_error(s, e);
  d["times"] = times;
  d["a"] = buffer_to_numpy(s.a);
  return d;
}

py::array_t<float> bude_fasten(std::uint64_t seed, std::uint32_t natlig, std::uint32_t natpro,
                               std::uint32_t nposes, std::uint32_t ppwi, std::uint32_t wg,
                               const std::string& backend, unsigned workers) {
  const auto deck = k::bude_gen_deck(seed, natlig, natpro, nposes, ppwi, wg);
  const auto r = k::fasten_kernel(deck, backend_from(backend, workers));
  return to_numpy<float>(r.etotals.data<float>());
}

py::array_t<float> bude_reference(std::uint64_t seed, std::uint32_t natlig, std::uint32_t natpro,
                                  std::uint32_t nposes) {
  const auto deck = k::bude_gen_deck(seed, natlig, natpro, nposes);
  const auto v = k::fasten_reference(deck);
  return to_numpy<float>(v);
}

py::array_t<double> as_matrix(const std::vector<double>& v, std::uint32_t n) {
  py::array_t<double> out({static_cast<py::ssize_t>(n), static_cast<py::ssize_t>(n)});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

k::HfSystem hf_system(std::uint32_t natoms, std::uint32_t ngauss, double spacing,
                      std::optional<double> dtol) {
  auto sys = k::hf_gen_system(natoms, ngauss, spacing);
  if (dtol) sys.dtol = *dtol;
  return sys;
}

py::dict execute_plan(const std::vector<std::string>& args) {
  std::vector<std::string> argv{"spmdbench", "run"};
  argv.insert(argv.end(), args.begin(), args.end());
  const auto cmd = h::parse_cli(argv);
  const auto r = h::execute(cmd.plan);
  py::list records, summaries, verification;
  for (const auto& rec : r.records) records.append(record_dict(rec));
  for (const auto& s : r.summaries) summaries.append(summary_dict(s));
  for (const auto& v : r.verification) {
    py::dict d;
    d["kernel"] = v.kernel;
    d["deviation"] = v.deviation;
    d["tolerance"] = v.tolerance;
    d["passed"] = v.passed;
    verification.append(d);
  }
  py::dict d;
  d["records"] = records;
  d["summaries"] = summaries;
  d["verification"] = verification;
  return d;
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> argv{"spmdbench"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  const int code = h::run_cli(argv, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "SPMD benchmark kernels, metrics and harness";

  py::register_exception<spmdbench::InvalidArgument>(mod, "InvalidArgument", PyExc_ValueError);
  py::register_exception<spmdbench::VerificationError>(mod, "VerificationError", PyExc_RuntimeError);
  py::register_exception<spmdbench::UsageError>(mod, "UsageError", PyExc_ValueError);
  py::register_exception<spmdbench::IoError>(mod, "IoError", PyExc_OSError);

  mod.def("default_worker_count", &ex::default_worker_count);

  mod.def("stencil_run", &stencil_run, py::arg("L"), py::arg("dtype") = "f64",
          py::arg("backend") = "ref", py::arg("workers") = 0u, py::arg("block_x") = 1024u);
  mod.def("stream_run", &stream_run, py::arg("N"), py::arg("iterations") = 100u,
          py::arg("dtype") = "f64", py::arg("tbsize") = 1024u, py::arg("dot_blocks") = 256u,
          py::arg("backend") = "ref", py::arg("workers") = 0u);
  mod.def("bude_fasten", &bude_fasten, py::arg("seed") = 42u, py::arg("natlig") = 26u,
          py::arg("natpro") = 938u, py::arg("nposes") = 65536u, py::arg("ppwi") = 1u,
          py::arg("wg") = 64u, py::arg("backend") = "ref", py::arg("workers") = 0u);
  mod.def("bude_reference", &bude_reference, py::arg("seed") = 42u, py::arg("natlig") = 26u,
          py::arg("natpro") = 938u, py::arg("nposes") = 65536u);

  mod.def("boys_f0", &k::boys_f0, py::arg("T"));
  mod.def("decompose_ijkl", [](std::uint64_t mm, std::uint32_t natoms) {
    const auto q = k::decompose_ijkl(mm, natoms);
    return py::make_tuple(q.i, q.j, q.k, q.l);
  }, py::arg("m"), py::arg("natoms"));
  mod.def("hf_eri", [](std::uint32_t natoms, std::uint32_t i, std::uint32_t j, std::uint32_t kk,
                       std::uint32_t l, std::uint32_t ngauss, double spacing) {
    return k::eri(i, j, kk, l, k::hf_gen_system(natoms, ngauss, spacing));
  }, py::arg("natoms"), py::arg("i"), py::arg("j"), py::arg("k"), py::arg("l"),
          py::arg("ngauss") = 3u, py::arg("spacing") = 2.0);
  mod.def("hf_fock", [](std::uint32_t natoms, std::uint32_t ngauss, double spacing,
                        std::optional<double> dtol, const std::string& backend, unsigned workers) {
    const auto sys = hf_system(natoms, ngauss, spacing, dtol);
    const auto r = k::hf_kernel(sys, backend_from(backend, workers));
    return as_matrix(r.fock.to_vector(), natoms);
  }, py::arg("natoms"), py::arg("ngauss") = 3u, py::arg("spacing") = 2.0,
          py::arg("dtol") = py::none(), py::arg("backend") = "ref", py::arg("workers") = 0u);
  mod.def("hf_reference", [](std::uint32_t natoms, std::uint32_t ngauss, double spacing,
                             std::optional<double> dtol) {
    return as_matrix(k::hf_reference(hf_system(natoms, ngauss, spacing, dtol)), natoms);
  }, py::arg("natoms"), py::arg("ngauss") = 3u, py::arg("spacing") = 2.0,
          py::arg("dtol") = py::none());

  mod.def("stencil_bandwidth", &m::stencil_bandwidth, py::arg("L"), py::arg("elem_size"),
          py::arg("time_s"));
  mod.def("stream_bandwidth",
          py::overload_cast<std::string_view, std::uint64_t, std::uint64_t, double>(
              &m::stream_bandwidth),
          py::arg("op"), py::arg("N"), py::arg("elem_size"), py::arg("time_s"));
  mod.def("bude_total_ops", &m::bude_total_ops, py::arg("ppwi"), py::arg("natlig"),
          py::arg("natpro"), py::arg("nposes"));
  mod.def("bude_gflops", &m::bude_gflops, py::arg("ppwi"), py::arg("natlig"), py::arg("natpro"),
          py::arg("nposes"), py::arg("time_s"));
  mod.def("run_stats", [](const std::vector<double>& times) {
    const auto s = m::run_stats(times);
    py::dict d;
    d["n"] = s.n;
    d["min"] = s.min;
    d["max"] = s.max;
    d["mean"] = s.mean;
    d["stddev"] = s.stddev;
    return d;
  }, py::arg("times"));
  mod.def("efficiency", [](double cand, double base, bool lower_is_better) {
    return m::efficiency("", cand, base,
                         lower_is_better ? m::FomOrientation::lower_is_better
                                         : m::FomOrientation::higher_is_better).e;
  }, py::arg("candidate"), py::arg("baseline"), py::arg("lower_is_better") = false);
  mod.def("phi_bar", [](const std::vector<double>& es, bool capped) {
    std::vector<m::EfficiencyEntry> entries;
    for (double e : es) entries.push_back({"", e, 1.0, e});
    return m::phi_bar(std::move(entries), capped).phi;
  }, py::arg("efficiencies"), py::arg("capped") = false);
  mod.def("format_efficiency", &m::format_efficiency, py::arg("e"));
  mod.def("roofline_attainable", [](double ai, const std::string& hardware, const std::string& precision) {
    const auto& peaks = m::find_peaks(m::builtin_hardware_peaks(), hardware);
    if (precision != "fp32" && precision != "fp64") {
      throw spmdbench::InvalidArgument("precision must be fp32 or fp64");
    }
    return m::roofline_attainable(ai, peaks, precision == "fp32" ? m::Precision::fp32 : m::Precision::fp64);
  }, py::arg("ai"), py::arg("hardware"), py::arg("precision") = "fp64");

  mod.def("execute", &execute_plan, py::arg("args"),
          "Runs a workload with command-line style arguments, e.g. ['stencil', '--L', '16'].");
  mod.def("run_cli", &run_cli, py::arg("args"),
          "Runs the command-line tool in process; returns (exit_code, stdout, stderr).");
}
