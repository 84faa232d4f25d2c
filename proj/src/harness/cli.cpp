#include "spmdbench/harness/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>

#include "spmdbench/errors.hpp"
#include "spmdbench/harness/execute.hpp"
#include "spmdbench/harness/phi_command.hpp"
#include "spmdbench/metrics/roofline.hpp"

namespace spmdbench::harness {

namespace {

struct RawRunOptions {
  std::string workload;
  std::string backend = "ref";
  std::string dtype;
  std::optional<unsigned> workers;
  std::optional<std::uint32_t> tbsize;
};

void add_run_options(CLI::App& cmd, RunPlan& plan, RawRunOptions& raw) {
  cmd.add_option("workload", raw.workload, "stencil | stream | bude | hf")
      ->required()
      ->check(CLI::IsMember({"stencil", "stream", "bude", "hf"}));
  cmd.add_option("--backend", raw.backend, "ref | parallel")
      ->check(CLI::IsMember({"ref", "parallel"}));
  cmd.add_option("--workers", raw.workers, "parallel worker count (overrides $" +
                                               std::string(kWorkersEnv) + ")")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--dtype", raw.dtype, "f32 | f64")->check(CLI::IsMember({"f32", "f64"}));
  cmd.add_option("--iters", plan.iterations, "timed iterations after warm-up")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--warmup", plan.warmup_discard, "discarded warm-up launches");
  cmd.add_option("--L", plan.L, "stencil points per dimension");
  cmd.add_option("--N", plan.N, "stream vector length");
  cmd.add_option("--dot-blocks", plan.dot_blocks, "stream dot block count");
  cmd.add_option("--tbsize", raw.tbsize, "threads per block (stencil, stream, hf)")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--ppwi", plan.ppwi, "bude poses per work-item");
  cmd.add_option("--wg", plan.wg, "bude work-group size");
  cmd.add_option("--poses", plan.poses, "bude pose count");
  cmd.add_option("--natlig", plan.natlig, "bude ligand atoms");
  cmd.add_option("--natpro", plan.natpro, "bude protein atoms");
  cmd.add_option("--natoms", plan.natoms, "hf atom count");
  cmd.add_option("--ngauss", plan.ngauss, "hf primitives per atom");
  cmd.add_option("--dtol", plan.dtol, "hf Schwarz screening threshold");
  cmd.add_option("--input", plan.hf_input, "hf system file (overrides --natoms/--ngauss)");
  cmd.add_option("--seed", plan.seed, "deck generator seed");
  cmd.add_option("--csv", plan.csv_path, "raw per-iteration CSV output");
  cmd.add_option("--summary-csv", plan.summary_csv_path, "per-kernel summary CSV output");
}

void finish_plan(RunPlan& plan, const RawRunOptions& raw) {
  plan.workload = parse_workload(raw.workload);
  plan.backend =
      raw.backend == "parallel" ? exec::BackendKind::parallel_cpu : exec::BackendKind::reference_sequential;
  if (!raw.dtype.empty()) plan.elem_type = exec::parse_elem_type(raw.dtype);
  plan.tbsize = raw.tbsize;
  if (raw.workers) {
    plan.workers = *raw.workers;
  } else if (const char* env = std::getenv(kWorkersEnv); env && *env) {
    try {
      const long v = std::stol(env);
      if (v < 1) throw std::invalid_argument("");
      plan.workers = static_cast<unsigned>(v);
    } catch (const std::exception&) {
      throw UsageError(std::string(kWorkersEnv) + " must be a positive integer, got '" + env + "'");
    }
  }
  try {
    validate(plan);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

void print_list(std::ostream& out) {
  const RunPlan d;
  out << "workloads (defaults):\n"
      << "  stencil  L=" << d.L << " tbsize=1024 dtype=f64  (benchmark sizes: L=512, 1024)\n"
      << "  stream   N=" << d.N << " tbsize=1024 dot_blocks=" << d.dot_blocks
      << " dtype=f64  kernels: copy mul add triad dot\n"
      << "  bude     ppwi=" << d.ppwi << " wg=" << d.wg << " poses=" << d.poses
      << " natlig=" << d.natlig << " natpro=" << d.natpro << " dtype=f32\n"
      << "  hf       natoms=" << d.natoms << " ngauss=" << d.ngauss
      << " tbsize=256 dtol=1e-10 dtype=f64  (benchmark sizes: 64, 128, 256)\n"
      << "methodology: iters=" << d.iterations << " warmup=" << d.warmup_discard
      << " seed=" << d.seed << "\n"
      << "hardware peaks (GB/s, FP32 TFLOP/s, FP64 TFLOP/s):\n";
  for (const auto& p : metrics::builtin_hardware_peaks()) {
    out << "  " << std::left << std::setw(8) << p.name << ' ' << p.bandwidth_gbs << ", "
        << p.fp32_tflops << ", " << p.fp64_tflops << '\n';
  }
}

void print_summary(std::ostream& out, const ExecuteResult& r) {
  for (const auto& s : r.summaries) {
    out << std::left << std::setw(13) << s.kernel << ' ' << s.dtype << ' ' << s.params << "  "
        << s.fom_name << '=' << format_double(s.fom_value) << "  min=" << format_double(s.time_min_s)
        << "s mean=" << format_double(s.time_mean_s) << "s\n";
  }
  for (const auto& v : r.verification) {
    out << "verified " << v.kernel << ": deviation " << v.deviation << " <= " << v.tolerance << '\n';
  }
}

}  // namespace

CliCommand parse_cli(const std::vector<std::string>& argv) {
  CLI::App app{"Portable SPMD benchmark suite: stencil, stream, bude, hf"};
  app.name(argv.empty() ? "spmdbench" : argv.front());
  app.require_subcommand(1);

  CliCommand cmd;
  RawRunOptions run_raw, verify_raw;
  RunPlan verify_plan;
  auto* run = app.add_subcommand("run", "benchmark a workload");
  add_run_options(*run, cmd.plan, run_raw);
  auto* ver = app.add_subcommand("verify", "run the workload oracles once");
  add_run_options(*ver, verify_plan, verify_raw);
  auto* phi = app.add_subcommand("phi", "performance-portability comparison of summary CSVs");
  phi->add_option("--candidate", cmd.phi.candidate, "candidate summary CSV")->required();
  phi->add_option("--baseline", cmd.phi.baseline, "baseline summary CSV")->required();
  phi->add_flag("--cap", cmd.phi.cap, "clamp each efficiency to at most 1");
  app.add_subcommand("list", "print workloads and defaults");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    cmd.command = Command::help;
    cmd.help_text = app.help();
    return cmd;
  } catch (const CLI::CallForAllHelp&) {
    cmd.command = Command::help;
    cmd.help_text = app.help("", CLI::AppFormatMode::All);
    return cmd;
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n" + app.help());
  }

  if (*run) {
    cmd.command = Command::run;
    finish_plan(cmd.plan, run_raw);
  } else if (*ver) {
    cmd.command = Command::verify;
    cmd.plan = verify_plan;
    finish_plan(cmd.plan, verify_raw);
  } else if (*phi) {
    cmd.command = Command::phi;
  } else {
    cmd.command = Command::list;
  }
  return cmd;
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CliCommand cmd;
  try {
    cmd = parse_cli(argv);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    switch (cmd.command) {
      case Command::help:
        out << cmd.help_text;
        return kExitOk;
      case Command::list:
        print_list(out);
        return kExitOk;
      case Command::phi:
        return phi_command(cmd.phi.candidate, cmd.phi.baseline, cmd.phi.cap, out, err);
      case Command::verify: {
        bool ok = true;
        for (const auto& v : verify(cmd.plan)) {
          out << (v.passed ? "PASS " : "FAIL ") << to_string(cmd.plan.workload) << ' ' << v.kernel
              << ": deviation " << v.deviation << " tolerance " << v.tolerance << '\n';
          ok = ok && v.passed;
        }
        return ok ? kExitOk : kExitVerification;
      }
      case Command::run:
        print_summary(out, execute(cmd.plan));
        return kExitOk;
    }
  } catch (const VerificationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerification;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const EnvironmentError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitUsage;
}

}  // namespace spmdbench::harness
