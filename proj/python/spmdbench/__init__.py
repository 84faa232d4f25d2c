"""SPMD benchmark kernels, metrics and harness."""

from ._core import (
    InvalidArgument,
    IoError,
    UsageError,
    VerificationError,
    boys_f0,
    bude_fasten,
    bude_gflops,
    bude_reference,
    bude_total_ops,
    decompose_ijkl,
    default_worker_count,
    efficiency,
    execute,
    format_efficiency,
    hf_eri,
    hf_fock,
    hf_reference,
    phi_bar,
    roofline_attainable,
    run_cli,
    run_stats,
    stencil_bandwidth,
    stencil_run,
    stream_bandwidth,
    stream_run,
)

__version__ = "0.1.0"
