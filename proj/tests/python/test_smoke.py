import math

import numpy as np
import pytest

import spmdbench as sb


def test_stencil_quadratic_field():
    r = sb.stencil_run(16)
    assert r["max_error"] <= 1e-8
    assert r["f"].shape == (16**3,)
    assert r["seconds"] >= 0.0


def test_stream_recurrence():
    r = sb.stream_run(1024, iterations=1, tbsize=64, dot_blocks=4)
    a, b, c, dot = r["expected"]
    assert a == pytest.approx(0.096)
    assert b == pytest.approx(0.04)
    assert c == pytest.approx(0.14)
    assert r["dot"] == pytest.approx(1024 * 0.096 * 0.04)
    assert np.allclose(r["a"], 0.096)
    assert len(r["times"]["triad"]) == 1


def test_bude_kernel_matches_reference():
    ref = sb.bude_reference(seed=3, natlig=4, natpro=16, nposes=64)
    for ppwi in (1, 4):
        out = sb.bude_fasten(seed=3, natlig=4, natpro=16, nposes=64, ppwi=ppwi, wg=8,
                             backend="parallel", workers=2)
        assert out.dtype == np.float32
        assert np.array_equal(out, ref)


def test_hf_kernel_and_integrals():
    assert sb.boys_f0(0.0) == 1.0
    assert sb.decompose_ijkl(3, 2) == (1, 1, 0, 0)
    fock = sb.hf_fock(4, backend="parallel", workers=2)
    assert fock.shape == (4, 4)
    assert np.allclose(fock, sb.hf_reference(4), atol=1e-8)
    assert not sb.hf_fock(2, dtol=math.inf).any()
    e = sb.hf_eri(1, 0, 0, 0, 0)
    assert np.isclose(sb.hf_fock(1)[0, 0], 0.5 * e)


def test_metrics():
    assert sb.stencil_bandwidth(4, 8, 1e-6) == pytest.approx(0.32)
    assert 2.49e3 <= sb.stream_bandwidth("dot", 2**25, 8, 2.15e-4) <= 2.50e3
    assert sb.bude_gflops(1, 1, 1, 1, 1.0) == pytest.approx(8.8e-8)
    assert sb.format_efficiency(sb.phi_bar([0.82, 0.87, 1.0, 1.0])) == "0.92"
    assert sb.format_efficiency(sb.efficiency(25.266, 0.178, lower_is_better=True)) == "7.0e-3"
    assert sb.run_stats([1.0, 3.0])["stddev"] == pytest.approx(math.sqrt(2.0))
    assert sb.roofline_attainable(0.62, "H100") == pytest.approx(2.418e12)


def test_execute_and_cli():
    r = sb.execute(["stencil", "--L", "16", "--iters", "3"])
    assert len(r["records"]) == 3
    assert r["summaries"][0]["fom_value"] > 0
    assert all(v["passed"] for v in r["verification"])
    code, out, _ = sb.run_cli(["verify", "stencil", "--L", "16"])
    assert code == 0 and "PASS" in out
    code, _, err = sb.run_cli(["run", "nope"])
    assert code == 1 and err


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        sb.stencil_run(16, dtype="f16")
    with pytest.raises(ValueError):
        sb.boys_f0(-1.0)
