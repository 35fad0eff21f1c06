import math

import numpy as np
import pytest

import wqpe


def test_version():
    assert wqpe.__version__.count(".") == 2


def test_filter_anchors():
    assert abs(wqpe.filter_rect(0.0, 6) - 1.0) < 1e-15
    assert abs(abs(wqpe.filter_cosine(0.5, 6)) ** 2 - 0.5) < 1e-12
    assert abs(wqpe.filter_cosine_plus(0.0, 6) - 1.0) < 1e-12
    assert abs(wqpe.filter_cosine_plus(1.0, 6) - 0.5) < 1e-12


def test_window_amplitudes_are_normalized():
    for kind in ("rect", "cos"):
        w = np.asarray(wqpe.window_amplitudes(5, kind))
        assert w.shape == (32,)
        assert abs(np.sum(np.abs(w) ** 2) - 1.0) < 1e-12


def test_analytic_distribution():
    probs = np.asarray(wqpe.analytic_distribution(0.1, 6, 0, "cos"))
    assert probs.shape == (64,)
    assert abs(probs.sum() - 1.0) < 1e-12
    assert int(np.argmax(probs)) - 32 == round(0.1 * 64)


def test_error_rate_and_qubits():
    assert wqpe.error_rate(10, 4, -0.3, "cos") < wqpe.error_rate(10, 4, -0.3, "rect")
    assert wqpe.min_extra_qubits(0.001, "rect") == 9
    assert wqpe.min_extra_qubits(0.001, "cos") == 3
    check = wqpe.tail_bound(8, 3)
    assert check["holds"] and check["empirical"] < check["bound"]


def test_thirring_two_site_anchor():
    h = np.asarray(wqpe.thirring_hamiltonian(2, 1.0, 0.0))
    assert h.shape == (4, 4)
    assert abs(np.linalg.eigvalsh(h)[0] + math.sqrt(5) / 2) < 1e-12


def test_trotter_error_scaling():
    e1 = wqpe.trotter_error(4, 1.0, 0.5, 1)
    e2 = wqpe.trotter_error(4, 1.0, 0.5, 2)
    assert 3.0 <= e1 / e2 <= 5.0


def test_contamination_sweep_rows():
    res = wqpe.contamination_sweep(sites=2, m=5, r_max=3, layers=1)
    assert len(res["rows"]) == 6
    assert {row["window"] for row in res["rows"]} == {"rect", "cos"}
    assert 0.0 < res["overlap"] <= 1.0


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        wqpe.window_amplitudes(20, "cos")
    with pytest.raises(ValueError):
        wqpe.filter_rect(0.0, 40)


def test_cli_in_process():
    code, out, err = wqpe.run_cli(["qpe", "qubits", "--e", "0.001"])
    assert code == 0 and err == ""
    lines = [line for line in out.splitlines() if not line.startswith("#")]
    assert lines[0] == "window,p,m"
    code, _, _ = wqpe.run_cli(["bogus"])
    assert code == 2
