import io
import math

import numpy as np
import pytest

from udw_coherence.geometry import GeometryConfig
from udw_coherence.oracle import oracle_C, oracle_P, oracle_X
from udw_coherence.sweep import (
    ALL_OUTPUTS,
    PointError,
    SweepError,
    SweepSpec,
    run_point,
    run_sweep,
)

PAR = GeometryConfig.parallel((0.1, 0.1, 0.1), 1.0, 1.0)
GOLDEN_C_L1 = 0.5582512710243726


def test_point_golden():
    row = run_point(PAR)
    assert tuple(row)[5:] == ALL_OUTPUTS
    assert abs(row["C_l1"] - GOLDEN_C_L1) < 1e-13
    assert row["additivity_residual"] < 1e-13


def test_golden_against_oracle():
    total = 0.0
    for name in ("AB", "BC", "AC"):
        a, b = PAR.pair(name)
        total += 2 * (abs(oracle_C(a, b).value) + abs(oracle_X(a, b).value))
    assert abs(total - GOLDEN_C_L1) < 1e-3 * GOLDEN_C_L1


def test_point_deterministic():
    assert run_point(PAR) == run_point(PAR)


def test_point_orthogonal_above_parallel():
    orth = PAR.with_params(kind="orthogonal")
    assert run_point(orth)["C_l1"] > run_point(PAR)["C_l1"]


def test_point_far_from_mirror():
    # mirror corrections at dz = 20 are ~1e-3 relative (algebraic tails), not 1e-10
    far = run_point(PAR.with_params(dz=20.0))
    free = run_point(PAR.with_params(boundary=False))
    rel = abs(far["C_l1"] - free["C_l1"]) / free["C_l1"]
    assert 1e-5 < rel < 1e-2
    assert abs(far["P_A"] - free["P_A"]) / free["P_A"] < 2e-3


def test_point_selected_outputs():
    row = run_point(PAR, outputs=["P_A", "C_l1"])
    assert list(row) == ["gap_a", "gap_b", "gap_c", "L", "dz", "P_A", "C_l1"]
    with pytest.raises(ValueError):
        run_point(PAR, outputs=["bogus"])


def test_point_error_carries_params():
    with pytest.raises(PointError) as info:
        run_point(PAR, lam=10.0)
    assert info.value.params["gap_a"] == 0.1
    assert "lambda" in str(info.value)


def test_spec_validation():
    with pytest.raises(ValueError):
        SweepSpec(PAR, "L_over_sigma", 1, 2, 1)
    with pytest.raises(ValueError):
        SweepSpec(PAR, "L_over_sigma", 2, 1, 5)
    with pytest.raises(ValueError):
        SweepSpec(PAR, "L_over_sigma", 0, 1, 5)
    with pytest.raises(ValueError):
        SweepSpec(PAR, "gapB", -1, 1, 5)
    with pytest.raises(ValueError):
        SweepSpec(PAR, "height", 0, 1, 5)


def test_sweep_rows_in_axis_order():
    res = run_sweep(SweepSpec(PAR, "L_over_sigma", 0.25, 6, 12))
    assert np.all(np.diff(res.column("L")) > 0)
    assert np.all(np.diff(res.column("C_l1")) < 0)


def test_sweep_header():
    out = io.StringIO()
    run_sweep(SweepSpec(PAR, "dz_over_sigma", 0.5, 2, 3, lam=0.1), out=out)
    text = out.getvalue()
    header = [ln for ln in text.splitlines() if ln.startswith("#")]
    keys = {ln[2:].split(":")[0] for ln in header}
    assert {"generated", "geometry", "boundary", "lambda", "axis", "fixed", "dz_note", "units"} <= keys
    assert "lambda: 0.1" in text
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert body[0].split(",")[:5] == ["gap_a", "gap_b", "gap_c", "L", "dz"]
    assert len(body) == 4
    assert all(len(v) == len("1.00000000000e-01") for v in body[1].split(",") if not v.startswith("-"))


def test_sweep_deterministic_and_worker_neutral():
    spec1 = SweepSpec(PAR, "gapC", 0.1, 2.0, 9)
    spec3 = SweepSpec(PAR, "gapC", 0.1, 2.0, 9, workers=3)
    a = run_sweep(spec1).to_csv(timestamp=False)
    b = run_sweep(spec1).to_csv(timestamp=False)
    c = run_sweep(spec3).to_csv(timestamp=False)
    assert a == b == c


def test_grid_axis_and_argmax():
    res = run_sweep(SweepSpec(PAR, "gapBC_grid", 0.1, 2.0, 5))
    assert len(res.rows) == 25
    best = res.argmax("C_l1")
    assert (best["gap_b"], best["gap_c"]) == (0.1, 0.1)
    assert any(h.startswith("argmax_C_l1") for h in res.header)


def test_sweep_aborts_with_coordinates():
    with pytest.raises(SweepError, match="gap_b"):
        run_sweep(SweepSpec(PAR, "L_over_sigma", 0.5, 1.0, 3, lam=8.0))


def test_general_geometry_sweep():
    gen = GeometryConfig.general((0.1, 0.1, 0.1), [(0, 0, 1), (1, 0, 1.5), (2, 1, 1)])
    res = run_sweep(SweepSpec(gen, "gapB", 0.1, 1.0, 4))
    assert any(h.startswith("positions") for h in res.header)
    with pytest.raises(ValueError):
        SweepSpec(gen, "L_over_sigma", 0.5, 1.0, 3)


def test_additivity_on_every_row():
    res = run_sweep(SweepSpec(PAR.with_params(kind="orthogonal"), "dz_over_sigma", 0.0, 6.0, 25))
    assert res.column("additivity_residual").max() < 1e-13
    assert math.isfinite(res.column("C_l1").sum())
