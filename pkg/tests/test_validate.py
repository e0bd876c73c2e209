import math

from udw_coherence.closed_form import _amplitudes
from udw_coherence.geometry import GeometryConfig
from udw_coherence.oracle import QuadratureSettings
from udw_coherence.validate import literal_bc_amplitudes, run_validate, validation_configs


def test_grid_shape():
    configs = list(validation_configs())
    assert len(configs) == 4 * 4 * 2
    assert all(c.L == c.dz for c in configs)
    assert {c.gaps[2] - c.gaps[1] for c in configs} == {0.5}


def test_single_point_free_space():
    report = run_validate(gaps=(0.0,), distances=(1.0,), geometries=("parallel",), boundary=False)
    assert report.passed
    p = [c for c in report.checks if c.quantity == "P_A"][0]
    assert abs(p.oracle - 1 / (4 * math.pi)) < 1e-5
    assert "overall: PASS" in report.format()


def test_failure_marks_point_without_aborting():
    # a single-step quadrature that cannot stabilise
    bad = QuadratureSettings(grid=2, max_doublings=0)
    report = run_validate(bad, gaps=(0.1,), distances=(1.0,), geometries=("parallel",))
    assert not report.passed
    assert len(report.checks) == 9
    assert all(c.oracle is None for c in report.failures)
    assert "FAIL" in report.format()


def test_bc_audit_prefers_generic_distances():
    report = run_validate(gaps=(0.1, 1.0), distances=(1.0,), geometries=("orthogonal",))
    assert report.passed
    assert all(a["generic_ok"] and not a["literal_ok"] for a in report.audit)
    assert "matches oracle at 2/2" in report.audit_verdict()


def test_literal_reading_differs_only_in_image():
    config = GeometryConfig.orthogonal((0.1, 0.2, 0.3), 1.0, 1.0)
    lit = literal_bc_amplitudes(config)
    assert lit.distances.image == 3.0
    assert config.distances("BC").image == 5.0
    assert lit == _amplitudes(0.2, 0.3, lit.distances)
