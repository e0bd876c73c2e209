import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from udw_coherence.closed_form import PairAmplitudes, Probabilities
from udw_coherence.geometry import GeometryConfig, PairDistances
from udw_coherence.state import (
    BASIS_LABELS,
    PerturbativeRegimeError,
    additivity_check,
    assemble_state,
    format_state,
    l1_coherence,
    reduce_pair,
    reduce_single,
    state_from_config,
)

DIST = PairDistances(1.0, 2.0)
PAIRS = ("AB", "BC", "AC")


def make(p=(0.0, 0.0, 0.0), c=None, x=None):
    c = c or {k: 0j for k in PAIRS}
    x = x or {k: 0j for k in PAIRS}
    return assemble_state(Probabilities(*p), {k: PairAmplitudes(c[k], x[k], DIST) for k in PAIRS})


def pattern():
    m = np.zeros((8, 8), dtype=bool)
    for i in range(4):
        m[i, i] = True
    for i, j in [(2, 1), (3, 1), (3, 2), (4, 0), (5, 0), (6, 0)]:
        m[i, j] = m[j, i] = True
    return m


def test_vacuum():
    s = make()
    expect = np.zeros((8, 8))
    expect[0, 0] = 1
    assert np.array_equal(s.rho, expect)


def test_pattern_audit():
    s = make((0.01, 0.01, 0.01), {k: 0.001 for k in PAIRS}, {k: 0.001 for k in PAIRS})
    assert np.all(s.rho[~pattern()] == 0)
    assert np.all(s.rho[pattern() & ~np.eye(8, dtype=bool)] == 0.001)
    assert s.rho[0, 0] == 1 - 0.03


def test_named_entries():
    c = {"AB": 1e-3 + 2e-4j, "BC": 3e-3, "AC": -1e-3j}
    x = {"AB": 5e-3, "BC": 6e-3 + 1e-3j, "AC": 7e-3}
    s = make((0.01, 0.02, 0.03), c, x)
    idx = {lab: i for i, lab in enumerate(BASIS_LABELS)}
    assert s.rho[idx["100"], idx["100"]] == 0.01
    assert s.rho[idx["010"], idx["010"]] == 0.02
    assert s.rho[idx["001"], idx["001"]] == 0.03
    assert s.rho[idx["100"], idx["010"]] == c["AB"]
    assert s.rho[idx["010"], idx["001"]] == c["BC"]
    assert s.rho[idx["100"], idx["001"]] == c["AC"]
    assert s.rho[idx["110"], idx["000"]] == x["AB"]
    assert s.rho[idx["011"], idx["000"]] == x["BC"]
    assert s.rho[idx["101"], idx["000"]] == x["AC"]


def test_rho_is_read_only():
    s = make((0.01, 0.01, 0.01))
    with pytest.raises(ValueError):
        s.rho[0, 0] = 2


def test_regime_error():
    with pytest.raises(PerturbativeRegimeError, match="lambda"):
        make((0.5, 0.3, 0.2))


small = st.floats(0, 0.2)
amp = st.complex_numbers(max_magnitude=0.05, allow_nan=False, allow_infinity=False)


@st.composite
def states(draw):
    p = tuple(draw(small) for _ in range(3))
    c = {k: draw(amp) for k in PAIRS}
    x = {k: draw(amp) for k in PAIRS}
    return make(p, c, x), p, c, x


@settings(max_examples=1000, deadline=None)
@given(states())
def test_structural_invariants(data):
    s, p, c, x = data
    rho = s.rho
    assert abs(np.trace(rho) - 1) < 1e-15
    assert np.max(np.abs(rho - rho.conj().T)) < 1e-15
    assert np.all(rho[~pattern()] == 0)
    _, _, residual = additivity_check(s)
    assert residual < 1e-13
    total = 2 * sum(abs(v) for v in list(c.values()) + list(x.values()))
    assert abs(s.coherence() - total) < 1e-15


@settings(max_examples=200, deadline=None)
@given(states())
def test_pair_reductions(data):
    s, p, c, x = data
    pa, pb, pc = p
    probs = {"A": pa, "B": pb, "C": pc}
    for name in PAIRS:
        r = reduce_pair(s, name)
        d1, d2 = probs[name[0]], probs[name[1]]
        assert abs(np.trace(r) - 1) < 1e-15
        assert np.allclose(np.diag(r).real, [1 - d1 - d2, d2, d1, 0], atol=1e-15)
        assert r[2, 1] == c[name]
        assert r[3, 0] == x[name]
        for keep, label in ((0, name[0]), (1, name[1])):
            single = reduce_single(r, keep)
            assert np.allclose(single, np.diag([1 - probs[label], probs[label]]), atol=1e-15)


@settings(max_examples=100, deadline=None)
@given(states(), st.floats(0, 2 * math.pi))
def test_phase_invariance(data, phi):
    s, p, c, x = data
    c2 = dict(c, AB=c["AB"] * cmath.exp(1j * phi))
    x2 = dict(x, BC=x["BC"] * cmath.exp(1j * phi))
    assert abs(make(p, c2, x2).coherence() - s.coherence()) < 1e-15


@settings(max_examples=100, deadline=None)
@given(states())
def test_label_permutation(data):
    s, (pa, pb, pc), c, x = data
    # swap A <-> C: AB -> CB (= BC conjugated), BC -> BA, AC -> CA
    c2 = {"AB": np.conj(c["BC"]), "BC": np.conj(c["AB"]), "AC": np.conj(c["AC"])}
    x2 = {"AB": x["BC"], "BC": x["AB"], "AC": x["AC"]}
    assert abs(make((pc, pb, pa), c2, x2).coherence() - s.coherence()) < 1e-15


def test_l1_examples():
    assert l1_coherence(np.diag([0.3, 0.7])) == 0
    assert abs(l1_coherence(np.array([[0.5, 0.3 + 0.4j], [0.3 - 0.4j, 0.5]])) - 1.0) < 1e-15
    with pytest.raises(ValueError):
        l1_coherence(np.zeros((2, 3)))


def test_zero_interaction_additivity():
    assert additivity_check(make()) == (0.0, 0.0, 0.0)


def test_lambda_scaling_of_coherence():
    config = GeometryConfig.parallel((0.1, 0.2, 0.3), 1, 1)
    base = state_from_config(config).coherence()
    for lam in (0.01, 0.1):
        ratio = state_from_config(config, lam).coherence() / base
        assert abs(ratio - lam * lam) < 1e-12 * lam * lam


def test_hermitian_pairs():
    s = state_from_config(GeometryConfig.orthogonal((0.1, 0.2, 0.3), 1, 0.5))
    assert np.array_equal(s.rho, s.rho.conj().T)


def test_min_eigenvalue_is_diagnostic_only():
    # the truncated state is allowed to be slightly non-positive
    s = state_from_config(GeometryConfig.parallel((0.1, 0.1, 0.1), 1, 1))
    assert s.min_eigenvalue < 0
    assert np.isfinite(s.min_eigenvalue)


def test_format_state():
    text = format_state(make((0.01, 0.02, 0.03), {k: 0.001 for k in PAIRS}, {k: 0.002j for k in PAIRS}))
    lines = text.strip().split("\n")
    assert lines[0].startswith("#")
    assert [ln.split()[0] for ln in lines[1:]] == list(BASIS_LABELS)
    row = lines[1].split()
    assert len(row) == 17
    assert row[1] == "9.40000000000e-01"
