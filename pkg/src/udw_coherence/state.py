"""O(lambda^2) three-detector density matrix and its l1-norm coherence.

Basis order (A, B, C), as used throughout:

    |000>, |001>, |010>, |100>, |011>, |101>, |110>, |111>

which is *not* the binary order; ``BASIS_TO_BINARY`` maps between the two.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_form import PairAmplitudes, Probabilities, all_pair_amplitudes, probabilities
from .geometry import PAIRS, GeometryConfig

__all__ = [
    "BASIS_LABELS",
    "BASIS_TO_BINARY",
    "PerturbativeRegimeError",
    "TripartiteState",
    "assemble_state",
    "state_from_config",
    "reduce_pair",
    "reduce_single",
    "l1_coherence",
    "additivity_check",
    "format_state",
]

BASIS_LABELS = ("000", "001", "010", "100", "011", "101", "110", "111")
BASIS_TO_BINARY = np.array([int(s, 2) for s in BASIS_LABELS])

# (row, col) of the lower-triangle entry holding each amplitude
_C_SLOT = {"BC": (2, 1), "AC": (3, 1), "AB": (3, 2)}
_X_SLOT = {"BC": (4, 0), "AC": (5, 0), "AB": (6, 0)}
_KEEP = {"AB": (0, 1), "BC": (1, 2), "AC": (0, 2)}


class PerturbativeRegimeError(ValueError):
    pass


@dataclass(frozen=True)
class TripartiteState:
    rho: np.ndarray
    probs: Probabilities
    pairs: dict

    @property
    def min_eigenvalue(self) -> float:
        """Smallest eigenvalue; may be slightly negative at this order (diagnostic only)."""
        return float(np.linalg.eigvalsh(self.rho)[0])

    def coherence(self) -> float:
        return l1_coherence(self.rho)


def assemble_state(probs: Probabilities, pairs: dict[str, PairAmplitudes]) -> TripartiteState:
    p_a, p_b, p_c = probs
    total = p_a + p_b + p_c
    if not total < 1:
        raise PerturbativeRegimeError(
            f"P_A + P_B + P_C = {total:.4g} >= 1; reduce lambda or increase the gaps"
        )
    rho = np.zeros((8, 8), dtype=complex)
    rho[0, 0] = 1 - total
    rho[1, 1] = p_c
    rho[2, 2] = p_b
    rho[3, 3] = p_a
    for name in PAIRS:
        amp = pairs[name]
        i, j = _C_SLOT[name]
        rho[i, j] = amp.c
        rho[j, i] = np.conj(amp.c)
        i, j = _X_SLOT[name]
        rho[i, j] = amp.x
        rho[j, i] = np.conj(amp.x)
    rho.setflags(write=False)
    return TripartiteState(rho=rho, probs=probs, pairs=dict(pairs))


def state_from_config(config: GeometryConfig, lam: float = 1.0) -> TripartiteState:
    probs = probabilities(config).rescale(lam)
    pairs = {k: v.rescale(lam) for k, v in all_pair_amplitudes(config).items()}
    return assemble_state(probs, pairs)


def _as_binary(rho):
    idx = np.argsort(BASIS_TO_BINARY)
    return np.asarray(rho)[np.ix_(idx, idx)]


def reduce_pair(state, pair: str) -> np.ndarray:
    """Trace out the detector not in ``pair``; result in basis |00>,|01>,|10>,|11>.

    The first qubit of the result is the first letter of ``pair``.
    """
    rho = state.rho if isinstance(state, TripartiteState) else np.asarray(state)
    if pair not in _KEEP:
        raise ValueError(f"pair must be one of {PAIRS}")
    t = _as_binary(rho).reshape((2,) * 6)
    keep = _KEEP[pair]
    out = 3 - sum(keep)
    letters = "abc"
    rows = "".join(letters[k] if k != out else "x" for k in range(3))
    cols = "".join(letters[k].upper() if k != out else "x" for k in range(3))
    res = "".join(letters[k] for k in keep) + "".join(letters[k].upper() for k in keep)
    return np.einsum(f"{rows}{cols}->{res}", t).reshape(4, 4)


def reduce_single(matrix: np.ndarray, keep: int = 0) -> np.ndarray:
    """Partial trace of a two-qubit matrix down to qubit ``keep`` (0 or 1)."""
    t = np.asarray(matrix).reshape(2, 2, 2, 2)
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    return np.einsum("jijk->ik", t)


def l1_coherence(matrix) -> float:
    """Sum of |rho_ij| over all off-diagonal entries."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"need a square matrix, got shape {m.shape}")
    mag = np.abs(m)
    return float(mag.sum() - np.trace(mag))


def additivity_check(state) -> tuple[float, float, float]:
    """(sum of pair coherences, tripartite coherence, |difference|)."""
    lhs = math.fsum(l1_coherence(reduce_pair(state, p)) for p in PAIRS)
    rhs = l1_coherence(state.rho if isinstance(state, TripartiteState) else state)
    return lhs, rhs, abs(lhs - rhs)


def format_state(state: TripartiteState) -> str:
    """Labelled rows of (re, im) pairs, 12 significant digits."""
    lines = ["# row " + " ".join(f"re({c}) im({c})" for c in BASIS_LABELS)]
    for label, row in zip(BASIS_LABELS, state.rho):
        cells = " ".join(f"{v.real:.11e} {v.imag:.11e}" for v in row)
        lines.append(f"{label} {cells}")
    return "\n".join(lines) + "\n"
