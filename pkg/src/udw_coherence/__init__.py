"""Coherence harvested by three static Unruh-DeWitt detectors beside a mirror.

Leading-order (lambda^2) joint state of detectors A, B, C coupled to a massless
scalar vacuum with a Dirichlet plane at z = 0, its l1-norm coherence, and a
brute-force quadrature oracle for every closed-form matrix element.
"""
from .closed_form import (
    PairAmplitudes,
    Probabilities,
    all_pair_amplitudes,
    f_aux,
    free_probability,
    g_aux,
    pair_amplitudes,
    probabilities,
    transition_probability,
)
from .geometry import DetectorSpec, GeometryConfig, GeometryKind, PairDistances, pair_distances
from .oracle import QuadratureSettings, oracle_C, oracle_P, oracle_X
from .special_fn import erf_complex, erfc_real, erfc_scaled
from .state import (
    TripartiteState,
    additivity_check,
    assemble_state,
    l1_coherence,
    reduce_pair,
    state_from_config,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "erf_complex",
    "erfc_real",
    "erfc_scaled",
    "DetectorSpec",
    "GeometryConfig",
    "GeometryKind",
    "PairDistances",
    "pair_distances",
    "PairAmplitudes",
    "Probabilities",
    "f_aux",
    "g_aux",
    "free_probability",
    "transition_probability",
    "pair_amplitudes",
    "probabilities",
    "all_pair_amplitudes",
    "QuadratureSettings",
    "oracle_C",
    "oracle_X",
    "oracle_P",
    "TripartiteState",
    "assemble_state",
    "state_from_config",
    "reduce_pair",
    "l1_coherence",
    "additivity_check",
]
