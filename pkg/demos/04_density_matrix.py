# The joint state of A, B, C at order lambda^2, its reductions, and the
# additivity of l1 coherence over the three pairs.
import numpy as np

from udw_coherence import GeometryConfig, additivity_check, reduce_pair, state_from_config
from udw_coherence.state import BASIS_LABELS, format_state, l1_coherence, reduce_single

config = GeometryConfig.orthogonal((0.1, 0.1, 0.1), L=1.0, dz=0.5)
state = state_from_config(config, lam=0.1)

print("basis:", " ".join(BASIS_LABELS))
print(format_state(state))
print("nonzero pattern:")
print((np.abs(state.rho) > 0).astype(int))

print("\ntrace", np.trace(state.rho).real, " min eigenvalue", state.min_eigenvalue)

for pair in ("AB", "BC", "AC"):
    r = reduce_pair(state, pair)
    print(f"\nrho_{pair}: l1 = {l1_coherence(r):.6e}")
    print(np.round(r, 8))
    print(f"  single {pair[0]}: diag {np.diag(reduce_single(r, 0)).real}")

lhs, rhs, residual = additivity_check(state)
print(f"\nsum of pair coherences {lhs:.15e}\ntripartite coherence    {rhs:.15e}\nresidual {residual:.1e}")
