# Coherence over the (gap_B, gap_C) plane with gap_A fixed: unequal gaps
# suppress it, and the maximum sits at the smallest equal gaps.
import numpy as np

from udw_coherence import GeometryConfig
from udw_coherence.sweep import SweepSpec, run_sweep

n = 40
for kind in ("parallel", "orthogonal"):
    config = GeometryConfig(kind, (0.1, 0.1, 0.1), L=1.0, dz=1.0)
    res = run_sweep(SweepSpec(config, "gapBC_grid", 0.1, 2.0, n, outputs=("C_l1",)))
    grid = res.column("C_l1").reshape(n, n)  # rows gap_B, columns gap_C
    best = res.argmax("C_l1")
    print(f"{kind}: max C_l1 {best['C_l1']:.6e} at gap_B = {best['gap_b']:.3f}, gap_C = {best['gap_c']:.3f}")
    gaps = np.linspace(0.1, 2.0, n)
    print("  gap_B = gap_C diagonal:", " ".join(f"{v:.3e}" for v in np.diag(grid)[::8]))
    print("  gap_B = 0.1 row:       ", " ".join(f"{v:.3e}" for v in grid[0, ::8]))
    print("  sampled at gaps        ", " ".join(f"{g:9.3f}" for g in gaps[::8]))
