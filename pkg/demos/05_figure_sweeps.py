# Coherence against separation and against height above the mirror, for both
# alignments. Columns are printed rather than plotted.
import io

from udw_coherence import GeometryConfig
from udw_coherence.sweep import SweepSpec, run_sweep

GAP_A = 0.1
gap_sets = [(0.1, 0.1), (0.2, 0.3)]


def table(axis, start, stop, steps, **fixed):
    cols = {}
    for kind in ("parallel", "orthogonal"):
        for gb, gc in gap_sets:
            config = GeometryConfig(kind, (GAP_A, gb, gc), **fixed)
            res = run_sweep(SweepSpec(config, axis, start, stop, steps, outputs=("C_l1",)))
            cols[f"{kind[:4]} {gb},{gc}"] = res.column("C_l1")
            x = res.column("L" if axis == "L_over_sigma" else "dz")
    print(f"{axis:>13} " + " ".join(f"{k:>13}" for k in cols))
    for i, v in enumerate(x):
        print(f"{v:13.3f} " + " ".join(f"{c[i]:13.6e}" for c in cols.values()))


print("C_l1 vs L/sigma at dz/sigma = 1 (orthogonal sits above parallel)")
table("L_over_sigma", 0.25, 6.0, 12, dz=1.0)

print("\nC_l1 vs dz/sigma at L/sigma = 1 (parallel starts at zero, orthogonal does not)")
table("dz_over_sigma", 0.0, 6.0, 13, L=1.0)

# a sweep as the CSV it writes, header included
buf = io.StringIO()
run_sweep(SweepSpec(GeometryConfig.parallel((0.1, 0.2, 0.3), 1.0, 1.0), "dz_over_sigma", 0.5, 2.0, 4), out=buf,
          timestamp=False)
print("\n" + buf.getvalue())
