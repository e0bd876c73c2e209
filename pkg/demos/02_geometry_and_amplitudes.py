# Placing three detectors beside the mirror and reading off P, C and X.
import math

from udw_coherence import GeometryConfig, all_pair_amplitudes, f_aux, probabilities

gaps = (0.1, 0.2, 0.3)  # Omega * sigma for A, B, C

for kind in ("parallel", "orthogonal"):
    config = GeometryConfig(kind, gaps, L=1.0, dz=1.0)
    print(f"\n{kind}: positions {config.positions}")
    for name in ("AB", "BC", "AC"):
        d = config.distances(name)
        print(f"  {name}: direct {d.direct:.4f}  image {d.image:.4f}")
    p = probabilities(config)
    print(f"  P_A, P_B, P_C = {p.p_a:.6e}, {p.p_b:.6e}, {p.p_c:.6e}")
    for name, amp in all_pair_amplitudes(config).items():
        print(f"  C_{name} = {amp.c.real:+.6e}   X_{name} = {amp.x:+.6e}")

# The auxiliary function falls off like 2 e^{-S^2/4} / (sqrt(pi) d^2):
# the growth of erf along the imaginary axis cancels the Gaussian envelope.
print("\n   d     f(d; 0.2)      2e^{-S^2/4}/(sqrt(pi) d^2)")
for d in (1, 5, 20, 100):
    print(f"{d:5d}  {f_aux(d, 0.2):.6e}   {2 * math.exp(-0.01) / (math.sqrt(math.pi) * d * d):.6e}")

# Without the mirror only the direct terms remain
free = GeometryConfig.parallel(gaps, 1.0, 1.0, boundary=False)
print("\nfree space C_AB =", all_pair_amplitudes(free)["AB"].c.real)
