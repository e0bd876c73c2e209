# Brute-force check: integrate the regularised Wightman function directly and
# extrapolate eps -> 0, then compare with the closed forms.
import math
import time

from udw_coherence import GeometryConfig, QuadratureSettings, oracle_C, oracle_P, oracle_X, pair_amplitudes
from udw_coherence import transition_probability

settings = QuadratureSettings()
print("eps schedule:", ", ".join(f"{e:.2e}" for e in settings.epsilon_schedule))

res = oracle_P(0.1, 1.0, settings)
print("\nP(gap 0.1, z 1)")
for eps, v in zip(settings.epsilon_schedule, res.per_epsilon):
    print(f"  eps {eps:.2e}: {v.real:.12f}")
print(f"  extrapolated   {res.value.real:.12f} +- {res.error:.1e}")
print(f"  closed form    {transition_probability(0.1, 1.0):.12f}")

config = GeometryConfig.parallel((0.1, 0.3, 0.5), 1.0, 1.0)
a, b = config.pair("AB")
amp = pair_amplitudes(a, b)
print("\nC_AB oracle", oracle_C(a, b).value, " closed", amp.c)
print("X_AB oracle", oracle_X(a, b).value, " closed", amp.x)

# the reduced 1-D form against the literal double integral
t0 = time.perf_counter()
direct = oracle_X(a, b, QuadratureSettings(mode="direct"))
print(f"\nX_AB from the 2-D integral: {direct.value:.10e} ({time.perf_counter() - t0:.1f} s)")

# far from the mirror the correction is small but clearly not zero
far = oracle_P(0.1, 20.0)
free = oracle_P(0.1, math.inf)
print(f"\nP(z=20) - P(free) = {far.value.real - free.value.real:.3e}  (error {far.error + free.error:.1e})")
