# The complex error function, and why the closed forms use its scaled complement.
import cmath

import numpy as np

from udw_coherence import erf_complex, erfc_real, erfc_scaled

print("erf(1)      =", erf_complex(1))
print("erf(i)      =", erf_complex(1j))
print("erf(1+i)    =", erf_complex(1 + 1j))
print("erfc(10)    =", erfc_real(10.0))

# Along the imaginary direction erf grows like exp(y^2): by y = 25 it is ~1e270
for y in (5, 15, 25):
    print(f"|erf(0.1 + {y}i)| = {abs(erf_complex(complex(0.1, y))):.3e}")

# The scaled complement exp(z^2) erfc(z) stays O(1/|z|), so products like
# exp(-d^2/4) * erf(S/2 + i d/2) can be formed without overflow.
for d in (1.0, 10.0, 100.0, 1000.0):
    w = erfc_scaled(complex(0.1, -d / 2))
    print(f"d = {d:7.1f}   erfcx(0.1 - i d/2) = {w:.6e}")

# derivative check on a few random points
rng = np.random.default_rng(0)
h = 1e-5
for z in 3 * rng.random(3) * np.exp(2j * np.pi * rng.random(3)):
    fd = (erf_complex(z + h) - erf_complex(z - h)) / (2 * h)
    print(f"z = {z:.3f}  |fd - 2/sqrt(pi) e^-z^2| = {abs(fd - 2 / np.sqrt(np.pi) * cmath.exp(-z * z)):.1e}")
