"""
Reduced imaginary Verma modules and the simplicity boundary
===========================================================

Raising modes act through the Drinfeld commutator with the Cartan currents.
For lambda(h) != 0 no window holds a singular vector; at lambda(h) = 0 every
length-one vector is singular.
"""

from imverma.pbw import WeightWindow
from imverma.verma import (
    HighestWeight,
    ModuleVector,
    act_xminus,
    act_xplus,
    find_singular_vectors,
    local_nilpotency_exponent,
)

lam = HighestWeight(1)
v = act_xminus(0, act_xminus(2, ModuleVector.highest(lam)))
print("x0 x2 v       =", v.payload)
print("x+_(-2) on it =", act_xplus(-2, v).payload)
print("x+_0 nilpotency exponent:", local_nilpotency_exponent(0, v))

for h in (1, -1, 2, 5):
    w = HighestWeight(h)
    found = sum(
        len(find_singular_vectors(WeightWindow(k, m, -3, 3), w))
        for k in (1, 2)
        for m in range(-3 * k, 3 * k + 1)
    )
    print(f"lambda(h) = {h}: {found} singular vectors")

zero = HighestWeight(0, boundary_study=True)
for m in (-1, 0, 1):
    sv = find_singular_vectors(WeightWindow(1, m, -3, 3), zero)
    print(f"lambda(h) = 0, window (1, {m}):", [str(s.payload) for s in sv])
