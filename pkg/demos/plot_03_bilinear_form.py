"""
The bilinear form and its Gram matrices
=======================================

The form is pinned down by (1, 1) = 1 and the adjunction
(x_m a, b) = (a, Omega_psi(-m) b).  On every weight window its Gram matrix
is symmetric, congruent to the identity mod q^2, and has determinant with
constant term 1.
"""

from imverma.pbw import WeightWindow
from imverma.shapovalov import det_witness, gram, pair_closed_n2, pair_monomials

g = gram(WeightWindow(2, 0, -2, 2))
print("basis:", g.basis)
for row in g.entries:
    print("  ", [str(x) for x in row])
print("mod q^2:", g.mod_q2())
print("det =", g.determinant(), " witness:", det_witness(g))

# length two has a closed form with a Heaviside term
print("(x1 x-1, x0 x0) recursion:", pair_monomials((1, -1), (0, 0)))
print("(x1 x-1, x0 x0) closed   :", pair_closed_n2(1, -1, 0, 0))
print("(x1 x1, x1 x1)   recursion:", pair_monomials((1, 1), (1, 1)))
print("(x1 x1, x1 x1)   closed   :", pair_closed_n2(1, 1, 1, 1))

print(g.to_csv())
