"""
The imaginary crystal basis
===========================

Mod q, lowering modes and Omega_psi send a signed PBW monomial to another
signed monomial or to zero.  The closed formulas are compared here with the
full module computation reduced mod q, and a small crystal graph is
exported as DOT.
"""

from imverma.crystal import (
    CrystalNode,
    crystal_graph,
    crystal_omega,
    crystal_oracle_check,
    crystal_xminus,
    lattice_membership,
    verify_crystal_axioms,
)
from imverma.pbw import all_monomials
from imverma.qcoeff import ONE, Q, q_int
from imverma.verma import HighestWeight

b = CrystalNode((1, 0))
for m in (2, 0, -5):
    print(f"x~_{m} {b} =", crystal_xminus(m, b))
for k in (-1, 1, 5):
    print(f"Omega~({k}) {b} =", crystal_omega(k, b))

lam = HighestWeight(1)
basis = all_monomials(3, -3, 3)
oracle = crystal_oracle_check(lam, basis, range(-4, 5), range(-4, 5))
axioms = verify_crystal_axioms(lam, basis, range(-4, 5), range(-4, 5))
print("oracle:", oracle.checked, "checks,", len(oracle.failures), "mismatches")
print("axioms:", axioms.checked, "checks,", len(axioms.failures), "violations")

for s in (ONE / q_int(2), ONE / (Q - ONE), ONE / (ONE + Q + Q * Q)):
    print(s, lattice_membership(s).to_json_obj())

print(crystal_graph(all_monomials(2, -1, 1), range(-1, 2)).to_dot())
