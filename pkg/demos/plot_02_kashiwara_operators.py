"""
Kashiwara operators Omega_psi and Omega_phi
===========================================

Omega_psi(k) strips one lowering mode and shifts the degree by k.  With
symbolic gamma (c = gamma^(1/2)) the relations between the operators hold
exactly; the printed check below runs a small window of them.
"""

from imverma.kashiwara import RELATION_IDS, omega_phi, omega_psi, verify_relation
from imverma.pbw import Element, all_monomials

e = Element.monomial([0, 0])
print("Omega_psi(0) [0,0]          =", omega_psi(0, e))
print("Omega_psi(0) [0,0], gamma=1 =", omega_psi(0, e, "one"))
print("Omega_phi(0) [0,0], gamma=1 =", omega_phi(0, e, "one"))
print("Omega_psi(1) [1,0], gamma=1 =", omega_psi(1, Element.monomial([1, 0]), "one"))

monos = all_monomials(2, -2, 2)
for rel in RELATION_IDS:
    rep = verify_relation(rel, range(-3, 4), range(-3, 4), monos)
    print(f"relation {rel}: {rep.checked} checks, {len(rep.mismatches)} mismatches")

# the printed delta coefficients of (a) and (e) only survive at gamma = 1
for rel in ("a_printed", "e_printed"):
    sym = verify_relation(rel, range(-3, 4), range(-3, 4), monos)
    one = verify_relation(rel, range(-3, 4), range(-3, 4), monos, gamma="one")
    print(f"{rel}: symbolic ok={sym.ok}, gamma=1 ok={one.ok}")
