"""
Straightening words into PBW normal form
========================================

Words in the lowering modes x_i are rewritten into weakly decreasing order
with two quadratic rules.  Coefficients are printed in v = q^(1/2), so v^4
stands for q^2.
"""

from imverma.pbw import gap_measure, straighten

# adjacent indices just swap, picking up q^2
print("x0 x1       =", straighten([0, 1]))

# a gap of two produces a correction term
print("x0 x2       =", straighten([0, 2]))

# longer words: the normal form does not depend on where rewriting starts
w = [0, 3, -1, 2]
left, right = straighten(w, "leftmost"), straighten(w, "rightmost")
print("x0 x3 x-1 x2 has", len(left), "terms; strategies agree:", left == right)

# at q = 1 everything commutes and only the sorted word survives
print("at v = 1    =", left.subs_v1())

# termination: each rewrite lowers the sum of gaps over ascending pairs
print("gap measure of", w, "is", gap_measure(w))
