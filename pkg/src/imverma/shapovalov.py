"""The symmetric bilinear form on the negative half and its Gram matrices.

The form is fixed by ``(1, 1) = 1`` and the adjunction
``(x_m a, b) = (a, Omega_psi(-m) b)``; it is evaluated at ``gamma = 1`` by
peeling the leftmost factor of the first argument.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence

from .kashiwara import _psi_mono
from .linalg import determinant
from .pbw import Element, Monomial, WeightWindow, format_monomial, grade, is_pbw
from .qcoeff import ONE, ZERO, Scalar, g_coeff, valuation

__all__ = [
    "pair",
    "pair_monomials",
    "pair_closed_n2",
    "pair_unrestricted",
    "gram",
    "det_witness",
    "GramMatrix",
    "IntegralityError",
]


class IntegralityError(AssertionError):
    """A pairing of PBW monomials left Z[q^2]."""


def _check_integral(s: Scalar, a, b) -> None:
    if s.is_zero():
        return
    if not s.is_polynomial() or s.has_c():
        raise IntegralityError(f"({a}, {b}) = {s} is not a polynomial")
    for (e, _), x in s.num.items():
        if e < 0 or e % 4 or not isinstance(x, int):
            raise IntegralityError(f"({a}, {b}) = {s} is not in Z[q^2]")


@lru_cache(maxsize=None)
def pair_monomials(a: Monomial, b: Monomial) -> Scalar:
    """``(x_a, x_b)`` for PBW monomials ``a``, ``b``."""
    if len(a) != len(b) or sum(a) != sum(b):
        return ZERO
    if not a:
        return ONE
    head, tail = a[0], a[1:]
    out = ZERO
    for w, c in _psi_mono(-head, b, False).items():
        p = pair_monomials(tail, w)
        if not p.is_zero():
            out = out + c * p
    _check_integral(out, a, b)
    return out


@lru_cache(maxsize=None)
def pair_unrestricted(a: Monomial, b: Monomial) -> Scalar:
    """The adjunction recursion with no grade shortcut (used to test orthogonality).

    ``(1, x_m b') = (x_m b', 1) = (b', Omega_psi(-m) 1) = 0`` closes the
    recursion when the first argument runs out first.
    """
    if not a:
        return ONE if not b else ZERO
    out = ZERO
    for w, c in _psi_mono(-a[0], b, False).items():
        p = pair_unrestricted(a[1:], w)
        if not p.is_zero():
            out = out + c * p
    return out


def pair(a: Element, b: Element) -> Scalar:
    """Bilinear form at ``gamma = 1``; mixed-grade inputs are paired grade by grade."""
    out = ZERO
    for ma, ca in a.terms.items():
        ga = grade(ma)
        for mb, cb in b.terms.items():
            if grade(mb) != ga:
                continue
            p = pair_monomials(ma, mb)
            if not p.is_zero():
                out = out + ca.subs_c1() * cb.subs_c1() * p
    return out


def _heaviside(n: int) -> int:
    return 1 if n >= 0 else 0


def pair_closed_n2(m1: int, m2: int, k1: int, k2: int) -> Scalar:
    """Closed form of ``(x_m1 x_m2, x_k1 x_k2)`` for ordered pairs of equal degree."""
    if m1 < m2 or k1 < k2:
        raise ValueError("both index pairs must be weakly decreasing")
    if m1 + m2 != k1 + k2:
        raise ValueError("index sums must agree")
    out = ONE if (m1, m2) == (k1, k2) else ZERO
    t = k2 - m1
    if _heaviside(t) and m2 - k1 == t:
        out = out + g_coeff(t)
    return out


@dataclass
class GramMatrix:
    window: WeightWindow
    basis: List[Monomial]
    entries: List[List[Scalar]]

    @property
    def size(self) -> int:
        return len(self.basis)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(i))

    def mod_q2(self) -> List[List[int]]:
        """Entries reduced mod ``q^2 Z[[q]]`` (constant terms; entries lie in ``Z[q^2]``)."""
        return [[e.constant_term() for e in row] for row in self.entries]

    def congruent_to_identity(self) -> bool:
        n = self.size
        red = self.mod_q2()
        return all(red[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def determinant(self) -> Scalar:
        return determinant(self.entries) if self.entries else ONE

    def to_json_obj(self, mod_q2: bool = False) -> dict:
        out = {
            "window": self.window.to_json_obj(),
            "basis": [list(m) for m in self.basis],
            "entries": [[str(e) for e in row] for row in self.entries],
        }
        if mod_q2:
            out["mod_q2"] = self.mod_q2()
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [format_monomial(m) for m in self.basis])
        for m, row in zip(self.basis, self.entries):
            w.writerow([format_monomial(m)] + [str(e) for e in row])
        return buf.getvalue()


def gram(window: WeightWindow) -> GramMatrix:
    basis = window.basis()
    entries = [[pair_monomials(a, b) for b in basis] for a in basis]
    return GramMatrix(window, basis, entries)


def det_witness(g: GramMatrix) -> bool:
    """True when ``det`` has valuation 0 and constant term 1 (nondegeneracy witness)."""
    d = g.determinant()
    return not d.is_zero() and valuation(d) == 0 and d.constant_term() == 1
