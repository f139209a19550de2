"""Reduced imaginary Verma modules at ``gamma = 1`` and finite direct sums of them.

A vector is an :class:`~imverma.pbw.Element` acting on the highest weight
vector ``v_lam``.  Lowering modes act by left multiplication; ``Omega_psi``
acts on the payload.  The raising modes come from the commutator

    x+_k x-_l - x-_l x+_k = (psi(k+l) - phi(k+l)) / (q - 1/q)

where the Cartan currents ``psi(j)`` (``j >= 0``) and ``phi(j)`` (``j <= 0``)
act on words through

    psi(j) x_m = sum_{r=0}^{j}  g'(r) x_{m+r} psi(j-r)
    phi(j) x_m = sum_{r=0}^{-j} g(r)  x_{m-r} phi(j+r)

and on ``v_lam`` by ``psi(j) v = delta_{j,0} q^lam(h) v``,
``phi(j) v = delta_{j,0} q^-lam(h) v`` (the Heisenberg modes kill ``v_lam``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from . import kashiwara
from .linalg import nullspace
from .pbw import Element, Monomial, WeightWindow, _add_into, _straighten_left, grade
from .qcoeff import ONE, ZERO, Scalar, g_coeff, g_coeff_dual, q_int, q_power

__all__ = [
    "HighestWeight",
    "ModuleVector",
    "CategoryObject",
    "SumVector",
    "act_xminus",
    "act_omega",
    "act_omega_phi",
    "act_psi_current",
    "act_phi_current",
    "act_xplus",
    "xplus_labels",
    "local_nilpotency_exponent",
    "find_singular_vectors",
    "singular_labels",
    "direct_sum",
]


@dataclass(frozen=True)
class HighestWeight:
    """``lam(h)``, ``lam(d)``; ``lam(c) = 0`` always.

    ``lam(h) = 0`` is only accepted with ``boundary_study=True``.  Since
    ``K`` acts by ``q**lam(h)``, ``2 * lam(h)`` must be an integer.
    """

    h: Fraction
    d: Fraction = Fraction(0)
    boundary_study: bool = False

    def __post_init__(self):
        object.__setattr__(self, "h", Fraction(self.h))
        object.__setattr__(self, "d", Fraction(self.d))
        if self.h == 0 and not self.boundary_study:
            raise ValueError("lambda(h) = 0 is outside the category (enable boundary study)")
        if (2 * self.h).denominator != 1:
            raise ValueError("q^lambda(h) needs 2*lambda(h) integral")

    def k_eigenvalue(self, length: int) -> Scalar:
        return q_power(self.h - 2 * length)

    def d_eigenvalue(self, degree: int) -> Scalar:
        # q^(lam(d) + degree); reported only
        e = self.d + degree
        if (2 * e).denominator != 1:
            raise ValueError("D-eigenvalue not a Laurent monomial in v")
        return q_power(e)

    def to_json_obj(self) -> dict:
        return {"h": _frac_text(self.h), "d": _frac_text(self.d)}

    @classmethod
    def from_json_obj(cls, obj, boundary_study=False) -> "HighestWeight":
        return cls(Fraction(obj["h"]), Fraction(obj.get("d", 0)), boundary_study)


def _frac_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, eq=False)
class ModuleVector:
    payload: Element
    weight: HighestWeight

    def is_zero(self) -> bool:
        return self.payload.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.weight == other.weight and self.payload == other.payload

    def __add__(self, other: "ModuleVector") -> "ModuleVector":
        _same(self, other)
        return ModuleVector(self.payload + other.payload, self.weight)

    def __sub__(self, other: "ModuleVector") -> "ModuleVector":
        _same(self, other)
        return ModuleVector(self.payload - other.payload, self.weight)

    def scale(self, s) -> "ModuleVector":
        return ModuleVector(self.payload.scale(s), self.weight)

    def max_length(self) -> int:
        return max((len(m) for m in self.payload.terms), default=0)

    def weights(self) -> set:
        """Set of ``(K-eigenvalue, D-eigenvalue)`` pairs of the terms."""
        return {
            (self.weight.k_eigenvalue(n), self.weight.d_eigenvalue(d))
            for n, d in self.payload.grades()
        }

    def to_json_obj(self) -> dict:
        return {"lambda": self.weight.to_json_obj(), "element": self.payload.to_json_obj()}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj, boundary_study=False) -> "ModuleVector":
        return cls(
            Element.from_json_obj(obj["element"]),
            HighestWeight.from_json_obj(obj["lambda"], boundary_study),
        )

    @classmethod
    def highest(cls, weight: HighestWeight) -> "ModuleVector":
        return cls(Element.one(), weight)

    @classmethod
    def basis_vector(cls, m: Sequence[int], weight: HighestWeight, coeff=ONE) -> "ModuleVector":
        return cls(Element.monomial(m, coeff), weight)


def _same(a: ModuleVector, b: ModuleVector):
    if a.weight != b.weight:
        raise ValueError("vectors live in modules with different highest weights")


def act_xminus(m: int, vec: ModuleVector) -> ModuleVector:
    acc: Dict[Monomial, Scalar] = {}
    for w, c in vec.payload.terms.items():
        _add_into(acc, _straighten_left((m,) + w), c)
    return ModuleVector(Element(acc), vec.weight)


def act_omega(m: int, vec: ModuleVector) -> ModuleVector:
    """``Omega_psi(m)`` on the payload at ``gamma = 1``; kills ``v_lam``."""
    return ModuleVector(kashiwara.omega_psi(m, vec.payload, "one"), vec.weight)


def act_omega_phi(m: int, vec: ModuleVector) -> ModuleVector:
    return ModuleVector(kashiwara.omega_phi(m, vec.payload, "one"), vec.weight)


# -- Cartan currents and raising modes ----------------------------------------


@lru_cache(maxsize=None)
def _psi_current(j: int, mono: Monomial, lam_h: Fraction) -> Dict[Monomial, Scalar]:
    if j < 0:
        return {}
    if not mono:
        return {(): q_power(lam_h)} if j == 0 else {}
    m, rest = mono[0], mono[1:]
    acc: Dict[Monomial, Scalar] = {}
    for r in range(0, j + 1):
        inner = _psi_current(j - r, rest, lam_h)
        if not inner:
            continue
        coeff = g_coeff_dual(r)
        for w, c in inner.items():
            _add_into(acc, _straighten_left((m + r,) + w), c * coeff)
    return acc


@lru_cache(maxsize=None)
def _phi_current(j: int, mono: Monomial, lam_h: Fraction) -> Dict[Monomial, Scalar]:
    if j > 0:
        return {}
    if not mono:
        return {(): q_power(-lam_h)} if j == 0 else {}
    m, rest = mono[0], mono[1:]
    acc: Dict[Monomial, Scalar] = {}
    for r in range(0, -j + 1):
        inner = _phi_current(j + r, rest, lam_h)
        if not inner:
            continue
        coeff = g_coeff(r)
        for w, c in inner.items():
            _add_into(acc, _straighten_left((m - r,) + w), c * coeff)
    return acc


_QQ = q_power(1) - q_power(-1)
_INV_QQ = _QQ.inverse()


def _current_diff(j: int, mono: Monomial, lam_h: Fraction) -> Dict[Monomial, Scalar]:
    """``(psi(j) - phi(j)) / (q - 1/q)`` on a monomial."""
    acc: Dict[Monomial, Scalar] = {}
    _add_into(acc, _psi_current(j, mono, lam_h), _INV_QQ)
    _add_into(acc, _phi_current(j, mono, lam_h), -_INV_QQ)
    return acc


@lru_cache(maxsize=None)
def _xplus_mono(k: int, mono: Monomial, lam_h: Fraction) -> Dict[Monomial, Scalar]:
    if not mono:
        return {}
    l, rest = mono[0], mono[1:]
    acc: Dict[Monomial, Scalar] = {}
    for w, c in _xplus_mono(k, rest, lam_h).items():
        _add_into(acc, _straighten_left((l,) + w), c)
    _add_into(acc, _current_diff(k + l, rest, lam_h))
    return acc


def _on_terms(fn, j: int, vec: ModuleVector) -> ModuleVector:
    acc: Dict[Monomial, Scalar] = {}
    for w, c in vec.payload.terms.items():
        out = fn(j, w, vec.weight.h)
        if out:
            _add_into(acc, out, c)
    return ModuleVector(Element(acc), vec.weight)


def act_psi_current(j: int, vec: ModuleVector) -> ModuleVector:
    return _on_terms(_psi_current, j, vec)


def act_phi_current(j: int, vec: ModuleVector) -> ModuleVector:
    return _on_terms(_phi_current, j, vec)


def act_xplus(k: int, vec: ModuleVector) -> ModuleVector:
    """Raising mode ``x+_k``: lowers length by one, adds ``k`` to the degree."""
    return _on_terms(_xplus_mono, k, vec)


def xplus_labels(vec: ModuleVector, slack: int = 1) -> range:
    """Labels ``k`` where the delta terms of ``x+_k`` can fire on ``vec``, widened by ``slack``.

    On length-one vectors ``x+_k`` is nonzero only for ``k = -index``, so
    the range is exhaustive there.  On longer vectors the currents make
    ``x+_k`` nonzero for infinitely many ``k``; the range is then a finite
    sample.
    """
    idx = [i for m in vec.payload.terms for i in m]
    if not idx:
        return range(0)
    return range(-max(idx) - slack, -min(idx) + slack + 1)


def local_nilpotency_exponent(k: int, vec: ModuleVector) -> int:
    """Least ``N`` with ``(x+_k)^N vec = 0``; at most ``max length + 1``."""
    if vec.is_zero():
        raise ValueError("local nilpotency exponent of the zero vector")
    n = 0
    cur = vec
    bound = vec.max_length() + 1
    while not cur.is_zero():
        cur = act_xplus(k, cur)
        n += 1
        if n > bound:
            raise AssertionError(f"x+_{k} not nilpotent within {bound} steps")
    return n


# -- singular vectors ---------------------------------------------------------


def singular_labels(window: WeightWindow, slack: int = 1) -> range:
    """Raising labels imposed by :func:`find_singular_vectors` on ``window``."""
    if window.length == 0:
        return range(0)
    return range(-window.hi - slack, -window.lo + slack + 1)


def find_singular_vectors(
    window: WeightWindow, weight: HighestWeight, labels=None
) -> List[ModuleVector]:
    """Basis of ``{u in span(window) : x+_k u = 0 for k in labels}``.

    ``labels`` defaults to :func:`singular_labels`.  For length-one windows
    this is the exact joint kernel of all raising modes.  For longer windows
    the constraint set is finite, so an empty answer certifies that the
    window holds no singular vector, while a nonempty one lists candidates.
    """
    basis = window.basis()
    if window.length == 0 or not basis:
        return []
    if labels is None:
        labels = singular_labels(window)
    rows: List[List[Scalar]] = []
    for k in labels:
        images = [_xplus_mono(k, b, weight.h) for b in basis]
        targets = sorted({w for img in images for w in img})
        for t in targets:
            rows.append([img.get(t, ZERO) for img in images])
    if not rows:
        rows = [[ZERO] * len(basis)]
    kernel = nullspace(rows, len(basis))
    out = []
    for vec in kernel:
        terms = {b: c for b, c in zip(basis, vec) if not c.is_zero()}
        out.append(ModuleVector(Element(terms), weight))
    return out


# -- category objects -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SumVector:
    """Element of a direct sum: one component per summand."""

    parts: Tuple[ModuleVector, ...]

    def __eq__(self, other):
        return isinstance(other, SumVector) and self.parts == other.parts


@dataclass
class CategoryObject:
    """Finite direct sum of reduced imaginary Verma modules."""

    summands: List[HighestWeight] = field(default_factory=list)

    def __post_init__(self):
        for w in self.summands:
            if w.h == 0:
                raise ValueError("category objects need lambda(h) != 0 in every summand")

    def zero(self) -> SumVector:
        return SumVector(tuple(ModuleVector(Element(), w) for w in self.summands))

    def inject(self, i: int, vec: ModuleVector) -> SumVector:
        if vec.weight != self.summands[i]:
            raise ValueError("vector does not belong to summand %d" % i)
        parts = list(self.zero().parts)
        parts[i] = vec
        return SumVector(tuple(parts))

    def project(self, i: int, vec: SumVector) -> ModuleVector:
        return vec.parts[i]

    def act(self, op: str, label: int, vec: SumVector) -> SumVector:
        fn = _OPS[op]
        return SumVector(tuple(fn(label, p) for p in vec.parts))


_OPS = {
    "xm": act_xminus,
    "xp": act_xplus,
    "psi": act_omega,
    "phi": act_omega_phi,
}


def direct_sum(parts: Sequence[HighestWeight]) -> CategoryObject:
    return CategoryObject(list(parts))


def apply_spec(spec: str, vec: ModuleVector) -> ModuleVector:
    """Apply ``"xm(2) psi(-1)"``-style operator strings, rightmost first."""
    ops = kashiwara.parse_operator_spec(spec, allowed=tuple(_OPS))
    for name, k in reversed(ops):
        vec = _OPS[name](k, vec)
    return vec
