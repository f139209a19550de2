"""Kashiwara-type operators ``Omega_psi(k)`` and ``Omega_phi(k)`` on the negative half.

Both operators are evaluated through their component recursions on a PBW
monomial ``x_m * rest``::

    Omega_psi(k)(x_m rest) = delta(k, -m) gamma^k rest
                             + sum_{r>=0} g(r) gamma^r x_{m+r} Omega_psi(k-r)(rest)
    Omega_phi(k)(x_m rest) = delta(k, -m) gamma^-k rest
                             + sum_{r>=0} g'(r) gamma^r x_{m-r} Omega_phi(k+r)(rest)

with ``g = g_coeff`` and ``g' = g_coeff_dual``.  Both kill ``1``.  The
``r``-sums are finite: ``Omega_psi(j)`` kills a monomial once
``j < -max(indices)`` and ``Omega_phi(j)`` once ``j > -min(indices)``.

``gamma`` is ``c**2``; pass ``gamma="one"`` to work at ``gamma = 1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from .pbw import Element, Monomial, _add_into, _straighten_left, straighten_word
from .qcoeff import ONE, ZERO, Scalar, g_coeff, g_coeff_dual, q_power

__all__ = [
    "SupportBoundError",
    "omega_psi",
    "omega_phi",
    "omega",
    "support_bound",
    "omega_psi_unbounded",
    "omega_psi_defining_oracle",
    "RelationReport",
    "RELATION_IDS",
    "verify_relation",
    "parse_operator_spec",
    "apply_operator_spec",
]

INF = float("inf")
Q2 = q_power(2)


class SupportBoundError(AssertionError):
    """A nonzero Omega component was found outside the declared support bound."""


def _gamma_power(e: int, symbolic: bool) -> Scalar:
    if not symbolic or e == 0:
        return ONE
    return Scalar.monomial(1, 0, 2 * e)


def _mode(gamma) -> bool:
    if gamma in ("symbolic", True):
        return True
    if gamma in ("one", 1, False):
        return False
    raise ValueError(f"gamma mode must be 'symbolic' or 'one', got {gamma!r}")


def support_bound(kind: str, m: Sequence[int]):
    """Bound beyond which ``Omega_kind(j)(m)`` vanishes.

    For ``psi`` the components vanish for ``j < -max(m)``; for ``phi`` they
    vanish for ``j > -min(m)``.  The empty monomial has empty support
    (``+inf`` for psi, ``-inf`` for phi).
    """
    if kind == "psi":
        return -max(m) if m else INF
    if kind == "phi":
        return -min(m) if m else -INF
    raise ValueError(f"unknown Omega kind {kind!r}")


@lru_cache(maxsize=None)
def _psi_mono(k: int, mono: Monomial, symbolic: bool) -> Dict[Monomial, Scalar]:
    if not mono:
        return {}
    m, rest = mono[0], mono[1:]
    acc: Dict[Monomial, Scalar] = {}
    if k == -m:
        acc[rest] = _gamma_power(k, symbolic)
    if rest:
        for r in range(0, k + rest[0] + 1):
            inner = _psi_mono(k - r, rest, symbolic)
            if not inner:
                continue
            coeff = g_coeff(r) * _gamma_power(r, symbolic)
            idx = m + r
            for w, c in inner.items():
                _add_into(acc, _straighten_left((idx,) + w), c * coeff)
    return acc


@lru_cache(maxsize=None)
def _phi_mono(k: int, mono: Monomial, symbolic: bool) -> Dict[Monomial, Scalar]:
    if not mono:
        return {}
    m, rest = mono[0], mono[1:]
    acc: Dict[Monomial, Scalar] = {}
    if k == -m:
        acc[rest] = _gamma_power(-k, symbolic)
    if rest:
        for r in range(0, -rest[-1] - k + 1):
            inner = _phi_mono(k + r, rest, symbolic)
            if not inner:
                continue
            coeff = g_coeff_dual(r) * _gamma_power(r, symbolic)
            idx = m - r
            for w, c in inner.items():
                _add_into(acc, _straighten_left((idx,) + w), c * coeff)
    return acc


def _apply(fn, k: int, e: Element, symbolic: bool) -> Element:
    acc: Dict[Monomial, Scalar] = {}
    for m, c in e.terms.items():
        out = fn(k, m, symbolic)
        if out:
            _add_into(acc, out, c)
    return Element(acc)


def omega_psi(k: int, e: Element, gamma="symbolic") -> Element:
    """``Omega_psi(k)`` applied to ``e``; lowers length by one and adds ``k`` to the degree."""
    return _apply(_psi_mono, k, e, _mode(gamma))


def omega_phi(k: int, e: Element, gamma="symbolic") -> Element:
    """``Omega_phi(k)`` applied to ``e``."""
    return _apply(_phi_mono, k, e, _mode(gamma))


def omega(kind: str, k: int, e: Element, gamma="symbolic") -> Element:
    if kind == "psi":
        return omega_psi(k, e, gamma)
    if kind == "phi":
        return omega_phi(k, e, gamma)
    raise ValueError(f"unknown Omega kind {kind!r}")


def omega_psi_unbounded(k: int, mono: Sequence[int], slack: int = 6, gamma="one") -> Element:
    """Evaluate the psi recursion with the ``r``-sum run ``slack`` steps past the bound.

    Raises :class:`SupportBoundError` if any of the extra steps contributes,
    i.e. if the support bound used by :func:`omega_psi` would have dropped a
    nonzero term.
    """
    symbolic = _mode(gamma)

    def rec(k: int, mono: Monomial) -> Dict[Monomial, Scalar]:
        if not mono:
            return {}
        m, rest = mono[0], mono[1:]
        acc: Dict[Monomial, Scalar] = {}
        if k == -m:
            acc[rest] = _gamma_power(k, symbolic)
        if rest:
            bound = k + rest[0]
            for r in range(0, max(bound, -1) + slack + 1):
                inner = rec(k - r, rest)
                if inner and r > bound:
                    raise SupportBoundError(
                        f"Omega_psi({k - r}) is nonzero on {list(rest)} below the bound"
                    )
                coeff = g_coeff(r) * _gamma_power(r, symbolic)
                for w, c in inner.items():
                    _add_into(acc, _straighten_left((m + r,) + w), c * coeff)
        return acc

    return Element(rec(k, tuple(mono)))


def omega_psi_defining_oracle(k: int, word: Sequence[int]) -> Element:
    """Component of the generating-function definition of ``Omega_psi``, at ``gamma = 1``.

    Reads off the coefficient of ``u^-k v_1^-n_1 ... v_K^-n_K`` in
    ``sum_l G_l Pbar_l delta(u / v_l)`` with
    ``G_l = prod_{j<l} g(v_j / v_l)``: removing factor ``l`` forces the
    shifts ``r_1 + ... + r_{l-1} = k + n_l`` on the factors to its left.
    Works on free words; the result is straightened at the end.  Not used by
    :func:`omega_psi`.
    """
    word = tuple(word)
    acc: Dict[Monomial, Scalar] = {}
    for l, nl in enumerate(word):
        total = k + nl
        if total < 0:
            continue
        left, right = word[:l], word[l + 1:]
        for shifts in _compositions(total, len(left)):
            coeff = ONE
            for r in shifts:
                coeff = coeff * g_coeff(r)
            shifted = tuple(n + r for n, r in zip(left, shifts))
            _add_into(acc, straighten_word(shifted + right), coeff)
    return Element(acc)


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(total + parts - 1 - prev - 1)
        yield tuple(out)


# ---------------------------------------------------------------------------
# relations


def _psi(k, e, s):
    return _apply(_psi_mono, k, e, s)


def _phi(k, e, s):
    return _apply(_phi_mono, k, e, s)


def _x(n, e):
    acc: Dict[Monomial, Scalar] = {}
    for m, c in e.terms.items():
        _add_into(acc, _straighten_left((n,) + m), c)
    return Element(acc)


def _combo(*pairs) -> Element:
    acc: Dict[Monomial, Scalar] = {}
    for s, e in pairs:
        if s.is_zero():
            continue
        _add_into(acc, e.terms, s)
    return Element(acc)


def _rel_a(m, n, e, s, printed=False):
    gam = _gamma_power(1, s)
    lhs = _combo((Q2 * gam, _psi(m, _x(n + 1, e), s)), (-ONE, _psi(m + 1, _x(n, e), s)))
    if m != -n - 1:
        const = ZERO
    elif printed:
        const = Q2 * gam - ONE
    else:
        const = (Q2 - ONE) * _gamma_power(m + 1, s)
    rhs = _combo(
        (const, e),
        (gam, _x(n + 1, _psi(m, e, s))),
        (-Q2, _x(n, _psi(m + 1, e, s))),
    )
    return lhs, rhs


def _rel_e(m, n, e, s, printed=False):
    gam = _gamma_power(1, s)
    lhs = _combo((Q2, _phi(m, _x(n + 1, e), s)), (-gam, _phi(m + 1, _x(n, e), s)))
    if m != -n - 1:
        const = ZERO
    elif printed:
        const = Q2 - gam
    else:
        const = (Q2 - ONE) * _gamma_power(-m, s)
    rhs = _combo(
        (const, e),
        (ONE, _x(n + 1, _phi(m, e, s))),
        (-Q2 * gam, _x(n, _phi(m + 1, e, s))),
    )
    return lhs, rhs


def _rel_b(k, l, e, s):
    lhs = _combo((Q2, _psi(k + 1, _psi(l, e, s), s)), (-ONE, _psi(l, _psi(k + 1, e, s), s)))
    rhs = _combo((ONE, _psi(k, _psi(l + 1, e, s), s)), (-Q2, _psi(l + 1, _psi(k, e, s), s)))
    return lhs, rhs


def _rel_c(k, m, e, s):
    lhs = _psi(k, _phi(m, e, s), s)
    # Omega_psi(k - r) e vanishes once k - r < -max(e)
    top = k + max((max(w) for w in e.terms if w), default=k)
    acc: Dict[Monomial, Scalar] = {}
    for r in range(0, top + 1):
        term = _phi(r + m, _psi(k - r, e, s), s)
        if term:
            _add_into(acc, term.terms, g_coeff_dual(r) * _gamma_power(2 * r, s))
    return lhs, Element(acc)


def _rel_d(k, l, e, s):
    lhs = _combo((ONE, _x(l, _x(k + 1, e))), (-Q2, _x(k + 1, _x(l, e))))
    rhs = _combo((Q2, _x(l + 1, _x(k, e))), (-ONE, _x(k, _x(l + 1, e))))
    return lhs, rhs


_RELATIONS = {
    "a": lambda i, j, e, s: _rel_a(i, j, e, s),
    "b": _rel_b,
    "c": _rel_c,
    "d": _rel_d,
    "e": lambda i, j, e, s: _rel_e(i, j, e, s),
    "a_printed": lambda i, j, e, s: _rel_a(i, j, e, s, printed=True),
    "e_printed": lambda i, j, e, s: _rel_e(i, j, e, s, printed=True),
}

RELATION_IDS = ("a", "b", "c", "d", "e")

RELATION_DESCRIPTIONS = {
    "a": "q^2 g W(m) x_{n+1} - W(m+1) x_n = (q^2-1) g^{m+1} d_{m,-n-1} + g x_{n+1} W(m) - q^2 x_n W(m+1)",
    "b": "q^2 W(k+1) W(l) - W(l) W(k+1) = W(k) W(l+1) - q^2 W(l+1) W(k)",
    "c": "W(k) P(m) = sum_r g'(r) g^{2r} P(r+m) W(k-r)",
    "d": "x_l x_{k+1} - q^2 x_{k+1} x_l = q^2 x_{l+1} x_k - x_k x_{l+1}",
    "e": "q^2 P(m) x_{n+1} - g P(m+1) x_n = (q^2-1) g^{-m} d_{m,-n-1} + x_{n+1} P(m) - q^2 g x_n P(m+1)",
    "a_printed": "relation a with delta coefficient (q^2 g - 1)",
    "e_printed": "relation e with delta coefficient (q^2 - g)",
}


@dataclass
class RelationReport:
    relation: str
    gamma: str
    checked: int = 0
    mismatches: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json_obj(self) -> dict:
        return {
            "relation": self.relation,
            "gamma": self.gamma,
            "checked": self.checked,
            "failures": len(self.mismatches),
            "mismatches": self.mismatches,
        }


def verify_relation(
    relation: str,
    first_range: Iterable[int],
    second_range: Iterable[int],
    elements: Iterable[Sequence[int]],
    gamma="symbolic",
    max_mismatches: int = 50,
) -> RelationReport:
    """Check one operator identity on every test monomial and label pair.

    ``first_range``/``second_range`` bind the two labels of the relation in
    the order they appear in its description (``m, n`` for a and e, ``k, l``
    for b and d, ``k, m`` for c).
    """
    if relation not in _RELATIONS:
        raise ValueError(f"unknown relation id {relation!r}")
    s = _mode(gamma)
    fn = _RELATIONS[relation]
    report = RelationReport(relation, "symbolic" if s else "one")
    second = list(second_range)
    for mono in elements:
        e = Element({tuple(mono): ONE})
        for i in first_range:
            for j in second:
                lhs, rhs = fn(i, j, e, s)
                report.checked += 1
                if lhs != rhs and len(report.mismatches) < max_mismatches:
                    report.mismatches.append(
                        {
                            "labels": [i, j],
                            "element": list(mono),
                            "lhs": lhs.to_json_obj(),
                            "rhs": rhs.to_json_obj(),
                        }
                    )
                elif lhs != rhs:
                    report.mismatches.append({"labels": [i, j], "element": list(mono)})
    return report


# ---------------------------------------------------------------------------
# operator spec strings: "psi(2) phi(-1)" applies right to left


def parse_operator_spec(spec: str, allowed=("psi", "phi")) -> List[Tuple[str, int]]:
    import re

    tokens = spec.split()
    if not tokens:
        raise ValueError("empty operator spec")
    out = []
    for tok in tokens:
        m = re.fullmatch(r"([a-z]+)\((-?\d+)\)", tok)
        if not m or m.group(1) not in allowed:
            raise ValueError(f"bad operator token {tok!r}")
        out.append((m.group(1), int(m.group(2))))
    return out


def apply_operator_spec(spec: str, e: Element, gamma="symbolic") -> Element:
    for name, k in reversed(parse_operator_spec(spec)):
        e = omega(name, k, e, gamma)
    return e
