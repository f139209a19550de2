"""Imaginary crystal basis of the reduced module at ``lam(c) = 0``.

The lattice ``L(lam)`` is spanned by the PBW vectors ``x_{i1}...x_{il} v_lam``;
its residues mod ``q`` are signed monomials.  The crystal operators act on
them by closed formulas; :func:`crystal_oracle_check` compares those with the
genuine module action reduced mod ``q``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import kashiwara
from .pbw import Element, Monomial, _straighten_left, all_monomials, format_monomial, is_pbw
from .qcoeff import ONE, ZERO, Scalar, _poly_divmod, poly_gcd, q_int, valuation
from .shapovalov import pair
from .verma import HighestWeight, ModuleVector

__all__ = [
    "CrystalNode",
    "ZERO_NODE",
    "NotInLattice",
    "crystal_xminus",
    "crystal_omega",
    "reduce_mod_q",
    "residue_node",
    "CrystalReport",
    "verify_crystal_axioms",
    "crystal_oracle_check",
    "LatticePresentation",
    "LatticeVerdict",
    "lattice_membership",
    "random_presentation",
    "verify_prop91",
    "CrystalGraph",
    "crystal_graph",
]


class NotInLattice(ValueError):
    """A coefficient with negative valuation met ``reduce_mod_q``."""


@dataclass(frozen=True)
class CrystalNode:
    """``sign * [monomial]`` in ``+-B(lam)``, or the zero node when ``zero`` is set."""

    monomial: Monomial = ()
    sign: int = 1
    zero: bool = False

    def __post_init__(self):
        if self.zero:
            object.__setattr__(self, "monomial", ())
            object.__setattr__(self, "sign", 0)
            return
        m = tuple(self.monomial)
        if not is_pbw(m):
            raise ValueError(f"{list(m)} is not weakly decreasing")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        object.__setattr__(self, "monomial", m)

    @property
    def is_zero(self) -> bool:
        return self.zero

    def __neg__(self):
        return self if self.zero else CrystalNode(self.monomial, -self.sign)

    def __str__(self):
        if self.zero:
            return "0"
        return ("+" if self.sign > 0 else "-") + format_monomial(self.monomial)


ZERO_NODE = CrystalNode(zero=True)


def crystal_xminus(m: int, b: CrystalNode) -> CrystalNode:
    """Closed form of ``x~_m`` on a signed monomial."""
    if b.zero:
        return ZERO_NODE
    i = b.monomial
    l = len(i)
    for j in range(1, l + 1):
        if m + j == i[j - 1]:
            return ZERO_NODE
    # sentinels: i_0 = +inf, i_{l+1} = -inf
    for j in range(1, l + 2):
        above = j == 1 or m + j - 1 < i[j - 2]
        below = j == l + 1 or m + j > i[j - 1]
        if above and below:
            mono = tuple(x - 1 for x in i[: j - 1]) + (m + j - 1,) + i[j - 1:]
            return CrystalNode(mono, b.sign * (-1) ** (j - 1))
    raise AssertionError(f"no insertion position for m={m} on {b}")


def _omega_hits(k: int, i: Monomial) -> List[int]:
    return [j for j in range(1, len(i) + 1) if k - j + 1 == -i[j - 1]]


def crystal_omega(k: int, b: CrystalNode) -> CrystalNode:
    """Closed form of ``Omega~_psi(k)``; at most one summand survives."""
    if b.zero:
        return ZERO_NODE
    i = b.monomial
    hits = _omega_hits(k, i)
    if not hits:
        return ZERO_NODE
    if len(hits) > 1:
        raise AssertionError(f"several summands fire for k={k} on {b}: {hits}")
    j = hits[0]
    mono = tuple(x + 1 for x in i[: j - 1]) + i[j:]
    return CrystalNode(mono, b.sign * (-1) ** (j - 1))


# -- reduction mod q ------------------------------------------------------------


def reduce_mod_q(vec) -> Dict[Monomial, int]:
    """Residue of a lattice vector in ``L / qL`` as ``{monomial: constant term}``."""
    payload = vec.payload if isinstance(vec, ModuleVector) else vec
    out: Dict[Monomial, int] = {}
    for m, c in payload.terms.items():
        c = c.subs_c1()
        if c.is_zero():
            continue
        val = valuation(c)
        if val < 0:
            raise NotInLattice(
                f"term {format_monomial(m)} has coefficient {c} of valuation {val}"
            )
        if val == 0:
            out[m] = c.constant_term()
    return out


def residue_node(res: Dict[Monomial, int]) -> Optional[CrystalNode]:
    """The signed node a residue equals, or ``None`` if it is not in ``+-B u {0}``."""
    if not res:
        return ZERO_NODE
    if len(res) != 1:
        return None
    (m, c), = res.items()
    if c not in (1, -1):
        return None
    return CrystalNode(m, c)


def _node_to_residue(b: CrystalNode) -> Dict[Monomial, int]:
    return {} if b.zero else {b.monomial: b.sign}


def _residue_text(res: Dict[Monomial, int]) -> str:
    if not res:
        return "0"
    return " + ".join(f"{c}*{format_monomial(m)}" for m, c in sorted(res.items()))


# -- reports --------------------------------------------------------------------


@dataclass
class CrystalReport:
    name: str
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "CrystalReport") -> "CrystalReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def to_json_obj(self) -> dict:
        fails = sorted(self.failures, key=lambda f: json.dumps(f, sort_keys=True))
        return {
            "check": self.name,
            "params": self.params,
            "checked": self.checked,
            "failures": fails,
            "ok": self.ok,
        }


def _basis(max_len: int, lo: int, hi: int, min_len: int = 0) -> List[Monomial]:
    return all_monomials(max_len, lo, hi, min_len=min_len)


def verify_crystal_axioms(
    weight: HighestWeight,
    basis: Iterable[Sequence[int]],
    m_range: Iterable[int],
    k_range: Iterable[int],
) -> CrystalReport:
    """Closure of both operators and the commutation axiom on every listed monomial."""
    rep = CrystalReport("crystal-axioms", params={"lambda": weight.to_json_obj()})
    m_range, k_range = list(m_range), list(k_range)
    for mono in basis:
        b = CrystalNode(tuple(mono))
        for m in m_range:
            rep.checked += 1
            x = crystal_xminus(m, b)
            if not x.zero and (len(x.monomial) != len(b.monomial) + 1 or sum(x.monomial) != sum(b.monomial) + m):
                rep.failures.append({"axiom": "grade", "op": f"xm({m})", "b": list(mono)})
            w = crystal_omega(-m, b)
            # commutation, when both images are nonzero
            if not x.zero and not w.zero:
                lhs = crystal_xminus(m, w)
                rhs = crystal_omega(-m, x)
                if lhs != rhs:
                    rep.failures.append(
                        {"axiom": "v", "m": m, "b": list(mono), "lhs": str(lhs), "rhs": str(rhs)}
                    )
            # partial inverse for m >= i_1
            if not b.monomial or m >= b.monomial[0]:
                back = crystal_omega(-m, x)
                if back != b:
                    rep.failures.append(
                        {"axiom": "inverse", "m": m, "b": list(mono), "got": str(back)}
                    )
        for k in k_range:
            rep.checked += 1
            if len(_omega_hits(k, b.monomial)) > 1:
                rep.failures.append({"axiom": "uniqueness", "k": k, "b": list(mono)})
                continue
            w = crystal_omega(k, b)
            if not w.zero and (len(w.monomial) != len(b.monomial) - 1 or sum(w.monomial) != sum(b.monomial) + k):
                rep.failures.append({"axiom": "grade", "op": f"psi({k})", "b": list(mono)})
    return rep


def crystal_oracle_check(
    weight: HighestWeight,
    basis: Iterable[Sequence[int]],
    m_range: Iterable[int],
    k_range: Iterable[int],
) -> CrystalReport:
    """Closed-form operators against the module action reduced mod ``q``."""
    rep = CrystalReport("crystal-oracle", params={"lambda": weight.to_json_obj()})
    m_range, k_range = list(m_range), list(k_range)
    for mono in basis:
        mono = tuple(mono)
        b = CrystalNode(mono)
        for m in m_range:
            rep.checked += 1
            full = reduce_mod_q(Element(_straighten_left((m,) + mono)))
            closed = _node_to_residue(crystal_xminus(m, b))
            if full != closed:
                rep.failures.append(
                    {"op": f"xm({m})", "b": list(mono), "module": _residue_text(full), "closed": _residue_text(closed)}
                )
        for k in k_range:
            rep.checked += 1
            full = reduce_mod_q(Element(kashiwara._psi_mono(k, mono, False)))
            closed = _node_to_residue(crystal_omega(k, b))
            if full != closed:
                rep.failures.append(
                    {"op": f"psi({k})", "b": list(mono), "module": _residue_text(full), "closed": _residue_text(closed)}
                )
    return rep


# -- coefficient rings A_0 and A -------------------------------------------------


@dataclass(frozen=True)
class LatticeVerdict:
    a0: bool
    a: str  # "member" | "non-member" | "undecided"

    def to_json_obj(self) -> dict:
        return {"A0": self.a0, "A": self.a}


def _dense_poly(d: Dict[int, object]) -> List:
    top = max(d)
    return [d.get(i, 0) for i in range(top + 1)]


def _is_unit(p: List) -> bool:
    return len([x for x in p if x != 0]) == 1


def lattice_membership(s: Scalar, n_max: int = 12) -> LatticeVerdict:
    """Membership of ``s`` in ``A_0`` (regular at ``v = 0``) and in ``A``.

    ``A`` inverts ``v`` and every ``[n]`` with ``n > 1``, i.e. every
    cyclotomic ``Phi_d(v)`` with ``d`` outside ``{1, 2, 4}``.  A reduced
    denominator sharing a factor with ``v^4 - 1``, or not a product of
    cyclotomic polynomials, certifies non-membership.  Otherwise the
    denominator is divided against ``prod_{n<=n_max} [n]``; failure at the
    bound reports ``"undecided"``.
    """
    if s.has_c():
        raise ValueError("lattice membership needs c specialized")
    if s.is_zero():
        return LatticeVerdict(True, "member")
    a0 = valuation(s) >= 0
    den = _dense_poly(s.den)
    if _is_unit(den):
        return LatticeVerdict(a0, "member")
    if not _is_unit(poly_gcd(den, [-1, 0, 0, 0, 1])):
        return LatticeVerdict(a0, "non-member")
    rev = den[::-1]
    if (
        any(getattr(x, "denominator", 1) != 1 for x in den)
        or (rev != den and rev != [-x for x in den])
        or den[-1] not in (1, -1)
    ):
        return LatticeVerdict(a0, "non-member")
    # v^(2(n-1)) [n] = (v^(4n) - 1) / (v^4 - 1)
    rest = den
    for _ in range(len(den)):
        progressed = False
        for n in range(2, n_max + 1):
            f = [1 if i % 4 == 0 else 0 for i in range(4 * n - 3)]
            g = poly_gcd(rest, f)
            if not _is_unit(g):
                rest, _ = _poly_divmod(rest, g)
                progressed = True
                if _is_unit(rest):
                    return LatticeVerdict(a0, "member")
        if not progressed:
            break
    return LatticeVerdict(a0, "undecided")


@dataclass(frozen=True)
class LatticePresentation:
    """Vector with coefficients ``numerator / (prod [n] * v^vshift)``.

    ``terms`` maps a monomial to ``(numerator, qints, vshift)`` where the
    numerator is a Laurent polynomial in ``v`` and ``qints`` the multiset of
    quantum integers in the denominator.
    """

    weight: HighestWeight
    terms: Tuple[Tuple[Monomial, Scalar, Tuple[int, ...], int], ...]

    def coefficient(self, num: Scalar, qints: Sequence[int], vshift: int) -> Scalar:
        den = Scalar.monomial(1, vshift)
        for n in qints:
            den = den * q_int(n)
        return num / den

    def to_vector(self) -> ModuleVector:
        terms: Dict[Monomial, Scalar] = {}
        for m, num, qints, vshift in self.terms:
            terms[m] = terms.get(m, ZERO) + self.coefficient(num, qints, vshift)
        return ModuleVector(Element(terms), self.weight)

    def to_json_obj(self) -> dict:
        return {
            "lambda": self.weight.to_json_obj(),
            "terms": [
                {"monomial": list(m), "numerator": str(num), "qints": list(q), "vshift": s}
                for m, num, q, s in self.terms
            ],
        }


def random_presentation(
    rng: random.Random, weight: HighestWeight, basis: Sequence[Monomial], nterms: int = 3
) -> LatticePresentation:
    """Random presentation whose coefficients all have valuation ``>= 0``."""
    terms = []
    for m in rng.sample(list(basis), min(nterms, len(basis))):
        num = Scalar({(e, 0): rng.choice([-2, -1, 1, 2, 3]) for e in rng.sample(range(-4, 9), 2)})
        qints = tuple(sorted(rng.choice(range(2, 6)) for _ in range(rng.randint(0, 2))))
        c = num / _qprod(qints)
        # make the coefficient regular at 0: v^vshift divides out, vshift <= valuation
        vshift = valuation(c) - rng.randint(0, 3)
        terms.append((m, num, qints, vshift))
    return LatticePresentation(weight, tuple(terms))


def _qprod(qints: Sequence[int]) -> Scalar:
    out = ONE
    for n in qints:
        out = out * q_int(n)
    return out


def verify_prop91(
    weight: HighestWeight,
    samples: Sequence[LatticePresentation],
    partners: Sequence[Monomial],
    control: Optional[Monomial] = None,
) -> CrystalReport:
    """Lattice vectors pair into ``A_0`` with every partner; a ``v^-1`` control must not."""
    rep = CrystalReport("lattice-pairings", params={"lambda": weight.to_json_obj(), "samples": len(samples)})
    partners = list(partners)
    for idx, pres in enumerate(samples):
        u = pres.to_vector().payload
        for b in partners:
            rep.checked += 1
            p = pair(u, Element.monomial(b))
            if not p.is_zero() and valuation(p) < 0:
                rep.failures.append({"sample": idx, "partner": list(b), "pairing": str(p)})
    if control is not None:
        rep.checked += 1
        u = Element.monomial(control, Scalar.monomial(1, -1))
        p = pair(u, Element.monomial(control))
        ok = not p.is_zero() and valuation(p) < 0
        rep.params["control"] = {"monomial": list(control), "pairing": str(p), "negative": ok}
        if not ok:
            rep.failures.append({"control": list(control), "pairing": str(p)})
    return rep


# -- graph export -----------------------------------------------------------------


@dataclass
class CrystalGraph:
    nodes: List[Monomial]
    edges: List[Tuple[Monomial, Monomial, str, int, int]]  # src, dst, op, label, sign

    def to_json_obj(self) -> dict:
        return {
            "nodes": [list(n) for n in self.nodes],
            "edges": [
                {"src": list(s), "dst": list(d), "op": op, "m": k, "sign": "+" if sg > 0 else "-"}
                for s, d, op, k, sg in self.edges
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=1) + "\n"

    def to_dot(self) -> str:
        ids = {n: f"n{i}" for i, n in enumerate(self.nodes)}
        lines = ["digraph crystal {"]
        for n in self.nodes:
            lines.append(f'  {ids[n]} [label="{format_monomial(n)}"];')
        for s, d, op, k, sg in self.edges:
            style = "" if op == "xm" else ", style=dashed"
            sgn = "+" if sg > 0 else "-"
            lines.append(f'  {ids[s]} -> {ids[d]} [label="{k}", sign="{sgn}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def crystal_graph(
    basis: Iterable[Sequence[int]], m_range: Iterable[int], omega_edges: bool = False
) -> CrystalGraph:
    """Nodes in ``basis``; an edge ``b -> b'`` whenever ``x~_m b = +-b'`` stays inside."""
    nodes = sorted({tuple(m) for m in basis}, key=lambda m: (len(m), m))
    present = set(nodes)
    m_range = list(m_range)
    edges = []
    for n in nodes:
        b = CrystalNode(n)
        for m in m_range:
            x = crystal_xminus(m, b)
            if not x.zero and x.monomial in present:
                edges.append((n, x.monomial, "xm", m, x.sign))
            if omega_edges:
                w = crystal_omega(-m, b)
                if not w.zero and w.monomial in present:
                    edges.append((n, w.monomial, "psi", -m, w.sign))
    return CrystalGraph(nodes, edges)
