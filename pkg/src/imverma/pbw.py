"""Words in the lowering modes ``x_i``, PBW monomials and the straightening rewriter.

Normal order is weakly *decreasing* indices.  Two quadratic rules suffice::

    x_a x_{a+1} = q^2 x_{a+1} x_a
    x_a x_b     = q^2 x_b x_a - x_{b-1} x_{a+1} + q^2 x_{a+1} x_{b-1}    (b > a + 1)

Monomials are plain tuples of ints; an :class:`Element` maps monomials to
:class:`~imverma.qcoeff.Scalar` coefficients.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from .qcoeff import ONE, ZERO, Scalar, q_power

__all__ = [
    "Monomial",
    "Element",
    "WeightWindow",
    "TerminationError",
    "pbw_monomial",
    "is_pbw",
    "grade",
    "straighten",
    "straighten_word",
    "multiply",
    "left_multiply",
    "enumerate_window",
    "gap_measure",
    "ascending_inversions",
    "parse_monomial",
]

Monomial = Tuple[int, ...]

Q2 = q_power(2)


class TerminationError(RuntimeError):
    """A rewrite step failed to decrease the termination measure."""


def is_pbw(indices: Sequence[int]) -> bool:
    return all(indices[i] >= indices[i + 1] for i in range(len(indices) - 1))


def pbw_monomial(indices: Iterable[int]) -> Monomial:
    """Validate and return a weakly decreasing index tuple."""
    m = tuple(int(i) for i in indices)
    if not is_pbw(m):
        raise ValueError(f"{list(m)} is not weakly decreasing")
    return m


def grade(m: Sequence[int]) -> Tuple[int, int]:
    """``(length, degree)`` where degree is the index sum."""
    return len(m), sum(m)


def ascending_inversions(word: Sequence[int]) -> int:
    n = len(word)
    return sum(1 for i in range(n) for j in range(i + 1, n) if word[i] < word[j])


def gap_measure(word: Sequence[int]) -> int:
    """Sum of ``w[j] - w[i]`` over all ascending pairs ``i < j``.

    Each of the three words produced by a rewrite step has a strictly smaller
    value than the word it replaces, so this bounds the rewriting depth.
    """
    n = len(word)
    total = 0
    for i in range(n):
        wi = word[i]
        for j in range(i + 1, n):
            if word[j] > wi:
                total += word[j] - wi
    return total


def parse_monomial(text: str) -> Monomial:
    """Parse a monomial literal ``[i1,i2,...]``."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"monomial literal must be bracketed: {text!r}")
    body = s[1:-1].strip()
    if not body:
        return ()
    try:
        return tuple(int(tok) for tok in body.split(","))
    except ValueError:
        raise ValueError(f"bad monomial literal {text!r}") from None


def format_monomial(m: Sequence[int]) -> str:
    return "[" + ",".join(str(i) for i in m) + "]"


# ---------------------------------------------------------------------------
# Element


class Element:
    """Finite linear combination of PBW monomials with Scalar coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Scalar] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def monomial(cls, m: Sequence[int], coeff: Scalar = ONE) -> "Element":
        return cls({pbw_monomial(m): coeff})

    @classmethod
    def one(cls) -> "Element":
        return cls({(): ONE})

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def coefficient(self, m: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(m), ZERO)

    def __add__(self, other: "Element") -> "Element":
        return Element(_add_into(dict(self.terms), other.terms))

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, s) -> "Element":
        if not isinstance(s, Scalar):
            s = Scalar(s)
        if s.is_zero():
            return Element()
        return Element({m: c * s for m, c in self.terms.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def grades(self) -> set:
        return {grade(m) for m in self.terms}

    def homogeneous_parts(self) -> Dict[Tuple[int, int], "Element"]:
        out: Dict[Tuple[int, int], Dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            out.setdefault(grade(m), {})[m] = c
        return {g: Element(t) for g, t in out.items()}

    def subs_c1(self) -> "Element":
        return Element({m: c.subs_c1() for m, c in self.terms.items()})

    def subs_v1(self) -> "Element":
        return Element({m: c.subs_v1() for m, c in self.terms.items()})

    def map_coefficients(self, f) -> "Element":
        return Element({m: f(c) for m, c in self.terms.items()})

    # -- serialization ----------------------------------------------------

    def to_json_obj(self) -> List[dict]:
        return [
            {"coeff": str(c), "monomial": list(m)} for m, c in sorted(self.terms.items())
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj) -> "Element":
        terms: Dict[Monomial, Scalar] = {}
        for entry in obj:
            m = pbw_monomial(entry["monomial"])
            c = Scalar.parse(entry["coeff"])
            terms[m] = terms.get(m, ZERO) + c
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "Element":
        return cls.from_json_obj(json.loads(text))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            parts.append(f"({c})*{format_monomial(m)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Element({self})"


def _add_into(acc: Dict[Monomial, Scalar], terms: Dict[Monomial, Scalar], scale: Scalar | None = None):
    for m, c in terms.items():
        if scale is not None:
            c = c * scale
        s = acc.get(m)
        s = c if s is None else s + c
        if s.is_zero():
            acc.pop(m, None)
        else:
            acc[m] = s
    return acc


# ---------------------------------------------------------------------------
# straightening


def _rewrite(word: Monomial, i: int) -> List[Tuple[Scalar, Monomial]]:
    a, b = word[i], word[i + 1]
    pre, post = word[:i], word[i + 2:]
    if b == a + 1:
        return [(Q2, pre + (b, a) + post)]
    return [
        (Q2, pre + (b, a) + post),
        (-ONE, pre + (b - 1, a + 1) + post),
        (Q2, pre + (a + 1, b - 1) + post),
    ]


def _check_step(word: Monomial, images: List[Tuple[Scalar, Monomial]]) -> None:
    before = gap_measure(word)
    for _, w in images:
        if gap_measure(w) >= before:
            raise TerminationError(
                f"rewrite {list(word)} -> {list(w)} does not decrease the measure"
            )


def _first_ascent(word: Monomial, rightmost: bool) -> int:
    rng = range(len(word) - 2, -1, -1) if rightmost else range(len(word) - 1)
    for i in rng:
        if word[i] < word[i + 1]:
            return i
    return -1


def _make_straightener(rightmost: bool):
    @lru_cache(maxsize=None)
    def run(word: Monomial) -> Dict[Monomial, Scalar]:
        i = _first_ascent(word, rightmost)
        if i < 0:
            return {word: ONE}
        images = _rewrite(word, i)
        _check_step(word, images)
        acc: Dict[Monomial, Scalar] = {}
        for coeff, w in images:
            _add_into(acc, run(w), coeff)
        return acc

    return run


_straighten_left = _make_straightener(rightmost=False)
_straighten_right = _make_straightener(rightmost=True)


def straighten_word(word: Sequence[int], strategy: str = "leftmost") -> Dict[Monomial, Scalar]:
    """Normal form of a free word as a raw ``{monomial: coeff}`` dict (shared, do not mutate)."""
    word = tuple(word)
    if strategy == "leftmost":
        return _straighten_left(word)
    if strategy == "rightmost":
        return _straighten_right(word)
    raise ValueError(f"unknown strategy {strategy!r}")


def straighten(word: Sequence[int], strategy: str = "leftmost") -> Element:
    """Rewrite a free word into PBW normal form."""
    return Element(straighten_word(word, strategy))


def left_multiply(index: int, e: Element) -> Element:
    """``x_index * e``."""
    acc: Dict[Monomial, Scalar] = {}
    for m, c in e.terms.items():
        _add_into(acc, _straighten_left((index,) + m), c)
    return Element(acc)


def multiply(a: Element, b: Element) -> Element:
    acc: Dict[Monomial, Scalar] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            _add_into(acc, _straighten_left(m1 + m2), c1 * c2)
    return Element(acc)


# ---------------------------------------------------------------------------
# weight windows


def enumerate_window(k: int, m: int, lo: int, hi: int) -> List[Monomial]:
    """Weakly decreasing ``k``-tuples with entries in ``[lo, hi]`` summing to ``m``.

    Returned in lexicographic order.
    """
    if lo > hi:
        raise ValueError("need lo <= hi")
    if k < 0:
        raise ValueError("need k >= 0")
    out: List[Monomial] = []

    def rec(prefix: List[int], remaining: int, cap: int, total: int):
        if remaining == 0:
            if total == m:
                out.append(tuple(prefix))
            return
        for x in range(lo, cap + 1):
            rest = m - total - x
            # the remaining slots hold values in [lo, x]
            if rest < lo * (remaining - 1) or rest > x * (remaining - 1):
                continue
            prefix.append(x)
            rec(prefix, remaining - 1, x, total + x)
            prefix.pop()

    rec([], k, hi, 0)
    return sorted(out)


@dataclass(frozen=True)
class WeightWindow:
    """Finite truncation of one weight space: length, degree, index bounds."""

    length: int
    degree: int
    lo: int
    hi: int

    def basis(self) -> List[Monomial]:
        return enumerate_window(self.length, self.degree, self.lo, self.hi)

    def to_json_obj(self) -> dict:
        return {"length": self.length, "degree": self.degree, "lo": self.lo, "hi": self.hi}


def all_monomials(max_len: int, lo: int, hi: int, min_len: int = 0) -> List[Monomial]:
    """Every weakly decreasing tuple of length ``min_len..max_len`` with entries in ``[lo, hi]``."""
    out: List[Monomial] = []
    for n in range(min_len, max_len + 1):
        out.extend(
            tuple(sorted(c, reverse=True))
            for c in itertools.combinations_with_replacement(range(lo, hi + 1), n)
        )
    return sorted(out, key=lambda m: (len(m), m))
