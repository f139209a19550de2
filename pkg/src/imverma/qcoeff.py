"""Exact coefficient arithmetic in ``v`` (``v**2 == q``) and ``c`` (``c**2 == gamma``).

A :class:`Scalar` is a fraction ``N / D`` where ``N`` is a Laurent polynomial
in ``(v, c)`` with rational coefficients and ``D`` is a polynomial in ``v``
alone with ``D(0) == 1``.  Every value that shows up in the algebra (quantum
integers, ``g``-coefficients, straightening coefficients, Gram determinants,
solutions of the singular-vector systems) fits this shape.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

__all__ = [
    "Scalar",
    "Expansion",
    "ZERO",
    "ONE",
    "V",
    "C",
    "Q",
    "GAMMA",
    "q_int",
    "q_power",
    "g_coeff",
    "g_coeff_dual",
    "valuation",
    "truncate",
    "taylor_coefficients",
    "poly_gcd",
]


def _tidy(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


# ---------------------------------------------------------------------------
# dense univariate helpers over Q (lists, index = exponent)


def _strip(p: List) -> List:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: List, b: List) -> Tuple[List, List]:
    a = [Fraction(x) for x in a]
    b = _strip(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(_strip(a)) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / lead
        quot[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
    return _strip(quot), a


def poly_gcd(a: List, b: List) -> List:
    """Monic gcd of two dense polynomials over Q (``[]`` for gcd(0, 0))."""
    a = _strip([Fraction(x) for x in a])
    b = _strip([Fraction(x) for x in b])
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if not a:
        return []
    lead = a[-1]
    return [x / lead for x in a]


def _dense(d: Dict[int, object]) -> Tuple[int, List]:
    """Laurent dict -> (valuation, dense list)."""
    lo = min(d)
    hi = max(d)
    out = [0] * (hi - lo + 1)
    for e, x in d.items():
        out[e - lo] = x
    return lo, out


def _sparse(lo: int, p: List) -> Dict[int, object]:
    return {lo + i: _tidy(x) for i, x in enumerate(p) if x != 0}


# ---------------------------------------------------------------------------


_ONE_DEN = {0: 1}


class Scalar:
    """Immutable exact scalar ``num / den``.

    ``num`` maps ``(v_exp, c_exp)`` to a nonzero rational; ``den`` maps
    ``v_exp`` to rationals, has nonzero constant term normalized to 1 and is
    coprime to ``num``.  Equality and hashing are structural.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=None, den=None, *, _raw=False):
        if num is None:
            num = {}
        elif not isinstance(num, dict):
            x = _tidy(Fraction(num)) if not isinstance(num, int) else num
            num = {(0, 0): x} if x != 0 else {}
        if _raw:
            self.num = num
            self.den = den if den is not None else _ONE_DEN
        else:
            num = {k: _tidy(x) for k, x in num.items() if x != 0}
            self.num, self.den = _normalize(num, den)
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def monomial(cls, coeff=1, v: int = 0, c: int = 0) -> "Scalar":
        coeff = _tidy(Fraction(coeff))
        if coeff == 0:
            return ZERO
        return cls({(v, c): coeff}, _raw=True)

    @classmethod
    def from_v_poly(cls, coeffs: Dict[int, object]) -> "Scalar":
        return cls({(e, 0): x for e, x in coeffs.items()})

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den is _ONE_DEN or self.den == _ONE_DEN

    def has_c(self) -> bool:
        return any(b != 0 for (_, b) in self.num)

    def __bool__(self):
        return bool(self.num)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den is _ONE_DEN and other.den is _ONE_DEN:
            out = dict(self.num)
            for k, x in other.num.items():
                y = out.get(k, 0) + x
                if y == 0:
                    out.pop(k, None)
                else:
                    out[k] = _tidy(y) if type(y) is Fraction else y
            return Scalar(out, _raw=True)
        if self.den == other.den:
            return Scalar(_add_num(self.num, other.num), self.den)
        n1 = _mul_num_den(self.num, other.den)
        n2 = _mul_num_den(other.num, self.den)
        return Scalar(_add_num(n1, n2), _mul_den(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar({k: -x for k, x in self.num.items()}, self.den, _raw=True)

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return Scalar(other) - self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, (int, Fraction)):
                if other == 0:
                    return ZERO
                return Scalar(
                    {k: _tidy(x * other) for k, x in self.num.items()},
                    self.den,
                    _raw=True,
                )
            other = Scalar(other)
        if not self.num or not other.num:
            return ZERO
        num = _mul_num(self.num, other.num)
        if self.den is _ONE_DEN and other.den is _ONE_DEN:
            return Scalar(num, _raw=True)
        return Scalar(num, _mul_den(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero Scalar")
        cexps = {b for (_, b) in self.num}
        if len(cexps) != 1:
            raise ValueError(
                "cannot invert a Scalar whose numerator is not a monomial in c"
            )
        (b,) = cexps
        vpoly = {a: x for (a, _), x in self.num.items()}
        lo = min(vpoly)
        # 1/(v^lo * c^b * P) * D
        new_num = {(a - lo, -b): x for a, x in self.den.items()}
        p = {a - lo: x for a, x in vpoly.items()}
        return Scalar(new_num, p)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (frozenset(self.num.items()), frozenset(self.den.items()))
            )
        return self._hash

    # -- specializations --------------------------------------------------

    def subs_c1(self) -> "Scalar":
        """Specialize ``c -> 1`` (so ``gamma -> 1``)."""
        out: Dict[Tuple[int, int], object] = {}
        for (a, _), x in self.num.items():
            out[(a, 0)] = out.get((a, 0), 0) + x
        if self.den is _ONE_DEN:
            return Scalar({k: _tidy(x) if type(x) is Fraction else x
                           for k, x in out.items() if x != 0}, _raw=True)
        return Scalar(out, self.den)

    def subs_v1(self) -> "Scalar":
        """Specialize ``v -> 1`` (so ``q -> 1``); result is a Laurent polynomial in c."""
        d = sum(Fraction(x) for x in self.den.values())
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at v = 1")
        out: Dict[Tuple[int, int], object] = {}
        for (_, b), x in self.num.items():
            out[(0, b)] = out.get((0, b), 0) + Fraction(x) / d
        return Scalar(out)

    def evaluate(self, v=1, c=1):
        """Numeric value at exact rationals ``v``, ``c``."""
        v = Fraction(v)
        c = Fraction(c)
        n = sum(Fraction(x) * v ** a * c ** b for (a, b), x in self.num.items())
        d = sum(Fraction(x) * v ** a for a, x in self.den.items())
        return _tidy(n / d)

    def constant_term(self):
        """Constant term of the v-adic expansion (requires valuation >= 0, no c)."""
        if self.has_c():
            raise ValueError("constant term of a Scalar with unspecialized c")
        if not self.num:
            return 0
        if valuation(self) < 0:
            raise ValueError("Scalar has a pole at v = 0")
        return self.num.get((0, 0), 0)

    def v_coefficients(self) -> Dict[int, object]:
        """Numerator as a ``{v_exp: coeff}`` dict (requires no c, polynomial)."""
        if self.has_c() or not self.is_polynomial():
            raise ValueError("not a Laurent polynomial in v")
        return {a: x for (a, _), x in self.num.items()}

    # -- text -------------------------------------------------------------

    def __str__(self):
        n = _format_num(self.num)
        if self.is_polynomial():
            return n
        d = _format_num({(a, 0): x for a, x in self.den.items()})
        return f"({n})/({d})"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        return parse_scalar(text)


def _add_num(a, b):
    out = dict(a)
    for k, x in b.items():
        y = out.get(k, 0) + x
        if y == 0:
            out.pop(k, None)
        else:
            out[k] = y
    return out


def _mul_num(a, b):
    out: Dict[Tuple[int, int], object] = {}
    get = out.get
    for (a1, b1), x in a.items():
        for (a2, b2), y in b.items():
            k = (a1 + a2, b1 + b2)
            out[k] = get(k, 0) + x * y
    return {k: (_tidy(x) if type(x) is Fraction else x) for k, x in out.items() if x != 0}


def _mul_num_den(num, den):
    out: Dict[Tuple[int, int], object] = {}
    for (a1, b1), x in num.items():
        for a2, y in den.items():
            k = (a1 + a2, b1)
            out[k] = out.get(k, 0) + x * y
    return {k: x for k, x in out.items() if x != 0}


def _mul_den(d1, d2):
    if d1 is _ONE_DEN:
        return d2
    if d2 is _ONE_DEN:
        return d1
    out: Dict[int, object] = {}
    for a1, x in d1.items():
        for a2, y in d2.items():
            out[a1 + a2] = out.get(a1 + a2, 0) + x * y
    return {k: x for k, x in out.items() if x != 0}


def _normalize(num, den):
    """Cancel common factors and enforce ``den(0) == 1``."""
    if den is None or den is _ONE_DEN:
        return num, _ONE_DEN
    den = {a: x for a, x in den.items() if x != 0}
    if not den:
        raise ZeroDivisionError("Scalar with zero denominator")
    if not num:
        return {}, _ONE_DEN
    # move the v-valuation of the denominator into the numerator
    lo = min(den)
    if lo:
        den = {a - lo: x for a, x in den.items()}
        num = {(a - lo, b): x for (a, b), x in num.items()}
    if len(den) > 1:
        dlo, dd = _dense(den)
        g = dd
        by_c: Dict[int, Dict[int, object]] = {}
        for (a, b), x in num.items():
            by_c.setdefault(b, {})[a] = x
        for part in by_c.values():
            if len(g) <= 1:
                break
            _, pd = _dense(part)
            g = poly_gcd(g, pd)
        if len(g) > 1:
            new_den, _ = _poly_divmod(dd, g)
            den = _sparse(0, new_den)
            new_num = {}
            for b, part in by_c.items():
                plo, pd = _dense(part)
                qd, _ = _poly_divmod(pd, g)
                for e, x in _sparse(plo, qd).items():
                    new_num[(e, b)] = x
            num = new_num
    c0 = Fraction(den[0])
    if c0 != 1:
        den = {a: _tidy(Fraction(x) / c0) for a, x in den.items()}
        num = {k: _tidy(Fraction(x) / c0) for k, x in num.items()}
    else:
        num = {k: _tidy(x) if type(x) is Fraction else x for k, x in num.items()}
    if len(den) == 1:
        return num, _ONE_DEN
    return num, den


def _format_coeff(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _format_num(num) -> str:
    if not num:
        return "0"
    parts = []
    for (a, b) in sorted(num):
        x = Fraction(num[(a, b)])
        sign = "-" if x < 0 else "+"
        ax = abs(x)
        factors = []
        if a:
            factors.append(f"v^{a}")
        if b:
            factors.append(f"c^{b}")
        if not factors:
            body = _format_coeff(ax)
        elif ax == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(ax)] + factors)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(
    r"^(?:(?P<coef>\d+(?:/\d+)?))?"
    r"(?P<factors>(?:\*?[vc](?:\^-?\d+)?)*)$"
)
_FACTOR = re.compile(r"([vc])(?:\^(-?\d+))?")


def _parse_laurent(text: str) -> Dict[Tuple[int, int], object]:
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty Scalar text")
    # exponent signs are shielded so that +/- only separate terms
    shielded = s.replace("^-", "^~")
    tokens = [t.replace("~", "-") for t in re.findall(r"[+-]?[^+-]+", shielded)]
    if "".join(tokens) != s:
        raise ValueError(f"cannot parse Scalar text {text!r}")
    out: Dict[Tuple[int, int], object] = {}
    for tok in tokens:
        sign = -1 if tok.startswith("-") else 1
        tok = tok.lstrip("+-")
        m = _TERM.match(tok)
        if not m or not tok:
            raise ValueError(f"cannot parse term {tok!r} in {text!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        factors = m.group("factors")
        if m.group("coef") and factors and not factors.startswith("*"):
            raise ValueError(f"missing '*' in term {tok!r}")
        if not m.group("coef") and factors.startswith("*"):
            raise ValueError(f"dangling '*' in term {tok!r}")
        a = b = 0
        for var, exp in _FACTOR.findall(factors):
            e = int(exp) if exp else 1
            if var == "v":
                a += e
            else:
                b += e
        out[(a, b)] = out.get((a, b), 0) + sign * coef
    return {k: _tidy(x) for k, x in out.items() if x != 0}


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical text form (``-1 + v^8``, ``(1)/(1 - v^4)``, ...)."""
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", s)
    if m:
        num = _parse_laurent(m.group(1))
        den = _parse_laurent(m.group(2))
        if any(b for (_, b) in den):
            raise ValueError("denominators must be free of c")
        return Scalar(num, {a: x for (a, _), x in den.items()})
    if s == "0":
        return ZERO
    return Scalar(_parse_laurent(s))


ZERO = Scalar({}, _raw=True)
ONE = Scalar({(0, 0): 1}, _raw=True)
V = Scalar({(1, 0): 1}, _raw=True)
C = Scalar({(0, 1): 1}, _raw=True)
Q = Scalar({(2, 0): 1}, _raw=True)
GAMMA = Scalar({(0, 2): 1}, _raw=True)


def q_power(n) -> Scalar:
    """``q**n`` for ``n`` with ``2 n`` integral."""
    two_n = Fraction(n) * 2
    if two_n.denominator != 1:
        raise ValueError(f"q^{n} is not a Laurent monomial in v = q^(1/2)")
    return Scalar({(int(two_n), 0): 1}, _raw=True)


def q_int(n) -> Scalar:
    """Balanced quantum integer ``(q^n - q^-n) / (q - q^-1)``.

    Integral ``n`` gives a Laurent polynomial; half-integral ``n`` gives a
    rational function in ``v``.
    """
    two_n = Fraction(n) * 2
    if two_n.denominator != 1:
        raise ValueError(f"[{n}] needs 2n integral")
    if Fraction(n).denominator == 1:
        n = int(n)
        if n == 0:
            return ZERO
        sign = 1 if n > 0 else -1
        n = abs(n)
        return Scalar({(2 * (n - 1 - 2 * i), 0): sign for i in range(n)}, _raw=True)
    a = int(two_n)
    top = Scalar({(a, 0): 1, (-a, 0): -1})
    return top / Scalar({(2, 0): 1, (-2, 0): -1})


def g_coeff(r: int) -> Scalar:
    """Structure constant ``g(r)``: ``q^2`` at 0, ``(q^4 - 1) q^(2(r-1))`` after.

    These are the Taylor coefficients at ``t = 0`` of
    ``(q^-2 t - 1) / (t - q^-2)``.
    """
    if r < 0:
        raise ValueError("g_coeff needs r >= 0")
    if r == 0:
        return Scalar({(4, 0): 1}, _raw=True)
    e = 4 * (r - 1)
    return Scalar({(e + 8, 0): 1, (e, 0): -1}, _raw=True)


def g_coeff_dual(r: int) -> Scalar:
    """Taylor coefficients of ``(q^2 t - 1) / (t - q^2)``: ``g_coeff`` with ``q -> 1/q``."""
    if r < 0:
        raise ValueError("g_coeff_dual needs r >= 0")
    if r == 0:
        return Scalar({(-4, 0): 1}, _raw=True)
    e = -4 * (r - 1)
    return Scalar({(e - 8, 0): 1, (e, 0): -1}, _raw=True)


def valuation(s: Scalar) -> int:
    """v-adic order of ``s`` at ``v = 0`` (negative for poles)."""
    if not isinstance(s, Scalar):
        s = Scalar(s)
    if s.is_zero():
        raise ValueError("valuation of zero is undefined")
    if s.has_c():
        raise ValueError("valuation needs c specialized (call subs_c1 first)")
    return min(a for (a, _) in s.num)


@dataclass(frozen=True)
class Expansion:
    """Window of a v-adic expansion: ``sum(coeffs[i] * v**(start + i))``."""

    start: int
    coeffs: Tuple
    zero: bool = False


def truncate(s: Scalar, n: int) -> Expansion:
    """First ``n`` coefficients of the v-adic expansion of ``s``.

    The window starts at ``v**0`` when the valuation is non-negative and at
    ``v**valuation`` otherwise.
    """
    if s.is_zero():
        return Expansion(0, tuple([0] * n), zero=True)
    start = min(valuation(s), 0)
    num = {a - start: Fraction(x) for (a, _), x in s.num.items()}
    den = [Fraction(s.den.get(i, 0)) for i in range(max(s.den) + 1)]
    out = []
    for i in range(n):
        acc = num.get(i, Fraction(0))
        for j in range(1, min(i, len(den) - 1) + 1):
            acc -= den[j] * out[i - j]
        out.append(acc)  # den[0] == 1
    return Expansion(start, tuple(_tidy(x) for x in out))


def taylor_coefficients(numer: List[Scalar], denom: List[Scalar], n: int) -> List[Scalar]:
    """First ``n`` Taylor coefficients in ``t`` of ``numer(t) / denom(t)``.

    Both arguments are coefficient lists (index = power of ``t``) over the
    Scalar field; ``denom[0]`` must be invertible.
    """
    if not denom or denom[0].is_zero():
        raise ZeroDivisionError("denominator must have a nonzero constant term in t")
    inv0 = denom[0].inverse()
    out: List[Scalar] = []
    for i in range(n):
        acc = numer[i] if i < len(numer) else ZERO
        for j in range(1, min(i, len(denom) - 1) + 1):
            acc = acc - denom[j] * out[i - j]
        out.append(acc * inv0)
    return out
