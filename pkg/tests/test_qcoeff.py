from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from imverma.qcoeff import (
    ONE,
    Q,
    V,
    ZERO,
    Scalar,
    g_coeff,
    g_coeff_dual,
    q_int,
    q_power,
    taylor_coefficients,
    truncate,
    valuation,
)

laurent = st.dictionaries(
    st.tuples(st.integers(-4, 4), st.integers(-2, 2)), st.integers(-3, 3), max_size=4
).map(Scalar)
v_poly = st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), min_size=1, max_size=3).map(
    lambda d: Scalar({(a, 0): x for a, x in d.items()})
)
nonzero_v_poly = v_poly.filter(lambda s: not s.is_zero())
scalars = st.builds(lambda a, b: a / b, laurent, nonzero_v_poly)


@settings(max_examples=150, deadline=None)
@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@settings(max_examples=100, deadline=None)
@given(scalars, nonzero_v_poly)
def test_division_inverts_multiplication(a, b):
    assert (a * b) / b == a
    assert b * b.inverse() == ONE


@settings(max_examples=100, deadline=None)
@given(scalars)
def test_text_round_trip(a):
    assert Scalar.parse(str(a)) == a


@settings(max_examples=100, deadline=None)
@given(scalars, scalars)
def test_evaluation_is_a_homomorphism(a, b):
    v, c = Fraction(3, 2), Fraction(5, 7)
    try:
        ea, eb = a.evaluate(v, c), b.evaluate(v, c)
    except ZeroDivisionError:
        assume(False)
    assert (a * b).evaluate(v, c) == ea * eb
    assert (a + b).evaluate(v, c) == ea + eb


def test_canonical_forms_cancel_common_factors():
    a = (V * V - ONE) / (V - ONE)
    assert a == V + ONE
    assert a.is_polynomial()
    assert str(Q * Q - ONE) == "-1 + v^4"


def test_q_int_values():
    assert q_int(1) == ONE
    assert q_int(2) == q_power(1) + q_power(-1)
    assert q_int(3) == q_power(2) + ONE + q_power(-2)
    assert q_int(-2) == -q_int(2)
    # [n] = (q^n - q^-n)/(q - q^-1) also for half-integers
    n = Fraction(3, 2)
    assert q_int(n) == (q_power(n) - q_power(-n)) / (q_power(1) - q_power(-1))


def test_q_power_rejects_quarter_powers():
    with pytest.raises(ValueError):
        q_power(Fraction(1, 4))


def test_g_coeff_first_values():
    q2 = Q * Q
    assert g_coeff(0) == q2
    assert g_coeff(1) == q2 * q2 - ONE
    assert g_coeff(2) == (q2 * q2 - ONE) * q2
    assert g_coeff_dual(0) == q2.inverse()
    with pytest.raises(ValueError):
        g_coeff(-1)


def _series(a, n):
    return taylor_coefficients([-ONE, a], [-a, ONE], n)


def test_g_coeff_is_taylor_series_of_inverted_rational_function():
    qm2 = (Q * Q).inverse()
    assert _series(qm2, 20) == [g_coeff(r) for r in range(20)]


def test_g_coeff_dual_is_taylor_series_of_rational_function():
    assert _series(Q * Q, 20) == [g_coeff_dual(r) for r in range(20)]


def test_g_table_is_not_invariant_under_q_inversion():
    # the two generating functions differ, so do their coefficients
    assert g_coeff(0) != g_coeff_dual(0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 15))
def test_corrected_generating_identity(n):
    # (sum g(r) t^r)(t - q^-2) = q^-2 t - 1, coefficientwise
    qm2 = (Q * Q).inverse()
    g = [g_coeff(r) for r in range(n + 2)]
    lhs = {0: -qm2 * g[0]}
    for r in range(1, n + 2):
        lhs[r] = g[r - 1] - qm2 * g[r]
    assert lhs[0] == -ONE
    assert lhs[1] == qm2
    assert all(lhs[r].is_zero() for r in range(2, n + 2))


def test_valuation():
    assert valuation(V ** -1) == -1
    assert valuation(Q * Q + Q) == 2
    assert valuation(ONE / q_int(2)) == 2
    assert valuation(ONE / (Q - ONE)) == 0
    with pytest.raises(ValueError):
        valuation(ZERO)
    with pytest.raises(ValueError):
        valuation(Scalar.monomial(1, 0, 2))


def test_truncate():
    e = truncate(ONE / (ONE - V), 4)
    assert e.start == 0 and e.coeffs == (1, 1, 1, 1)
    e = truncate(V ** -2 + V, 4)
    assert e.start == -2 and e.coeffs == (1, 0, 0, 1)
    assert truncate(ZERO, 3).zero


def test_inverse_needs_single_c_power():
    with pytest.raises((ValueError, ZeroDivisionError)):
        (Scalar.monomial(1, 0, 1) + ONE).inverse()
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
