import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imverma.kashiwara import (
    RELATION_IDS,
    SupportBoundError,
    apply_operator_spec,
    omega_phi,
    omega_psi,
    omega_psi_defining_oracle,
    omega_psi_unbounded,
    parse_operator_spec,
    support_bound,
    verify_relation,
)
from imverma.pbw import Element, all_monomials, straighten
from imverma.qcoeff import ONE, ZERO, Scalar, q_power

Q2 = q_power(2)
monos = st.lists(st.integers(-3, 3), max_size=3).map(lambda w: tuple(sorted(w, reverse=True)))


def mono(*idx):
    return Element.monomial(idx)


def test_omega_kills_one():
    for k in range(-3, 4):
        assert omega_psi(k, Element.one()).is_zero()
        assert omega_phi(k, Element.one()).is_zero()


def test_omega_psi_on_a_generator():
    c = Scalar.monomial(1, 0, 1)  # gamma^(1/2)
    assert omega_psi(-2, mono(2)) == Element.one().scale(c ** -4)
    assert omega_phi(-2, mono(2)) == Element.one().scale(c ** 4)
    assert omega_psi(-1, mono(2)).is_zero()


def test_omega_psi_examples_at_gamma_one():
    assert omega_psi(0, mono(0, 0), "one") == Element.monomial([0], ONE + Q2)
    assert omega_psi(1, mono(1, 0), "one") == Element.monomial([2], Q2 * Q2 - ONE)


def test_omega_phi_example_at_gamma_one():
    assert omega_phi(0, mono(0, 0), "one") == Element.monomial([0], ONE + Q2.inverse())


def test_support_bounds():
    assert support_bound("psi", (2, -1)) == -2
    assert support_bound("phi", (2, -1)) == 1
    with pytest.raises(ValueError):
        support_bound("chi", (1,))
    for m in all_monomials(3, -2, 2, min_len=1):
        e = Element.monomial(m)
        b = support_bound("psi", m)
        for j in range(b - 4, b):
            assert omega_psi(j, e).is_zero()
        b = support_bound("phi", m)
        for j in range(b + 1, b + 5):
            assert omega_phi(j, e).is_zero()


def test_unbounded_sum_agrees_with_truncated_sum():
    for m in all_monomials(3, -2, 2, min_len=1):
        for k in range(-3, 4):
            assert omega_psi_unbounded(k, m) == omega_psi(k, Element.monomial(m), "one")


def test_unbounded_sum_flags_violations():
    # the bound assumes weakly decreasing input; (-5, 5) breaks it
    with pytest.raises(SupportBoundError):
        omega_psi_unbounded(0, (0, -5, 5), slack=12)


def test_defining_oracle_matches_recursion():
    rng = random.Random(3)
    for _ in range(60):
        word = tuple(rng.randint(-2, 2) for _ in range(rng.randint(1, 3)))
        k = rng.randint(-3, 3)
        want = omega_psi(k, straighten(word), "one")
        assert omega_psi_defining_oracle(k, word) == want


@settings(max_examples=60, deadline=None)
@given(monos, st.integers(-4, 4))
def test_gamma_specialization_commutes(m, k):
    e = Element.monomial(m)
    assert omega_psi(k, e).subs_c1() == omega_psi(k, e, "one")
    assert omega_phi(k, e).subs_c1() == omega_phi(k, e, "one")


@settings(max_examples=60, deadline=None)
@given(monos, st.integers(-4, 4))
def test_omega_shifts_grade(m, k):
    e = Element.monomial(m)
    for out in (omega_psi(k, e), omega_phi(k, e)):
        assert out.grades() <= {(len(m) - 1, sum(m) + k)}


@pytest.mark.parametrize("rel", RELATION_IDS)
def test_relations_hold_with_symbolic_gamma(rel):
    rep = verify_relation(rel, range(-3, 4), range(-3, 4), all_monomials(2, -2, 2))
    assert rep.ok, rep.mismatches[:2]
    assert rep.checked == 49 * len(all_monomials(2, -2, 2))


@pytest.mark.parametrize("rel", ["a_printed", "e_printed"])
def test_printed_delta_coefficients_need_gamma_one(rel):
    elems = all_monomials(1, -2, 2)
    assert not verify_relation(rel, range(-3, 4), range(-3, 4), elems).ok
    assert verify_relation(rel, range(-3, 4), range(-3, 4), elems, gamma="one").ok


def test_unknown_relation():
    with pytest.raises(ValueError):
        verify_relation("z", [0], [0], [()])


def test_operator_specs():
    assert parse_operator_spec("psi(2) phi(-1)") == [("psi", 2), ("phi", -1)]
    with pytest.raises(ValueError):
        parse_operator_spec("psi(2")
    with pytest.raises(ValueError):
        parse_operator_spec("")
    e = mono(1, 0)
    # rightmost first
    want = omega_psi(-1, omega_phi(0, e))
    assert apply_operator_spec("psi(-1) phi(0)", e) == want


def test_omega_psi_is_linear():
    a, b = straighten([0, 2]), straighten([1, 1])
    s = Scalar.parse("2 - v^4")
    for k in range(-2, 3):
        assert omega_psi(k, a + b.scale(s)) == omega_psi(k, a) + omega_psi(k, b).scale(s)
