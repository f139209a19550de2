import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imverma.kashiwara import omega_psi
from imverma.pbw import Element, WeightWindow, all_monomials, enumerate_window, left_multiply, straighten
from imverma.qcoeff import ONE, ZERO, Scalar, q_power
from imverma.shapovalov import (
    det_witness,
    gram,
    pair,
    pair_closed_n2,
    pair_monomials,
    pair_unrestricted,
)
from imverma.sweeps import n2_quadruples

Q2 = q_power(2)


def test_small_values():
    assert pair_monomials((), ()) == ONE
    assert pair_monomials((3,), (3,)) == ONE
    assert pair_monomials((0, 0), (0, 0)) == ONE + Q2
    assert pair_monomials((1, -1), (0, 0)).is_zero()


def test_gram_example():
    g = gram(WeightWindow(2, 0, -1, 1))
    assert g.basis == [(0, 0), (1, -1)]
    assert g.entries == [[ONE + Q2, ZERO], [ZERO, ONE]]
    assert g.mod_q2() == [[1, 0], [0, 1]]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gram_symmetric_and_unitriangular_mod_q2(k):
    for m in range(-4, 5):
        w = WeightWindow(k, m, -3, 3)
        if not w.basis():
            continue
        g = gram(w)
        assert g.is_symmetric()
        assert g.congruent_to_identity()
        assert det_witness(g)


def test_cross_length_pairings_vanish_without_shortcut():
    monos = all_monomials(3, -2, 2)
    for a in monos:
        for b in monos:
            if len(a) != len(b):
                assert pair_unrestricted(a, b).is_zero()


def test_shortcut_agrees_with_unrestricted_recursion():
    monos = all_monomials(2, -2, 2)
    for a in monos:
        for b in monos:
            assert pair_unrestricted(a, b) == pair_monomials(a, b)


def test_closed_form_for_length_two():
    for m1, m2, k1, k2 in n2_quadruples(-4, 4):
        assert pair_monomials((m1, m2), (k1, k2)) == pair_closed_n2(m1, m2, k1, k2)
    with pytest.raises(ValueError):
        pair_closed_n2(0, 1, 1, 0)


elems = st.lists(
    st.tuples(st.lists(st.integers(-2, 2), max_size=3), st.integers(-2, 2)), max_size=3
).map(lambda ts: sum((straighten(w).scale(c) for w, c in ts), Element()))


@settings(max_examples=60, deadline=None)
@given(elems, elems, st.integers(-3, 3))
def test_adjunction(a, b, m):
    assert pair(left_multiply(m, a), b) == pair(a, omega_psi(-m, b, "one"))


@settings(max_examples=60, deadline=None)
@given(elems, elems)
def test_symmetry_on_elements(a, b):
    assert pair(a, b) == pair(b, a)


def test_pairings_lie_in_z_q2():
    for m in range(-3, 4):
        for a in enumerate_window(3, m, -2, 2):
            for b in enumerate_window(3, m, -2, 2):
                p = pair_monomials(a, b)
                assert all(e >= 0 and e % 4 == 0 and isinstance(x, int) for (e, _), x in p.num.items())


def test_csv_and_json_exports():
    g = gram(WeightWindow(2, 0, -1, 1))
    assert g.to_csv().splitlines()[0] == ',"[0,0]","[1,-1]"'
    obj = g.to_json_obj(mod_q2=True)
    assert obj["entries"][0][0] == "1 + v^4"
    assert obj["mod_q2"] == [[1, 0], [0, 1]]
