import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imverma.pbw import Element, WeightWindow, all_monomials, straighten
from imverma.qcoeff import ONE, q_power
from imverma.sweeps import random_vector
from imverma.verma import (
    CategoryObject,
    HighestWeight,
    ModuleVector,
    SumVector,
    act_omega,
    act_phi_current,
    act_psi_current,
    act_xminus,
    act_xplus,
    apply_spec,
    direct_sum,
    find_singular_vectors,
    local_nilpotency_exponent,
    singular_labels,
    xplus_labels,
)

LAM = HighestWeight(1)
QQ = q_power(1) - q_power(-1)
Q2 = q_power(2)


def vec(*idx, weight=LAM):
    return ModuleVector.basis_vector(idx, weight)


def test_weight_validation():
    with pytest.raises(ValueError):
        HighestWeight(0)
    assert HighestWeight(0, boundary_study=True).h == 0
    with pytest.raises(ValueError):
        HighestWeight(Fraction(1, 3))
    assert HighestWeight(Fraction(-5, 2)).k_eigenvalue(1) == q_power(Fraction(-9, 2))


def test_lowering_and_raising_examples():
    assert act_xminus(2, ModuleVector.highest(LAM)) == vec(2)
    assert act_xplus(0, vec(1)).is_zero()
    assert act_xplus(-3, vec(3)) == ModuleVector.highest(LAM)
    assert act_xplus(4, ModuleVector.highest(LAM)).is_zero()
    assert act_omega(0, vec(0, 0)) == ModuleVector(Element.monomial([0], ONE + Q2), LAM)


def test_cartan_zero_modes_measure_length():
    for m in all_monomials(3, -2, 2):
        v = vec(*m)
        assert act_psi_current(0, v) == v.scale(LAM.k_eigenvalue(len(m)))
        assert act_phi_current(0, v) == v.scale(LAM.k_eigenvalue(len(m)).inverse())


sums = st.lists(st.lists(st.integers(-2, 2), max_size=3), min_size=1, max_size=3).map(
    lambda ws: ModuleVector(sum((straighten(w) for w in ws), Element()), LAM)
)


@settings(max_examples=60, deadline=None)
@given(sums, st.integers(-3, 3), st.integers(-3, 3))
def test_raising_lowering_commutator(v, k, l):
    lhs = act_xplus(k, act_xminus(l, v)) - act_xminus(l, act_xplus(k, v))
    rhs = (act_psi_current(k + l, v) - act_phi_current(k + l, v)).scale(QQ.inverse())
    assert lhs == rhs


@settings(max_examples=40, deadline=None)
@given(sums, st.integers(-2, 2), st.integers(-2, 2))
def test_raising_modes_satisfy_quadratic_relation(v, k, l):
    a = act_xplus
    lhs = a(k + 1, a(l, v)) - a(l, a(k + 1, v)).scale(Q2)
    rhs = a(k, a(l + 1, v)).scale(Q2) - a(l + 1, a(k, v))
    assert lhs == rhs


def test_action_respects_serre_straightening():
    # acting through the free word and through its normal form agree
    rng = random.Random(11)
    for _ in range(40):
        word = [rng.randint(-2, 2) for _ in range(rng.randint(2, 4))]
        k = rng.randint(-4, 2)
        free = ModuleVector.highest(LAM)
        for i in reversed(word):
            free = act_xminus(i, free)
        normal = ModuleVector(straighten(word), LAM)
        assert free == normal
        assert act_xplus(k, free) == act_xplus(k, normal)


@pytest.mark.parametrize("h", [1, -1, 2, 5])
def test_no_singular_vectors_away_from_zero(h):
    w = HighestWeight(h)
    for k in (1, 2):
        for m in range(-3 * k, 3 * k + 1):
            assert find_singular_vectors(WeightWindow(k, m, -3, 3), w) == []


def test_boundary_weight_has_singular_generators():
    w = HighestWeight(0, boundary_study=True)
    for m in range(-3, 4):
        sv = find_singular_vectors(WeightWindow(1, m, -3, 3), w)
        assert [v.payload for v in sv] == [Element.monomial([m])]
        for k in singular_labels(WeightWindow(1, m, -3, 3), slack=6):
            assert act_xplus(k, sv[0]).is_zero()


def test_length_one_label_set_is_exhaustive():
    # x+_k [m] is (q^lam - q^-lam)/(q - 1/q) * delta_{k,-m}
    for m in range(-3, 4):
        for k in range(-10, 11):
            out = act_xplus(k, vec(m))
            assert out.is_zero() == (k != -m)
        assert act_xplus(-m, vec(m)) == ModuleVector.highest(LAM).scale(q_int_lam(LAM))


def q_int_lam(w):
    return (q_power(w.h) - q_power(-w.h)) / QQ


def test_local_nilpotency():
    rng = random.Random(5)
    for _ in range(50):
        v = random_vector(rng, LAM, 3, -2, 2)
        for k in xplus_labels(v):
            assert local_nilpotency_exponent(k, v) <= v.max_length() + 1
    with pytest.raises(ValueError):
        local_nilpotency_exponent(0, ModuleVector(Element(), LAM))


def test_json_round_trip():
    v = ModuleVector(straighten([0, 2]).scale(q_power(Fraction(1, 2))), HighestWeight(Fraction(3, 2), 2))
    assert ModuleVector.from_json_obj(v.to_json_obj()) == v


def test_apply_spec_runs_right_to_left():
    v = ModuleVector.highest(LAM)
    assert apply_spec("xp(-2) xm(2)", v) == v.scale(q_int_lam(LAM))
    with pytest.raises(ValueError):
        apply_spec("yy(1)", v)


def test_direct_sums_act_componentwise():
    a, b = HighestWeight(1), HighestWeight(-2)
    obj = direct_sum([a, b])
    u = obj.inject(0, vec(1, 0, weight=a))
    w = obj.inject(1, vec(2, weight=b))
    both = SumVector((u.parts[0], w.parts[1]))
    out = obj.act("xp", -2, both)
    assert obj.project(0, out) == act_xplus(-2, vec(1, 0, weight=a))
    assert obj.project(1, out) == act_xplus(-2, vec(2, weight=b))
    assert obj.project(1, obj.act("xm", 3, u)).is_zero()
    with pytest.raises(ValueError):
        obj.inject(0, vec(1, weight=b))
    with pytest.raises(ValueError):
        CategoryObject([HighestWeight(0, boundary_study=True)])
