import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from imverma.pbw import (
    Element,
    TerminationError,
    WeightWindow,
    _rewrite,
    ascending_inversions,
    enumerate_window,
    gap_measure,
    grade,
    multiply,
    parse_monomial,
    pbw_monomial,
    straighten,
    straighten_word,
)
from imverma.qcoeff import ONE, Scalar, q_power

Q2 = q_power(2)
words = st.lists(st.integers(-4, 4), max_size=5).map(tuple)
# products concatenate words, keep the total length <= 6
short_words = st.lists(st.integers(-3, 3), max_size=2).map(tuple)


def test_adjacent_rule():
    assert straighten([0, 1]) == Element.monomial([1, 0], Q2)


def test_one_step_of_the_general_rule():
    assert straighten([0, 2]) == Element({(2, 0): Q2, (1, 1): Q2 - ONE})


def test_empty_and_sorted_words_are_fixed():
    assert straighten([]) == Element.one()
    assert straighten([3, 1, 1, -2]) == Element.monomial([3, 1, 1, -2])


def test_rewrite_step_strictly_lowers_gap_measure():
    for a in range(-3, 4):
        for b in range(a + 1, a + 6):
            w = (0, a, b, -1)
            before = gap_measure(w)
            for _, img in _rewrite(w, 1):
                assert gap_measure(img) < before


def test_inversion_count_alone_is_not_a_measure():
    # the third image of x_0 x_3 raises the number of ascents
    w = (3, 0, 3)
    images = [img for _, img in _rewrite(w, 1)]
    assert (3, 1, 2) in images
    assert ascending_inversions((3, 1, 2)) > ascending_inversions(w) - 1
    assert gap_measure((3, 1, 2)) < gap_measure(w)


@settings(max_examples=200, deadline=None)
@given(words)
def test_strategies_agree(w):
    assert straighten_word(w, "leftmost") == straighten_word(w, "rightmost")


@settings(max_examples=200, deadline=None)
@given(words)
def test_specialization_at_v_one_sorts_the_word(w):
    e = straighten(w).subs_v1()
    assert e == Element.monomial(sorted(w, reverse=True))


@settings(max_examples=200, deadline=None)
@given(words)
def test_grade_preserved(w):
    assert straighten(w).grades() <= {grade(w)}


@settings(max_examples=60, deadline=None)
@given(short_words, short_words, short_words)
def test_multiplication_associative(a, b, c):
    ea, eb, ec = (straighten(x) for x in (a, b, c))
    assert multiply(multiply(ea, eb), ec) == multiply(ea, multiply(eb, ec))


@settings(max_examples=40, deadline=None)
@given(short_words.map(lambda w: w + (0,)), short_words)
def test_multiplication_compatible_with_concatenation(a, b):
    assert multiply(straighten(a), straighten(b)) == straighten(a + b)


def test_coefficients_are_polynomials_in_q_squared():
    rng = random.Random(7)
    for _ in range(100):
        w = [rng.randint(-3, 3) for _ in range(rng.randint(0, 5))]
        for m, c in straighten(w).terms.items():
            assert c.is_polynomial()
            assert all(e % 4 == 0 and e >= 0 for e, _ in c.num)


def test_termination_guard_fires_on_bad_rule(monkeypatch):
    import imverma.pbw as pbw

    def bad(word, i):
        return [(ONE, word)]

    monkeypatch.setattr(pbw, "_rewrite", bad)
    run = pbw._make_straightener(False)
    with pytest.raises(TerminationError):
        run((0, 5))


def test_enumerate_window():
    assert enumerate_window(2, 0, -1, 1) == [(0, 0), (1, -1)]
    assert enumerate_window(0, 0, -1, 1) == [()]
    assert enumerate_window(0, 1, -1, 1) == []
    for m in enumerate_window(3, 1, -3, 3):
        assert len(m) == 3 and sum(m) == 1 and list(m) == sorted(m, reverse=True)
    assert WeightWindow(2, 0, -1, 1).basis() == [(0, 0), (1, -1)]


def test_parse_and_validate_monomials():
    assert parse_monomial("[2, -1,0]") == (2, -1, 0)
    assert parse_monomial("[]") == ()
    for bad in ("2,1", "[a]", "[1,,2]"):
        with pytest.raises(ValueError):
            parse_monomial(bad)
    with pytest.raises(ValueError):
        pbw_monomial([0, 1])


def test_json_round_trip():
    e = straighten([0, 2, -1, 3])
    assert Element.from_json(e.to_json()) == e
    assert Element.from_json_obj([{"coeff": "1/2*v^-2", "monomial": [1]}]).coefficient([1]) == Scalar.parse(
        "1/2*v^-2"
    )
