import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadenv.scrollcalc import (
    ScrollCalcError,
    ScrollDivisorClass as C,
    a2_scroll,
    base_locus_case,
    divisor_degree,
    h0_class,
    is_nondegenerate_class,
    predicted_a2,
    q_equals_scroll,
    x0_subscroll_type,
)


def test_h0_examples():
    assert h0_class(C((1, 2), 1, 0)) == 5
    assert h0_class(C((1, 2), 0, 2)) == 3
    assert h0_class(C((1, 2), 2, -2)) == 6
    assert h0_class(C((1, 2), -1, 5)) == 0


def test_nondegeneracy_clauses():
    assert is_nondegenerate_class(C((1, 2), 1, 1))
    assert not is_nondegenerate_class(C((1, 2), 0, 2))
    assert is_nondegenerate_class(C((1, 2), 2, -4))
    assert not is_nondegenerate_class(C((1, 2), 2, -5))


def test_q_equals_examples():
    assert q_equals_scroll(C((1, 1, 1), 3, 0))
    assert not q_equals_scroll(C((1, 2), 2, 0))
    assert q_equals_scroll(C((1, 2), 1, 3))


def test_predicted_values():
    assert predicted_a2(C((1, 2), 2, -2)) == 6
    assert predicted_a2(C((1, 1, 1), 3, 0)) == 3
    assert predicted_a2(C((1, 2), 1, 1)) == 6
    with pytest.raises(ScrollCalcError):
        predicted_a2(C((1, 2), 0, 0))


def test_scroll_counts_are_minimal_degree():
    # a variety of minimal degree in codimension c has C(c+1, 2) quadrics
    for t, c in [((1, 2), 2), ((2, 2), 3), ((1, 1, 1), 2), ((3,), 2), ((1, 1, 2), 3)]:
        assert a2_scroll(t) == c * (c + 1) // 2


def test_invalid_type():
    with pytest.raises(ScrollCalcError):
        C((2, 1), 1, 1)


def test_x0_and_cases():
    assert x0_subscroll_type((1, 2)) == (1,)
    assert x0_subscroll_type((1, 1, 1)) == ()
    assert x0_subscroll_type((1, 1, 3, 3)) == (1, 1)
    assert base_locus_case(C((1, 2), 2, -2)).startswith("Q=X")
    assert base_locus_case(C((1, 2), 1, 1)) == "Q=X (a=1, b<=a_1)"
    assert base_locus_case(C((1, 2), 1, 2)).startswith("Q in X+X0")
    assert base_locus_case(C((1, 1, 1), 3, 0)) == "Q=Y"
    assert divisor_degree(C((1, 1, 1), 3, 0)) == 9


types = st.lists(st.integers(0, 4), min_size=1, max_size=4).map(lambda t: tuple(sorted(t))).filter(lambda t: t[-1] >= 1)


@settings(max_examples=300, deadline=None)
@given(types, st.integers(0, 5), st.integers(-10, 10))
def test_rule_matches_h0_vanishing(t, a, b):
    cls = C(t, a, b)
    assert q_equals_scroll(cls) == (h0_class(cls.shifted(2 - a, -b)) == 0)


@settings(max_examples=200, deadline=None)
@given(types, st.integers(1, 4), st.integers(-6, 6))
def test_h0_monotone_in_b(t, a, b):
    # h0(aH + bF) is nondecreasing in b
    assert h0_class(C(t, a, b)) <= h0_class(C(t, a, b + 1))
