from fractions import Fraction
from math import comb

import pytest

from quadenv.exactlinalg import DEFAULT_PRIME, GF, QQ, rank
from quadenv.multipoly import MultiPoly, parse_poly
from quadenv.quadspace import (
    MULTI_PRIME,
    SAMPLED,
    SYMBOLIC,
    SamplingPolicy,
    ambient_space,
    contains_in_baselocus,
    evaluation_matrix,
    exclusion_witnesses,
    quadric_basis,
    same_row_space,
    vanishes_on,
)
from quadenv.scrollcalc import x0_subscroll_type
from quadenv.varieties import (
    elliptic_normal_curve,
    linear_space,
    point_config_on_rnc,
    point_list,
    rational_curve_with_4secant,
    rational_normal_curve,
    scroll,
    scroll_divisor,
    secant_line,
)

HANKEL = ["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]


def test_single_point_matrix_shape():
    m = evaluation_matrix([(1, 2, 3)], 2)
    assert (m.rows, m.cols) == (1, 6)


def test_rnc_points_matrix_rank():
    pts = point_config_on_rnc(4, 9).points
    m = evaluation_matrix(pts, 2)
    assert (m.rows, m.cols) == (9, 15)
    assert rank(m) == 9


def test_duplicate_point_keeps_rank():
    pts = [(1, t, t * t) for t in (1, 2, 3)]
    assert rank(evaluation_matrix(pts + [pts[0]], 2)) == rank(evaluation_matrix(pts, 2))


def test_twisted_cubic_basis_matches_hankel_minors():
    b = quadric_basis(rational_normal_curve(3))
    assert b.a2 == 3 and b.certification == SYMBOLIC
    hankel = [parse_poly(h, 4) for h in HANKEL]
    from quadenv.quadspace import QuadricBasis

    oracle = QuadricBasis(3, hankel, 3, SYMBOLIC, QQ)
    assert same_row_space(b, oracle)


def test_quintic_elliptic():
    b = quadric_basis(elliptic_normal_curve(3))
    assert b.a2 == 5 and b.certification == SYMBOLIC


def test_scroll_s12():
    assert quadric_basis(scroll((1, 2))).a2 == 3


def test_points_get_multi_prime():
    b = quadric_basis(point_config_on_rnc(4, 9))
    assert b.a2 == 6 and b.certification == MULTI_PRIME


def test_points_over_one_prime_are_sampled_only():
    p = DEFAULT_PRIME
    pts = [[pow(t, i, p) for i in range(4)] for t in range(1, 8)]
    b = quadric_basis(point_list(pts, GF(p)))
    assert b.a2 == 3 and b.certification == SAMPLED


def test_symbolic_off_falls_back_to_primes():
    b = quadric_basis(rational_normal_curve(4), SamplingPolicy(symbolic=False))
    assert b.a2 == 6 and b.certification == MULTI_PRIME


def test_basis_quadrics_vanish_symbolically():
    v = scroll_divisor((1, 2), 2, -2)
    b = quadric_basis(v)
    assert b.a2 == 6
    assert all(vanishes_on(q, v) for q in b.quadrics)


def test_segre_contained_in_divisor_base_locus():
    b = quadric_basis(scroll_divisor((1, 1, 1), 3, 0))
    assert contains_in_baselocus(b, scroll((1, 1, 1)))


def test_secant_line_in_base_locus():
    c = rational_curve_with_4secant(4)
    assert contains_in_baselocus(quadric_basis(c), secant_line(c))


def test_random_line_not_in_twisted_cubic_base_locus():
    line = linear_space([[1, 2, -1, 3], [0, 1, 5, -2]])
    assert not contains_in_baselocus(quadric_basis(rational_normal_curve(3)), line)


def test_union_with_line():
    c = rational_curve_with_4secant(5)
    assert quadric_basis([c, secant_line(c)]).a2 == quadric_basis(c).a2 == comb(6, 2) - 3


def test_exclusion_on_scroll_2a():
    x = scroll_divisor((1, 2), 2, -2)
    rep = exclusion_witnesses(quadric_basis(x), scroll((1, 2)), [x], trials=50)
    assert rep.all_excluded and rep.probes == 100


def test_exclusion_twisted_cubic_ambient():
    v = rational_normal_curve(3)
    rep = exclusion_witnesses(quadric_basis(v), ambient_space(3), [v], trials=50)
    assert rep.all_excluded and not rep.counterexamples


def test_exclusion_on_scroll_2c():
    x = scroll_divisor((1, 2), 1, 2)
    assert x0_subscroll_type((1, 2)) == (1,)
    x0 = linear_space([[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]])
    rep = exclusion_witnesses(quadric_basis(x), scroll((1, 2)), [x, x0], trials=50)
    assert rep.all_excluded


def test_exclusion_reports_counterexample():
    # quadrics of the twisted cubic probed on the cubic itself, with no known components
    v = rational_normal_curve(3)
    rep = exclusion_witnesses(quadric_basis(v), v, [], trials=5, primes=(DEFAULT_PRIME,))
    assert len(rep.counterexamples) == 5
