import json
import random
from fractions import Fraction

import pytest

from quadenv.exactlinalg import DEFAULT_PRIME, GF
from quadenv.geometry import ProjPoint, degree_by_section, span_dimension
from quadenv.multipoly import substitute
from quadenv.quadspace import vanishes_on
from quadenv.varieties import (
    ConstructionError,
    elliptic_normal_curve,
    from_json,
    plane_quartic_embedding,
    point_config_on_rnc,
    projected_elliptic_curve,
    rational_curve_with_4secant,
    rational_normal_curve,
    sample_points,
    scroll,
    scroll_divisor,
    scroll_divisor_samples,
    secant_line,
    to_json,
)

F = GF(DEFAULT_PRIME)


def nondegenerate(v, count=None):
    pts = sample_points(v, F, count or v.nvars + 4, random.Random(0))
    return span_dimension([ProjPoint(tuple(p), F) for p in pts]) == v.ambient_dim


def test_twisted_cubic():
    v = rational_normal_curve(3)
    assert (v.degree, v.codim, v.ambient_dim) == (3, 2, 3)
    assert nondegenerate(v)


def test_rnc_quintic_minimal_degree():
    v = rational_normal_curve(5)
    assert v.degree == v.codim + 1 == 5


def test_scroll_invariants():
    v = scroll((1, 2))
    assert (v.ambient_dim, v.dim, v.degree) == (4, 2, 3)
    seg = scroll((1, 1, 1))
    assert (seg.ambient_dim, seg.degree) == (5, 3)
    assert nondegenerate(seg)


@pytest.mark.parametrize("bad", [(2, 1), (0, 0), ()])
def test_scroll_type_validation(bad):
    with pytest.raises(ConstructionError):
        scroll(bad)


def test_divisor_samples_lie_on_divisor():
    v = scroll_divisor_samples((1, 2), 1, 1, 20, seed=0)
    x = scroll_divisor((1, 2), 1, 1)
    assert x.degree == 4
    assert degree_by_section(x) == 4
    assert len(v.points) == 20


def test_divisor_zero_a_needs_positive_b():
    with pytest.raises(ConstructionError):
        scroll_divisor((1, 2), 0, 0)


def test_elliptic_normal_curve_rejects_singular():
    with pytest.raises(ConstructionError):
        elliptic_normal_curve(3, 0, 0)


def test_elliptic_quintic_is_nondegenerate():
    v = elliptic_normal_curve(3, -1, 0)
    assert v.degree == 5 and v.ambient_dim == 4
    assert nondegenerate(v)


def test_four_secant_curve():
    v = rational_curve_with_4secant(4)
    assert (v.degree, v.ambient_dim) == (7, 5)
    line = secant_line(v)
    assert line.dim == 1
    # the four secant parameters land on the line
    maps = v.param.maps
    lp = [ProjPoint(tuple(m.evaluate([Fraction(1), Fraction(0)]) for m in line.param.maps)),
          ProjPoint(tuple(m.evaluate([Fraction(0), Fraction(1)]) for m in line.param.maps))]
    for t in v.meta["secant_params"]:
        p = ProjPoint(tuple(m.evaluate([Fraction(1), Fraction(t)]) for m in maps))
        assert span_dimension(lp + [p]) == 1
    assert nondegenerate(v)


def test_projected_elliptic_and_genus_three():
    assert projected_elliptic_curve(4).degree == 7
    g3 = plane_quartic_embedding(4)
    assert (g3.degree, g3.ambient_dim, g3.sectional_genus) == (8, 5, 3)
    assert nondegenerate(g3)


def test_point_config_distinct():
    v = point_config_on_rnc(4, 9)
    assert len({tuple(p) for p in v.points}) == 9


@pytest.mark.parametrize(
    "v",
    [
        rational_normal_curve(4),
        scroll((1, 2)),
        scroll_divisor((1, 1, 1), 3, 0),
        elliptic_normal_curve(3),
        plane_quartic_embedding(5),
        point_config_on_rnc(3, 5),
    ],
    ids=lambda v: v.tag,
)
def test_json_round_trip(v):
    w = from_json(json.loads(json.dumps(to_json(v))))
    assert to_json(w) == to_json(v)
