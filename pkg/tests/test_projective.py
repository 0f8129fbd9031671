from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ymesh.rational import ExtQ, INF, DegenerateError
from ymesh.projective import (Point, Flat, span, join, meet, meet_point,
                              rank_of, collinear, cross_ratio, multi_ratio,
                              line_chart, point_on_line)

coords = st.fractions(min_value=-12, max_value=12, max_denominator=6)


def pt(*xs):
    return Point.affine(*xs)


def test_point_normalization_and_equality():
    assert Point(2, 4, 6) == Point(1, 2, 3)
    assert Point(0, 3, 6) == Point(0, 1, 2)
    with pytest.raises(ValueError):
        Point(0, 0, 0)


def test_join_meet_oracle():
    # y = 1 meets y = 2x at (1/2, 1)
    l1 = join(pt(0, 1), pt(1, 1))
    l2 = join(pt(0, 0), pt(1, 2))
    assert meet_point(l1, l2) == pt(Fraction(1, 2), 1)


def test_meet_of_parallel_lines_is_at_infinity():
    l1 = join(pt(0, 0), pt(1, 1))
    l2 = join(pt(0, 1), pt(1, 2))
    p = meet_point(l1, l2)
    assert p.v[-1] == 0  # ideal point


def test_cross_ratio_oracles():
    a, b, c = pt(0), pt(1), pt(2)
    inf = Point(1, 0)
    assert cross_ratio(a, b, c, inf) == ExtQ(-1)
    assert cross_ratio(pt(1), pt(2), pt(3), pt(4)) == ExtQ(-1, 3)


def test_multi_ratio_oracles():
    pts = [pt(k) for k in range(6)]
    assert multi_ratio(pts) == ExtQ(-1, 5)
    assert multi_ratio(pts[:4]) == cross_ratio(*pts[:4])


def test_multi_ratio_degeneracies():
    assert multi_ratio([pt(0), pt(0), pt(1), pt(2)]) == ExtQ(0)
    with pytest.raises(DegenerateError):
        multi_ratio([pt(0), pt(0), pt(0), pt(2)])  # 0/0 chart factor


def test_rank_and_collinear():
    assert rank_of([pt(0, 0), pt(1, 1), pt(2, 2)]) == 2
    assert collinear([pt(0, 0), pt(1, 1), pt(2, 2)])
    assert not collinear([pt(0, 0), pt(1, 1), pt(1, 0)])


def test_flat_equality_is_representation_independent():
    f1 = span([pt(0, 0, 0), pt(1, 0, 0), pt(0, 1, 0)])
    f2 = span([pt(2, 3, 0), pt(-1, 5, 0), pt(7, 0, 0)])
    assert f1 == f2


@given(st.lists(coords, min_size=4, max_size=4, unique=True))
def test_cross_ratio_projective_invariance(xs):
    # a fractional-linear substitution x -> (2x+3)/(x+5) preserves cross ratios
    pts = [pt(x) for x in xs]

    def moebius(x):
        den = x + 5
        if den == 0:
            return Point(1, 0)
        return pt((2 * x + 3) / den)

    imgs = [moebius(x) for x in xs]
    if len(set(imgs)) < 4:
        return
    assert cross_ratio(*pts) == cross_ratio(*imgs)


def test_menelaus_on_complete_quadrilateral():
    # four generic lines; the six pairwise intersections have multi-ratio -1
    lines = [join(pt(0, 0), pt(1, 2)), join(pt(3, 0), pt(0, 3)),
             join(pt(-1, 1), pt(4, 2)), join(pt(0, 5), pt(5, 1))]
    la, lb, lc, ld = lines
    def x(u, v):
        return meet_point(u, v)
    six = [x(la, ld), x(la, lc), x(la, lb), x(lb, lc), x(lb, ld), x(lc, ld)]
    assert multi_ratio(six) == ExtQ(-1)
