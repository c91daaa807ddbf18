from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from signrep.poly import (
    Grid,
    SparsePoly,
    conic_combine,
    decompose_by_var,
    drop_var,
    evaluate,
    format_poly,
    grid_reduce,
    measures,
    multilinear_reduce,
    parse_poly,
    poly_from_records,
    poly_to_records,
    substitute,
    univariate_coefficients,
    vanishing_poly,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def polys(draw, n=2, max_exp=4, max_terms=5):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_exp)] * n), rationals, max_size=max_terms))
    return SparsePoly(n, terms)


points2 = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


def test_small_arithmetic():
    x, y = SparsePoly.var(2, 0), SparsePoly.var(2, 1)
    p = (1 - 2 * x) * (1 - 2 * y)
    assert format_poly(p) == "1 - 2*x1 - 2*x2 + 4*x1*x2"
    assert p(1, 1) == 1 and p(1, 0) == -1
    assert format_poly(SparsePoly.zero(3)) == "0"
    assert (x - x).is_zero()


def test_measures():
    p = parse_poly("3*x1^2*x2 - x2^4 + 5", 2)
    m = measures(p)
    assert (m.spr, m.deg, m.deg_i, m.spr_i) == (3, 4, (2, 4), (2, 3))
    assert measures(SparsePoly.zero(2)).deg == -1


def test_vanishing_poly():
    assert univariate_coefficients(vanishing_poly([0, 1, 2])) == [0, 2, -3, 1]
    with pytest.raises(ValueError):
        vanishing_poly([1, 1])


def test_grid_reduce_examples():
    x = SparsePoly.var(1, 0)
    assert grid_reduce(x ** 2, Grid(1, (0, 1))) == x
    # x^3 = 3x^2 - 2x modulo x(x-1)(x-2)
    assert grid_reduce(x ** 3, Grid.range(1, 0, 2)) == 3 * x ** 2 - 2 * x
    assert multilinear_reduce(parse_poly("x1^3*x2^2 + x1", 2)) == parse_poly("x1*x2 + x1", 2)


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid(1, (2, 1))
    with pytest.raises(ValueError):
        Grid(1, (-1, 0))
    with pytest.raises(ValueError):
        Grid(0, (0, 1))
    assert Grid.range(2, 0, 2).size == 9


def test_conic_combine_rejects_nonpositive():
    p = SparsePoly.const(1, 1)
    with pytest.raises(ValueError):
        conic_combine([0], [p])
    assert conic_combine([2, Fraction(1, 2)], [p, p]) == SparsePoly.const(1, Fraction(5, 2))


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_poly("2*y1")
    with pytest.raises(ValueError):
        parse_poly("x3", 2)


def test_records_format():
    p = parse_poly("1/2*x1^2 - 3*x2", 2)
    recs = poly_to_records(p)
    assert {"exponents": [2, 0], "coeff": "1/2"} in recs
    assert poly_from_records(recs, 2) == p


# properties

@given(polys(), polys(), polys(), points2)
def test_ring_homomorphism(p, q, r, a):
    assert evaluate(p + q, a) == evaluate(p, a) + evaluate(q, a)
    assert evaluate(p * q, a) == evaluate(p, a) * evaluate(q, a)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(polys(max_exp=7), st.sampled_from([(0, 1), (0, 1, 2), (1, 2, 3), (0, 2, 5)]))
def test_grid_reduce_preserves_values(p, pts):
    grid = Grid(2, pts)
    r = grid_reduce(p, grid)
    assert all(evaluate(r, a) == evaluate(p, a) for a in grid)
    assert all(d <= grid.m - 1 for d in measures(r).deg_i) or r.is_zero()
    assert grid_reduce(r, grid) == r


@given(polys(max_exp=6), st.sampled_from([(0, 1, 2), (1, 3)]))
def test_grid_reduce_order_independent(p, pts):
    # reducing with variables swapped gives the swapped result
    swap = SparsePoly(2, (((e[1], e[0]), c) for e, c in p.items()))
    grid = Grid(2, pts)
    back = grid_reduce(swap, grid)
    assert SparsePoly(2, (((e[1], e[0]), c) for e, c in back.items())) == grid_reduce(p, grid)


@given(polys(), st.integers(0, 1), points2)
def test_decompose_reassembles(p, i, a):
    parts = decompose_by_var(p, i)
    xi = SparsePoly.var(2, i)
    total = SparsePoly.zero(2)
    for d, q in parts.items():
        assert all(e[i] == 0 for e in q.support())
        total = total + xi ** d * q
    assert total == p


@given(polys(), st.integers(-3, 3), st.integers(-3, 3))
def test_substitute_matches_evaluation(p, u, v):
    q = substitute(p, 0, u)
    assert evaluate(q, (v,)) == evaluate(p, (u, v))


@given(polys(n=3, max_exp=3))
@settings(max_examples=50)
def test_text_round_trip(p):
    assert parse_poly(format_poly(p), 3) == p
    assert poly_from_records(poly_to_records(p), 3) == p


def test_drop_var():
    p = parse_poly("x1 + 2*x3", 3)
    assert format_poly(drop_var(p, 1)) == "x1 + 2*x2"
    with pytest.raises(ValueError):
        drop_var(p, 0)
