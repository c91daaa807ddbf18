import json
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from signrep.poly import Grid, SparsePoly, grid_reduce, measures, parse_poly, substitute
from signrep.representations import (
    CapExceeded,
    Kind,
    TargetFunction,
    construct_geometric_parity,
    construct_hypercube_parity,
    construct_mary_parity,
    construct_weak_low_sparsity,
    construct_weak_product,
    load_table,
    product_values,
    verify,
)


def parity(n, lo, hi):
    return TargetFunction.parity(Grid.range(n, lo, hi))


def test_hypercube_matches_product_oracle():
    for n in range(1, 5):
        oracle = SparsePoly.const(n, 1)
        for i in range(n):
            oracle = oracle * (1 - 2 * SparsePoly.var(n, i))
        assert construct_hypercube_parity(n) == oracle


def test_hypercube_coefficient_signs():
    p = construct_hypercube_parity(3)
    assert all((c > 0) == (sum(e) % 2 == 0) for e, c in p.items())


def test_verify_kinds():
    f = parity(1, 0, 1)
    assert verify(parse_poly("1 - 2*x1", 1), f, Kind.EXACT).passed is False
    assert verify(parse_poly("1 - 2*x1", 1), f, Kind.SIGN).passed
    assert verify(parse_poly("-x1", 1), f, Kind.WEAK).passed
    assert not verify(parse_poly("-x1", 1), f, Kind.SIGN).passed
    assert verify(parse_poly("x1", 1), f, Kind.EXACT).passed
    # identically zero on the grid is not a weak representation
    r = verify(parse_poly("x1^2 - x1", 1), f, Kind.WEAK)
    assert not r.passed and r.zero_count == 2


def test_verify_cap():
    with pytest.raises(CapExceeded):
        verify(construct_hypercube_parity(4), parity(4, 0, 1), Kind.SIGN, cap=10)


def test_inner_product_layout():
    f = TargetFunction.inner_product(2)
    assert f((1, 0, 1, 0)) == 1
    assert f((1, 1, 1, 1)) == 0
    assert f((1, 0, 0, 1)) == 0


def test_table_target(tmp_path):
    grid = Grid(1, (0, 1))
    path = tmp_path / "t.json"
    path.write_text(json.dumps([[[0], 1], [[1], 0]]))
    f = load_table(path, grid)
    assert verify(parse_poly("2*x1 - 1", 1), f, Kind.SIGN).passed
    with pytest.raises(ValueError):
        TargetFunction("table", grid, {(0,): 1})


def test_weak_low_sparsity_examples():
    assert str(construct_weak_low_sparsity(1, 3)) == str(parse_poly("2*x1^2 - 3*x1", 1))
    assert construct_weak_low_sparsity(1, 2) == parse_poly("-x1", 1)


def test_weak_product_small():
    # on {0,1}^2 the product values are {0, 1}; the representation is the monomial x1*x2 only
    grid = Grid(2, (0, 1))
    p = construct_weak_product(grid)
    assert sorted(product_values(grid)) == [0, 1]
    assert len(p) == 1 and verify(p, TargetFunction.parity(grid), Kind.WEAK).passed


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 4) for m in range(2, 5)])
def test_constructors_verify(n, m):
    grid = Grid.range(n, 0, m - 1)
    p = construct_mary_parity(n, m)
    assert verify(p, TargetFunction.parity(grid), Kind.SIGN).passed
    assert len(p) == m ** n
    w = construct_weak_low_sparsity(n, m)
    assert verify(w, TargetFunction.parity(grid), Kind.WEAK).passed
    assert len(w) == (m - 1) ** n
    for g in (grid, Grid.range(n, 1, m)):
        q = construct_weak_product(g)
        assert verify(q, TargetFunction.parity(g), Kind.WEAK).passed
        assert len(product_values(g)) <= comb(n + m - 1, n)


def test_geometric_measures():
    for n in range(1, 5):
        p = construct_geometric_parity(n)
        m = measures(p)
        assert m.spr == n + 1 and m.deg == n * n
        assert verify(p, parity(n, 1, 2), Kind.SIGN).passed


def test_mary_custom_alphas():
    p = construct_mary_parity(1, 3, [Fraction(1, 3), Fraction(5, 3)])
    assert verify(p, parity(1, 0, 2), Kind.SIGN).passed
    with pytest.raises(ValueError):
        construct_mary_parity(1, 3, [Fraction(3, 2), Fraction(1, 2)])


# properties

@given(st.integers(1, 3), st.integers(2, 4), st.fractions(min_value=Fraction(1, 10), max_value=10))
@settings(max_examples=30, deadline=None)
def test_complement_and_scale(n, m, scale):
    grid = Grid.range(n, 0, m - 1)
    f = TargetFunction.parity(grid)
    p = construct_mary_parity(n, m)
    assert verify(p * scale, f, Kind.SIGN).passed
    assert verify(-p, f.complement(), Kind.SIGN).passed
    assert not verify(-p, f, Kind.SIGN).passed


@given(st.integers(2, 3), st.integers(2, 5), st.data())
@settings(max_examples=30, deadline=None)
def test_self_reducibility(n, m, data):
    # fixing the last variable to a turns parity into parity (a even) or its complement
    grid = Grid.range(n, 0, m - 1)
    p = construct_mary_parity(n, m)
    a = data.draw(st.integers(0, m - 1))
    q = substitute(p, n - 1, a)
    sub = TargetFunction.parity(Grid.range(n - 1, 0, m - 1))
    target = sub if a % 2 == 0 else sub.complement()
    assert verify(q, target, Kind.SIGN).passed
    assert verify(grid_reduce(q, sub.grid), target, Kind.SIGN).passed


@given(st.integers(1, 3), st.integers(2, 4), st.lists(st.fractions(min_value=Fraction(1, 5), max_value=5),
                                                        min_size=2, max_size=2))
@settings(max_examples=30, deadline=None)
def test_conic_combination_preserves(n, m, weights):
    grid = Grid.range(n, 0, m - 1)
    f = TargetFunction.parity(grid)
    p = construct_mary_parity(n, m)
    q = grid_reduce(construct_hypercube_parity(n), grid) if m == 2 else p * p * p
    combo = p * weights[0] + q * weights[1]
    assert verify(combo, f, Kind.SIGN).passed


def test_substitution_of_hypercube_parity():
    # x3 = 1 flips the sign of the remaining product
    p = construct_hypercube_parity(3)
    assert substitute(p, 2, 0) == construct_hypercube_parity(2)
    assert substitute(p, 2, 1) == -construct_hypercube_parity(2)


@pytest.mark.parametrize("m", range(2, 7))
def test_univariate_sign_rep_alternates_m_minus_1_times(m):
    from signrep.signtools import descartes_bound, grid_sign_alternations

    p = construct_mary_parity(1, m)
    assert grid_sign_alternations(p, list(range(m))) == m - 1
    assert descartes_bound(p) == m - 1
