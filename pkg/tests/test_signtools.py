import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from signrep.poly import SparsePoly, parse_poly
from signrep.signtools import (
    bareiss_det,
    descartes_bound,
    det_exact,
    expected_inverse_pattern,
    grid_sign_alternations,
    gvd_build,
    inverse_exact,
    inverse_sign_pattern,
    mat_mul,
    positive_root_witnesses,
    random_gvd,
    sign_variations,
)


def test_sign_variations_skip_zeros():
    assert sign_variations([1, 0, -2, 0, 0, 3]) == 2
    assert sign_variations([]) == 0


def test_descartes_examples():
    # (x-1)(x-2)(x+3) = x^3 - 7x + 6
    assert descartes_bound(parse_poly("x1^3 - 7*x1 + 6", 1)) == 2
    with pytest.raises(ValueError):
        descartes_bound(SparsePoly.zero(1))


def test_grid_alternations():
    p = parse_poly("2*x1^2 - 3*x1", 1)  # values -1, 2 at 1, 2
    assert grid_sign_alternations(p, [1, 2]) == 1
    with pytest.raises(ValueError):
        grid_sign_alternations(p, [0, 1])
    assert positive_root_witnesses(p, [0, 1, 2]) == 1


@given(st.lists(st.integers(1, 12), min_size=1, max_size=5, unique=True), st.integers(-3, 3))
@settings(max_examples=60)
def test_descartes_bounds_positive_roots(roots, lead):
    # product of (x - r) for positive roots: the bound covers every root
    if lead == 0:
        lead = 1
    x = SparsePoly.var(1, 0)
    p = SparsePoly.const(1, lead)
    for r in roots:
        p = p * (x - r)
    bound = descartes_bound(p)
    assert len(roots) <= bound <= len(p) - 1
    assert (bound - len(roots)) % 2 == 0


def _leibniz(m):
    k = len(m)
    total = 0
    for perm in itertools.permutations(range(k)):
        inversions = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        term = (-1) ** inversions
        for i, j in enumerate(perm):
            term *= m[i][j]
        total += term
    return total


def test_bareiss_against_cofactor():
    m = [[2, -1, 0], [1, 3, 4], [0, 5, -2]]
    assert bareiss_det(m) == -54
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0


@given(st.integers(1, 5).flatmap(lambda k: st.lists(
    st.lists(st.integers(-6, 6), min_size=k, max_size=k), min_size=k, max_size=k)))
def test_bareiss_matches_leibniz(m):
    assert bareiss_det(m) == _leibniz(m)


def test_gvd_validation():
    with pytest.raises(ValueError):
        gvd_build([2, 1], [0, 1])
    with pytest.raises(ValueError):
        gvd_build([1, 2], [1, 1])
    v = gvd_build([0, 1, 2], [0, 1, 2])
    assert det_exact(v) == 2


def test_gvd_known_inverse():
    v = gvd_build([0, 1, 2], [0, 2, 5])
    assert det_exact(v) == 28
    assert inverse_sign_pattern(v) == expected_inverse_pattern(3, True)


@given(st.integers(0, 2**32), st.integers(1, 6))
@settings(max_examples=80)
def test_gvd_positive_det_and_inverse(seed, k):
    rng = random.Random(seed)
    v = random_gvd(rng, k)
    assert det_exact(v) > 0
    inv = inverse_exact(v)
    eye = [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]
    assert mat_mul(v.entries, inv) == eye
    assert inverse_sign_pattern(v) == expected_inverse_pattern(k, False)


@given(st.integers(0, 2**32), st.integers(1, 6))
@settings(max_examples=80)
def test_gvd_zero_point_pattern(seed, k):
    v = random_gvd(random.Random(seed), k, zero_first=True)
    assert det_exact(v) > 0
    assert inverse_sign_pattern(v) == expected_inverse_pattern(k, True)
