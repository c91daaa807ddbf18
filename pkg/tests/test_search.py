from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from signrep.lp import check_ray
from signrep.poly import Grid
from signrep.representations import CapExceeded, Kind, TargetFunction, verify
from signrep.search import (
    FeasibilityProblem,
    SearchConfig,
    audit,
    coefficient_sign_census,
    feasible_sign_rep,
    feasible_weak_rep,
    min_degree,
    min_sparsity,
    monomial_pool,
)


def parity(n, lo, hi):
    return TargetFunction.parity(Grid.range(n, lo, hi))


def test_monomial_pool_order():
    assert monomial_pool(2, 1) == [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert monomial_pool(2, 2, total_degree=1) == [(0, 0), (1, 0), (0, 1)]


def test_feasibility_examples():
    f = parity(1, 0, 1)
    assert not feasible_sign_rep(FeasibilityProblem([(0,)], f)).feasible
    cert = feasible_sign_rep(FeasibilityProblem([(0,), (1,)], f))
    assert cert.feasible
    assert verify(cert.polynomial(1), f, Kind.SIGN).passed
    weak = feasible_weak_rep(FeasibilityProblem([(1,)], f, Kind.WEAK))
    assert weak.feasible and verify(weak.polynomial(1), f, Kind.WEAK).passed


def test_tampered_certificate_fails_audit():
    problem = FeasibilityProblem([(0,)], parity(1, 0, 1))
    cert = feasible_sign_rep(problem)
    cert.dual_ray = tuple(-y for y in cert.dual_ray)
    assert not audit(problem, cert)


def test_problem_validation():
    f = parity(1, 0, 1)
    with pytest.raises(ValueError):
        FeasibilityProblem([(0,), (0,)], f)
    with pytest.raises(ValueError):
        FeasibilityProblem([(0,)], f, Kind.SIGN, witness_point=(0,))
    with pytest.raises(ValueError):
        FeasibilityProblem([(0, 0)], f)


def test_brute_force_oracle_hypercube_n2():
    # independent oracle: test every support with the single-LP routine
    f = parity(2, 0, 1)
    pool = monomial_pool(2, 1)
    best = min(k for k in range(len(pool) + 1)
               for s in combinations(pool, k) if feasible_sign_rep(FeasibilityProblem(s, f)).feasible)
    assert best == min_sparsity(f, Kind.SIGN, SearchConfig(degree_cap=1)).k == 4


def test_brute_force_oracle_weak_n2():
    f = parity(2, 0, 2)
    pool = monomial_pool(2, 2)
    best = next(k for k in range(len(pool) + 1)
                if any(feasible_weak_rep(FeasibilityProblem(s, f, Kind.WEAK)).feasible
                       for s in combinations(pool, k)))
    assert best == min_sparsity(f, Kind.WEAK, SearchConfig(degree_cap=2)).k == 4


def test_certificates_are_sound():
    for target, kind, cap in [(parity(2, 0, 1), Kind.SIGN, 1), (parity(1, 0, 2), Kind.WEAK, 2),
                              (parity(2, 1, 2), Kind.SIGN, 2)]:
        res = min_sparsity(target, kind, SearchConfig(degree_cap=cap, collect_certificates=True))
        points = list(target.grid)
        assert res.certificates
        for cert in res.certificates:
            witness = cert["witness_point"]
            problem = FeasibilityProblem(cert["support"], target, kind, witness_point=witness)
            y = [Fraction(cert["ray"].get(a, 0)) for a in points]
            assert check_ray(problem.matrix(), problem.rhs(witness), y)


def test_caps():
    with pytest.raises(CapExceeded):
        min_sparsity(parity(3, 0, 1), Kind.SIGN, SearchConfig(degree_cap=1, subset_cap=10))
    with pytest.raises(CapExceeded):
        min_sparsity(parity(3, 0, 2), Kind.SIGN, SearchConfig(degree_cap=2, pool_cap=8))
    res = min_sparsity(parity(2, 0, 1), Kind.SIGN, SearchConfig(degree_cap=1, max_support=3))
    assert res.k is None


def test_min_degree_small():
    res = min_degree(parity(2, 0, 1), Kind.SIGN, SearchConfig(degree_cap=1))
    assert res.d == 2 and verify(res.witness, parity(2, 0, 1), Kind.SIGN).passed
    assert set(res.infeasible_rays) == {0, 1}


def test_census_n2():
    entries = coefficient_sign_census(2)
    assert [e.subset for e in entries] == [(), (1,), (2,), (1, 2)]
    assert all(not e.wrong_sign.feasible and e.right_sign.feasible for e in entries)


def test_symmetry_gives_same_answer():
    for target, kind, cap in [(parity(3, 0, 1), Kind.SIGN, 1), (parity(2, 0, 2), Kind.WEAK, 2),
                              (parity(2, 1, 3), Kind.SIGN, 2)]:
        plain = min_sparsity(target, kind, SearchConfig(degree_cap=cap))
        sym = min_sparsity(target, kind, SearchConfig(degree_cap=cap, symmetry=True))
        assert plain.k == sym.k
        assert sym.stats.symmetric_skips > 0


def test_parallel_is_deterministic():
    target = parity(2, 1, 2)
    config = SearchConfig(degree_cap=2)
    serial = min_sparsity(target, Kind.SIGN, config)
    par = min_sparsity(target, Kind.SIGN, SearchConfig(degree_cap=2, parallel=2))
    assert serial.to_dict() == par.to_dict()


@given(st.integers(1, 2), st.sampled_from([(0, 1), (1, 2), (0, 1, 2), (1, 3)]))
@settings(max_examples=12, deadline=None)
def test_monotone_in_degree_cap(n, pts):
    # a larger per-variable cap can only lower the minimum
    target = TargetFunction.parity(Grid(n, pts))
    ks = [min_sparsity(target, Kind.SIGN, SearchConfig(degree_cap=d)).k for d in (len(pts) - 1, len(pts))]
    assert ks[1] is not None and (ks[0] is None or ks[1] <= ks[0])


@given(st.integers(1, 2), st.sampled_from([(0, 1), (1, 2), (0, 1, 2)]))
@settings(max_examples=10, deadline=None)
def test_weak_never_exceeds_sign(n, pts):
    target = TargetFunction.parity(Grid(n, pts))
    config = SearchConfig(degree_cap=len(pts) - 1)
    assert min_sparsity(target, Kind.WEAK, config).k <= min_sparsity(target, Kind.SIGN, config).k
