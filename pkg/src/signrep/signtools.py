"""Descartes' rule of signs and generalized Vandermonde matrices, exactly."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .poly import SparsePoly, evaluate, univariate_coefficients


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: Sequence) -> int:
    """Number of sign alternations among the nonzero entries of ``seq``."""
    signs = [sign(c) for c in seq if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def descartes_bound(p: SparsePoly) -> int:
    """Upper bound on the positive real roots of ``p`` counted with multiplicity."""
    if p.is_zero():
        raise ValueError("Descartes' bound is undefined for the zero polynomial")
    return sign_variations(univariate_coefficients(p))


def grid_sign_alternations(p: SparsePoly, points: Sequence[int]) -> int:
    """Count strict sign flips of ``p`` between consecutive ``points``.

    Each flip forces a real root strictly between the two points.
    """
    values = [evaluate(p, (a,)) for a in points]
    for a, v in zip(points, values):
        if v == 0:
            raise ValueError(f"polynomial vanishes at listed point {a}")
    return sum(1 for u, v in zip(values, values[1:]) if sign(u) != sign(v))


def positive_root_witnesses(p: SparsePoly, points: Sequence[int]) -> int:
    """Lower bound on the roots of ``p`` in (points[0], points[-1]] read off its grid values.

    Zeros at points after the first each count once; a flip between two
    adjacent nonzero values counts one root strictly between them.  Values
    at the first point only participate through flips.
    """
    values = [evaluate(p, (a,)) for a in points]
    zeros = sum(1 for v in values[1:] if v == 0)
    flips = sum(1 for u, v in zip(values, values[1:]) if u != 0 and v != 0 and sign(u) != sign(v))
    return zeros + flips


@dataclass(frozen=True)
class GeneralizedVandermonde:
    points: tuple[Fraction, ...]
    exponents: tuple[int, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def k(self) -> int:
        return len(self.points)


def gvd_build(points: Sequence, exponents: Sequence[int]) -> GeneralizedVandermonde:
    """Matrix with entry (i, j) = points[i] ** exponents[j], using 0**0 = 1."""
    pts = tuple(Fraction(a) for a in points)
    exps = tuple(int(d) for d in exponents)
    if len(pts) != len(exps):
        raise ValueError("points and exponents must have equal length")
    if not pts:
        raise ValueError("empty matrix")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError(f"points must be strictly increasing: {points}")
    if exps[0] < 0 or any(b <= a for a, b in zip(exps, exps[1:])):
        raise ValueError(f"exponents must be strictly increasing and non-negative: {exponents}")
    # Python already evaluates Fraction(0) ** 0 as 1
    entries = tuple(tuple(a ** d for d in exps) for a in pts)
    return GeneralizedVandermonde(pts, exps, entries)


def _rows(m) -> list[list[Fraction]]:
    if isinstance(m, GeneralizedVandermonde):
        return [list(r) for r in m.entries]
    return [[Fraction(x) for x in r] for r in m]


def bareiss_det(rows: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    k = len(a)
    if any(len(r) != k for r in a):
        raise ValueError("matrix is not square")
    if k == 0:
        return 1
    sgn = 1
    prev = 1
    for p in range(k - 1):
        if a[p][p] == 0:
            swap = next((r for r in range(p + 1, k) if a[r][p] != 0), None)
            if swap is None:
                return 0
            a[p], a[swap] = a[swap], a[p]
            sgn = -sgn
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) // prev
        prev = a[p][p]
    return sgn * a[k - 1][k - 1]


def det_exact(m) -> Fraction:
    """Exact determinant.

    Rows are cleared of denominators by positive integer scaling and the
    integer matrix goes through Bareiss elimination.
    """
    rows = _rows(m)
    scale = 1
    int_rows = []
    for r in rows:
        s = lcm(*(x.denominator for x in r)) if r else 1
        scale *= s
        int_rows.append([int(x * s) for x in r])
    return Fraction(bareiss_det(int_rows), scale)


def inverse_exact(m) -> list[list[Fraction]]:
    """Gauss-Jordan inverse over the rationals."""
    a = _rows(m)
    k = len(a)
    if any(len(r) != k for r in a):
        raise ValueError("matrix is not square")
    aug = [r + [Fraction(int(i == j)) for j in range(k)] for i, r in enumerate(a)]
    for col in range(k):
        piv = next((r for r in range(col, k) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = 1 / aug[col][col]
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(k):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [r[k:] for r in aug]


def mat_mul(a, b) -> list[list[Fraction]]:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def inverse_sign_pattern(m) -> list[list[int]]:
    """Entrywise signs (-1, 0, +1) of the exact inverse."""
    return [[sign(x) for x in row] for row in inverse_exact(m)]


def expected_inverse_pattern(k: int, zero_first: bool) -> list[list[int]]:
    """Checkerboard (-1)^(i+j); with a leading zero point row 0 is (+, 0, ..., 0)."""
    pattern = [[(-1) ** (i + j) for j in range(k)] for i in range(k)]
    if zero_first:
        pattern[0] = [1] + [0] * (k - 1)
    return pattern


def random_gvd(rng, k: int, zero_first: bool = False, max_exponent: int = 30) -> GeneralizedVandermonde:
    """Random instance with positive rational points (or a leading 0 with exponent 0)."""
    pts: set[Fraction] = set()
    while len(pts) < (k - 1 if zero_first else k):
        pts.add(Fraction(rng.randint(1, 40), rng.randint(1, 6)))
    if zero_first:
        exps = [0] + sorted(rng.sample(range(1, max_exponent + 1), k - 1))
        return gvd_build([Fraction(0)] + sorted(pts), exps)
    return gvd_build(sorted(pts), sorted(rng.sample(range(max_exponent + 1), k)))
