"""Exact LP feasibility for systems ``G c >= b`` with integer data.

Feasibility of ``G c >= b`` (c free) is decided through its Farkas
alternative: the system is infeasible exactly when some ``y >= 0`` has
``y^T G = 0`` and ``y^T b > 0``.  Both directions are solved with a phase-1
simplex whose tableau stays in the integers: each row is kept as a positive
multiple of the true row, pivots are cross-multiplications, and rows are
divided by their gcd after every pivot.  Entering and leaving variables
follow Bland's rule, so the method terminates on degenerate problems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence


@dataclass
class SimplexStats:
    lps: int = 0
    pivots: int = 0

    def add(self, other: SimplexStats) -> None:
        self.lps += other.lps
        self.pivots += other.pivots


def phase_one(a: Sequence[Sequence[int]], rhs: Sequence[int], stats: SimplexStats | None = None) -> list[Fraction] | None:
    """Find ``y >= 0`` with ``a y = rhs``, or return None if there is none.

    ``a`` is a dense integer matrix (rows x cols).  The returned point is a
    basic feasible solution with exact rational entries.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    width = cols + rows + 1
    tab: list[list[int]] = []
    for i, (row, r) in enumerate(zip(a, rhs)):
        s = -1 if r < 0 else 1
        line = [s * x for x in row] + [0] * rows + [s * r]
        line[cols + i] = 1
        tab.append(line)
    basis = [cols + i for i in range(rows)]
    # reduced costs of the phase-1 objective (sum of artificials)
    z = [0] * width
    for line in tab:
        for j in range(cols):
            z[j] -= line[j]
        z[-1] -= line[-1]
    if stats is not None:
        stats.lps += 1
    while True:
        enter = next((j for j in range(cols + rows) if z[j] < 0), None)
        if enter is None:
            break
        leave = None
        for i, line in enumerate(tab):
            p = line[enter]
            if p <= 0:
                continue
            if leave is None:
                leave = i
                continue
            q = tab[leave]
            lhs, rhs_ = line[-1] * q[enter], q[-1] * p
            if lhs < rhs_ or (lhs == rhs_ and basis[i] < basis[leave]):
                leave = i
        if leave is None:
            # cannot happen in phase 1: the objective is bounded below by 0
            raise ArithmeticError("phase-1 objective unbounded")
        _pivot(tab, z, leave, enter)
        basis[leave] = enter
        if stats is not None:
            stats.pivots += 1
    if z[-1] != 0:
        return None
    y = [Fraction(0)] * cols
    for i, j in enumerate(basis):
        if j < cols:
            y[j] = Fraction(tab[i][-1], tab[i][j])
    return y


def _pivot(tab: list[list[int]], z: list[int], r: int, c: int) -> None:
    prow = tab[r]
    p = prow[c]
    for k, line in enumerate(tab):
        if k == r or line[c] == 0:
            continue
        f = line[c]
        new = [p * x - f * y for x, y in zip(line, prow)]
        g = gcd(*new)
        tab[k] = [x // g for x in new] if g > 1 else new
    f = z[c]
    if f:
        new = [p * x - f * y for x, y in zip(z, prow)]
        g = gcd(*new)
        z[:] = [x // g for x in new] if g > 1 else new
    g = gcd(*prow)
    if g > 1:
        tab[r] = [x // g for x in prow]


def farkas_ray(g: Sequence[Sequence[int]], b: Sequence[int], stats: SimplexStats | None = None) -> list[Fraction] | None:
    """Search ``y >= 0`` with ``y^T g = 0`` and ``y^T b = 1``.

    ``g`` has one row per constraint.  A returned ray proves ``g c >= b``
    infeasible; None means the system is feasible.
    """
    if not g:
        return None
    k = len(g[0])
    a = [[row[j] for row in g] for j in range(k)]
    a.append(list(b))
    return phase_one(a, [0] * k + [1], stats)


def primal_solution(g: Sequence[Sequence[int]], b: Sequence[int], stats: SimplexStats | None = None) -> list[Fraction] | None:
    """Find free ``c`` with ``g c >= b`` via c = p - q and surplus variables."""
    if not g:
        return []
    k = len(g[0])
    n = len(g)
    a = []
    for i, row in enumerate(g):
        surplus = [0] * n
        surplus[i] = -1
        a.append(list(row) + [-x for x in row] + surplus)
    sol = phase_one(a, list(b), stats)
    if sol is None:
        return None
    return [sol[j] - sol[k + j] for j in range(k)]


def check_ray(g: Sequence[Sequence[int]], b: Sequence[int], y: Sequence[Fraction]) -> bool:
    """Exact audit of a Farkas ray: y >= 0, y^T g = 0, y^T b > 0."""
    if len(y) != len(g):
        return False
    if any(v < 0 for v in y):
        return False
    k = len(g[0]) if g else 0
    for j in range(k):
        if sum(v * row[j] for v, row in zip(y, g)) != 0:
            return False
    return sum(v * bi for v, bi in zip(y, b)) > 0


def check_solution(g: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[Fraction]) -> bool:
    return all(sum(x * y for x, y in zip(row, c)) >= bi for row, bi in zip(g, b))
