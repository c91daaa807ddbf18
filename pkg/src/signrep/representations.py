"""Target functions, representation checks and the explicit constructions."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from pathlib import Path
from typing import Mapping, Sequence

from .poly import Grid, SparsePoly, evaluate
from .signtools import sign

DEFAULT_GRID_CAP = 10**6


class Kind(str, enum.Enum):
    EXACT = "exact"
    SIGN = "sign"
    WEAK = "weak"


class CapExceeded(RuntimeError):
    """A configured size cap would be exceeded; nothing was computed."""


@dataclass(frozen=True)
class TargetFunction:
    """A Boolean function on a grid: parity, inner product or a lookup table.

    Inner product uses the variable layout (x_1..x_k, y_1..y_k) on {0,1}^{2k}.
    """

    kind: str
    grid: Grid
    table: Mapping[tuple[int, ...], int] | None = field(default=None, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in ("parity", "ip", "table"):
            raise ValueError(f"unknown target kind {self.kind!r}")
        if self.kind == "ip":
            if self.grid.n % 2 or self.grid.points != (0, 1):
                raise ValueError("inner product needs an even dimension over {0,1}")
        if self.kind == "table":
            if self.table is None:
                raise ValueError("table target needs a table")
            table = {tuple(k): int(v) for k, v in self.table.items()}
            if set(table) != set(self.grid) or len(table) != self.grid.size:
                raise ValueError("truth table must cover every grid point exactly once")
            if any(v not in (0, 1) for v in table.values()):
                raise ValueError("truth table values must be 0 or 1")
            object.__setattr__(self, "table", table)

    @classmethod
    def parity(cls, grid: Grid) -> TargetFunction:
        return cls("parity", grid)

    @classmethod
    def inner_product(cls, pairs: int) -> TargetFunction:
        return cls("ip", Grid(2 * pairs, (0, 1)))

    def __call__(self, point: Sequence[int]) -> int:
        return target_eval(self, point)

    def complement(self) -> TargetFunction:
        return TargetFunction("table", self.grid, {a: 1 - self(a) for a in self.grid})

    def describe(self) -> str:
        return f"{self.kind} on {self.grid.describe()}"


def target_eval(f: TargetFunction, point: Sequence[int]) -> int:
    point = tuple(point)
    if point not in f.grid:
        raise ValueError(f"point {point} is not on the grid {f.grid.describe()}")
    if f.kind == "parity":
        return sum(point) % 2
    if f.kind == "ip":
        k = f.grid.n // 2
        return sum(point[i] * point[k + i] for i in range(k)) % 2
    return f.table[point]


def load_table(path: str | Path, grid: Grid) -> TargetFunction:
    """Read a truth table file: a JSON list of ``[point, value]`` pairs."""
    data = json.loads(Path(path).read_text())
    return TargetFunction("table", grid, {tuple(pt): v for pt, v in data})


@dataclass(frozen=True)
class VerificationReport:
    kind: Kind
    passed: bool
    zero_count: int
    counterexample: tuple[tuple[int, ...], Fraction] | None = None
    reason: str = ""

    def to_dict(self) -> dict:
        out = {"kind": self.kind.value, "pass": self.passed, "zero_count": self.zero_count}
        if self.counterexample is not None:
            pt, val = self.counterexample
            out["counterexample"] = {"point": list(pt), "value": _fmt(val)}
        if self.reason:
            out["reason"] = self.reason
        return out


def _fmt(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def verify(p: SparsePoly, f: TargetFunction, kind: Kind | str, cap: int = DEFAULT_GRID_CAP) -> VerificationReport:
    """Check ``p`` against ``f`` at every grid point.

    exact: P(a) = f(a).  sign: sign P(a) = (-1)^f(a) with no zeros.
    weak: sign P(a) in {0, (-1)^f(a)} and P not identically zero on the grid.
    """
    kind = Kind(kind)
    if p.n != f.grid.n:
        raise ValueError(f"polynomial has {p.n} variables but the grid has {f.grid.n}")
    if f.grid.size > cap:
        raise CapExceeded(f"grid has {f.grid.size} points, cap is {cap}")
    zeros = 0
    first_bad = None
    reason = ""
    for a in f.grid:
        v = evaluate(p, a)
        want = f(a)
        if v == 0:
            zeros += 1
        if first_bad is not None:
            continue
        if kind is Kind.EXACT:
            if v != want:
                first_bad, reason = (a, v), f"value differs from f = {want}"
        elif kind is Kind.SIGN:
            if sign(v) != (-1) ** want:
                first_bad, reason = (a, v), f"sign must be {'+' if want == 0 else '-'} (f = {want})"
        elif sign(v) == -((-1) ** want):
            first_bad, reason = (a, v), f"sign contradicts f = {want}"
    if first_bad is None and kind is Kind.WEAK and zeros == f.grid.size:
        return VerificationReport(kind, False, zeros, None, "vanishes on the whole grid")
    return VerificationReport(kind, first_bad is None, zeros, first_bad, reason)


# constructions


def construct_hypercube_parity(n: int) -> SparsePoly:
    """prod_i (1 - 2 x_i): sign represents parity on {0,1}^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = SparsePoly.const(n, 1)
    for i in range(n):
        p = p * (1 - 2 * SparsePoly.var(n, i))
    return p


def _check_alphas(alphas, intervals) -> tuple[Fraction, ...]:
    alphas = tuple(Fraction(a) for a in alphas)
    if len(alphas) != len(intervals):
        raise ValueError(f"expected {len(intervals)} alphas, got {len(alphas)}")
    for a, (lo, hi) in zip(alphas, intervals):
        if not lo < a < hi:
            raise ValueError(f"alpha {a} is not inside ({lo}, {hi})")
    return alphas


def _univariate_product(roots: Sequence[Fraction], scale: Fraction = Fraction(1)) -> list[Fraction]:
    coeffs = [Fraction(scale)]
    for r in roots:
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for d, c in enumerate(coeffs):
            nxt[d + 1] += c
            nxt[d] -= r * c
        coeffs = nxt
    return coeffs


def _tensor(n: int, factor: Sequence[Fraction]) -> SparsePoly:
    # prod_i q(x_i) for a univariate coefficient list q
    p = SparsePoly.const(n, 1)
    for i in range(n):
        q = SparsePoly(n, {tuple(d if j == i else 0 for j in range(n)): c for d, c in enumerate(factor)})
        p = p * q
    return p


def construct_mary_parity(n: int, m: int, alphas: Sequence | None = None) -> SparsePoly:
    """prod_i (-1)^(m-1) prod_j (x_i - alpha_j) on {0..m-1}^n, alpha_j in (j, j+1).

    The factor (-1)^(m-1) makes each variable's factor positive at 0.
    """
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    intervals = [(j, j + 1) for j in range(m - 1)]
    if alphas is None:
        alphas = [Fraction(2 * j + 1, 2) for j in range(m - 1)]
    alphas = _check_alphas(alphas, intervals)
    return _tensor(n, _univariate_product(alphas, Fraction((-1) ** (m - 1))))


def construct_geometric_parity(n: int, alphas: Sequence | None = None) -> SparsePoly:
    """prod_j (x_1...x_n - alpha_j) with alpha_j in (2^(j-1), 2^j); n+1 terms on {1,2}^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    intervals = [(Fraction(2) ** (j - 1), Fraction(2) ** j) for j in range(1, n + 1)]
    if alphas is None:
        alphas = [(lo + hi) / 2 for lo, hi in intervals]
    alphas = _check_alphas(alphas, intervals)
    coeffs = _univariate_product(alphas)
    return SparsePoly(n, {(d,) * n: c for d, c in enumerate(coeffs)})


def _primitive(coeffs: Sequence[Fraction]) -> list[Fraction]:
    den = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = gcd(*ints) or 1
    return [Fraction(c, g) for c in ints]


def construct_weak_low_sparsity(n: int, m: int) -> SparsePoly:
    """Q(x) * prod_i x_i with Q a product sign representation on {1..m-1}^n.

    Each univariate factor has roots j + 1/2 for j = 1..m-2 and integer
    coefficients; the result has (m-1)^n terms and per-variable degree m-1.
    """
    if n < 1 or m < 2:
        raise ValueError("need n >= 1 and m >= 2")
    roots = [Fraction(2 * j + 1, 2) for j in range(1, m - 1)]
    q = _primitive(_univariate_product(roots, Fraction((-1) ** (m - 1))))
    return _tensor(n, [Fraction(0)] + q)


def product_values(grid: Grid) -> list[int]:
    """Sorted distinct values of x_1 * ... * x_n over the grid."""
    values = {1}
    for _ in range(grid.n):
        values = {v * a for v in values for a in grid.points}
    return sorted(values)


def construct_weak_product(grid: Grid) -> SparsePoly:
    """(-1)^(n a) prod_{s in S, s != a^n} (x_1...x_n - s), a = max(A), S = product values.

    Vanishes everywhere except at (a, ..., a).
    """
    a = grid.points[-1]
    if a <= 0:
        raise ValueError("largest grid point must be positive")
    values = product_values(grid)
    roots = [Fraction(s) for s in values if s != a ** grid.n]
    coeffs = _univariate_product(roots, Fraction((-1) ** (grid.n * a)))
    return SparsePoly(grid.n, {(d,) * grid.n: c for d, c in enumerate(coeffs)})
