"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a map from exponent tuples to nonzero ``Fraction``
coefficients.  The zero polynomial has no terms.  Variables are indexed from
0 in the Python API and printed as ``x1, x2, ...`` in the text format.

    x1^2*x2 + 3  ->  {(2, 1): Fraction(1), (0, 0): Fraction(3)}
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

Exponent = tuple[int, ...]
Number = Union[int, Fraction]


def monomial_key(exps: Exponent) -> tuple:
    """Graded order: total degree first, then x1 before x2 within a degree."""
    return (sum(exps), tuple(-e for e in exps))


class SparsePoly:
    """Immutable sparse polynomial in ``n`` variables with rational coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, Number] | Iterable[tuple[Exponent, Number]] = ()):
        if n < 0:
            raise ValueError(f"dimension must be non-negative, got {n}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} does not have length {n}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            acc[exps] = acc.get(exps, Fraction(0)) + Fraction(c)
        self.n = n
        self._terms = {e: acc[e] for e in sorted(acc, key=monomial_key) if acc[e] != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, n: int) -> SparsePoly:
        return cls(n)

    @classmethod
    def const(cls, n: int, c: Number) -> SparsePoly:
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> SparsePoly:
        if not 0 <= i < n:
            raise ValueError(f"variable index {i} out of range for n={n}")
        exps = [0] * n
        exps[i] = 1
        return cls(n, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Number = 1) -> SparsePoly:
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def univariate(cls, coeffs: Sequence[Number]) -> SparsePoly:
        """Build a one-variable polynomial from ascending coefficients."""
        return cls(1, {(d,): c for d, c in enumerate(coeffs)})

    # container protocol

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def support(self) -> list[Exponent]:
        return list(self._terms)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other: object) -> bool:
        if isinstance(other, SparsePoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePoly.const(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, tuple(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparsePoly({self.n}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    # arithmetic

    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            if other.n != self.n:
                raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.const(self.n, other)
        raise TypeError(f"cannot combine SparsePoly with {type(other).__name__}")

    def __add__(self, other) -> SparsePoly:
        other = self._coerce(other)
        return SparsePoly(self.n, itertools.chain(self._terms.items(), other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> SparsePoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> SparsePoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> SparsePoly:
        if isinstance(other, (int, Fraction)):
            return SparsePoly(self.n, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        acc: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = SparsePoly.const(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, *point: Number) -> Fraction:
        return evaluate(self, point)


def evaluate(p: SparsePoly, point: Sequence[Number]) -> Fraction:
    """Exact value of ``p`` at ``point``."""
    if len(point) != p.n:
        raise ValueError(f"point has length {len(point)} but polynomial has {p.n} variables")
    total = Fraction(0)
    for exps, c in p.items():
        term = c
        for x, e in zip(point, exps):
            if e:
                term *= x ** e
        total += term
    return total


@dataclass(frozen=True)
class Measures:
    spr: int
    deg: int
    deg_i: tuple[int, ...]
    spr_i: tuple[int, ...]


def measures(p: SparsePoly) -> Measures:
    """Sparsity, total degree and per-variable degree/sparsity.

    The zero polynomial reports degree -1 and per-variable degrees -1.
    """
    support = p.support()
    if not support:
        return Measures(0, -1, (-1,) * p.n, (0,) * p.n)
    deg = max(sum(e) for e in support)
    deg_i = tuple(max(e[i] for e in support) for i in range(p.n))
    spr_i = tuple(len({e[i] for e in support}) for i in range(p.n))
    return Measures(len(support), deg, deg_i, spr_i)


def multilinear_reduce(p: SparsePoly) -> SparsePoly:
    """Apply x^k -> x for k >= 2; agrees with ``p`` on {0,1}^n."""
    return SparsePoly(p.n, ((tuple(min(e, 1) for e in exps), c) for exps, c in p.items()))


def vanishing_poly(points: Sequence[int]) -> SparsePoly:
    """Monic univariate prod (X - a) over ``points``."""
    if not points:
        raise ValueError("need at least one point")
    if len(set(points)) != len(points):
        raise ValueError(f"points must be distinct: {points}")
    x = SparsePoly.var(1, 0)
    result = SparsePoly.const(1, 1)
    for a in points:
        result = result * (x - a)
    return result


@lru_cache(maxsize=None)
def _power_remainders(points: tuple[int, ...], top: int) -> tuple[tuple[Fraction, ...], ...]:
    # Dense ascending coefficient lists of X^d mod M(X) for d = 0..top.
    m = len(points)
    mono = [Fraction(c) for c in univariate_coefficients(vanishing_poly(points))]
    rems = []
    cur = [Fraction(0)] * m
    cur[0] = Fraction(1)
    for d in range(top + 1):
        rems.append(tuple(cur))
        # multiply by X, then eliminate X^m using the monic relation
        shifted = [Fraction(0)] + cur
        lead = shifted[m]
        cur = [shifted[k] - lead * mono[k] for k in range(m)]
    return tuple(rems)


def grid_reduce(p: SparsePoly, grid: Grid) -> SparsePoly:
    """Reduce ``p`` modulo the vanishing polynomial of the grid in each variable.

    Variables are processed in ascending order; every per-variable degree of
    the result is at most m - 1 and the values on the grid are unchanged.
    """
    if p.n != grid.n:
        raise ValueError(f"dimension mismatch: polynomial {p.n}, grid {grid.n}")
    m = grid.m
    current = p
    for i in range(p.n):
        top = max((e[i] for e in current.support()), default=0)
        if top < m:
            continue
        rems = _power_remainders(grid.points, top)
        acc: list[tuple[Exponent, Fraction]] = []
        for exps, c in current.items():
            d = exps[i]
            if d < m:
                acc.append((exps, c))
                continue
            for k, r in enumerate(rems[d]):
                if r:
                    acc.append((exps[:i] + (k,) + exps[i + 1:], c * r))
        current = SparsePoly(p.n, acc)
    return current


def conic_combine(weights: Sequence[Number], polys: Sequence[SparsePoly]) -> SparsePoly:
    """Positive combination sum w_i * P_i; weights must be strictly positive."""
    if len(weights) != len(polys):
        raise ValueError("weights and polynomials differ in length")
    if not polys:
        raise ValueError("need at least one polynomial")
    n = polys[0].n
    acc = SparsePoly.zero(n)
    for w, q in zip(weights, polys):
        w = Fraction(w)
        if w <= 0:
            raise ValueError(f"conic weights must be positive, got {w}")
        if q.n != n:
            raise ValueError("polynomials have different dimensions")
        acc = acc + q * w
    return acc


def decompose_by_var(p: SparsePoly, i: int) -> dict[int, SparsePoly]:
    """Group terms by the power of variable ``i``: P = sum_d X_i^d * Q_d.

    Each Q_d keeps dimension n with a zero in slot ``i``.
    """
    if not 0 <= i < p.n:
        raise ValueError(f"variable index {i} out of range for n={p.n}")
    groups: dict[int, list[tuple[Exponent, Fraction]]] = {}
    for exps, c in p.items():
        groups.setdefault(exps[i], []).append((exps[:i] + (0,) + exps[i + 1:], c))
    if not groups:
        return {}
    return {d: SparsePoly(p.n, groups[d]) for d in sorted(groups)}


def drop_var(p: SparsePoly, i: int) -> SparsePoly:
    """Remove variable slot ``i``; the variable must not occur in ``p``."""
    if any(e[i] for e in p.support()):
        raise ValueError(f"variable x{i + 1} occurs in the polynomial")
    return SparsePoly(p.n - 1, ((e[:i] + e[i + 1:], c) for e, c in p.items()))


def substitute(p: SparsePoly, i: int, value: Number) -> SparsePoly:
    """Fix variable ``i`` to ``value`` and drop it."""
    acc = []
    for exps, c in p.items():
        acc.append((exps[:i] + exps[i + 1:], c * Fraction(value) ** exps[i]))
    return SparsePoly(p.n - 1, acc)


def univariate_coefficients(p: SparsePoly) -> list[Fraction]:
    """Dense ascending coefficient list c_0..c_d of a one-variable polynomial."""
    if p.n != 1:
        raise ValueError(f"expected a univariate polynomial, got {p.n} variables")
    if p.is_zero():
        return []
    d = max(e[0] for e in p.support())
    out = [Fraction(0)] * (d + 1)
    for (e,), c in p.items():
        out[e] = c
    return out


@dataclass(frozen=True)
class Grid:
    """The point set A^n for a sorted set A of distinct non-negative integers."""

    n: int
    points: tuple[int, ...]

    def __post_init__(self):
        pts = tuple(int(a) for a in self.points)
        object.__setattr__(self, "points", pts)
        if self.n < 1:
            raise ValueError(f"grid dimension must be >= 1, got {self.n}")
        if len(pts) < 2:
            raise ValueError("grid needs at least two points")
        if any(a < 0 for a in pts):
            raise ValueError("grid points must be non-negative")
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError(f"grid points must be strictly increasing: {pts}")

    @classmethod
    def range(cls, n: int, lo: int, hi: int) -> Grid:
        """The grid {lo, ..., hi}^n."""
        return cls(n, tuple(range(lo, hi + 1)))

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def size(self) -> int:
        return self.m ** self.n

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(self.points, repeat=self.n)

    def __contains__(self, point) -> bool:
        return len(point) == self.n and all(a in self.points for a in point)

    def describe(self) -> str:
        pts = self.points
        if pts == tuple(range(pts[0], pts[-1] + 1)):
            return f"{{{pts[0]}..{pts[-1]}}}^{self.n}"
        return "{" + ",".join(map(str, pts)) + f"}}^{self.n}"


# text format

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_VAR_RE = re.compile(r"^[xX](\d+)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^(\d+)(?:/(\d+))?$")


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exps: Exponent) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def format_poly(p: SparsePoly) -> str:
    """Canonical text form, e.g. ``1 - 2*x1 - 2*x2 + 4*x1*x2``."""
    if p.is_zero():
        return "0"
    out = []
    for k, (exps, c) in enumerate(p.items()):
        mono = format_monomial(exps)
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def parse_poly(text: str, n: int | None = None) -> SparsePoly:
    """Parse a signed sum of terms such as ``3/4 - x1^2*x2 + 2*x3``.

    ``n`` defaults to the largest variable index that appears (at least 1).
    """
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial text")
    raw_terms: list[tuple[Fraction, dict[int, int]]] = []
    pos = 0
    for match in _TERM_RE.finditer(s):
        if match.start() != pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        pos = match.end()
        sign, body = match.groups()
        coeff = Fraction(-1 if sign == "-" else 1)
        powers: dict[int, int] = {}
        for factor in body.split("*"):
            num = _NUM_RE.match(factor)
            var = _VAR_RE.match(factor)
            if num:
                den = int(num.group(2) or 1)
                if den == 0:
                    raise ValueError(f"zero denominator in {factor!r}")
                coeff *= Fraction(int(num.group(1)), den)
            elif var:
                idx = int(var.group(1))
                if idx < 1:
                    raise ValueError("variables are numbered from x1")
                powers[idx - 1] = powers.get(idx - 1, 0) + int(var.group(2) or 1)
            else:
                raise ValueError(f"bad factor {factor!r} in polynomial text")
        raw_terms.append((coeff, powers))
    if pos != len(s):
        raise ValueError(f"trailing text {s[pos:]!r}")
    top = max((max(pw, default=-1) for _, pw in raw_terms), default=-1) + 1
    if n is None:
        n = max(top, 1)
    elif top > n:
        raise ValueError(f"variable x{top} exceeds dimension {n}")
    terms = []
    for coeff, powers in raw_terms:
        exps = [0] * n
        for i, e in powers.items():
            exps[i] = e
        terms.append((tuple(exps), coeff))
    return SparsePoly(n, terms)


def poly_to_records(p: SparsePoly) -> list[dict]:
    """Structured form: ``[{"exponents": [...], "coeff": "p/q"}, ...]``."""
    return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in p.items()]


def poly_from_records(records: Sequence[Mapping], n: int | None = None) -> SparsePoly:
    if n is None:
        if not records:
            raise ValueError("dimension required for an empty record list")
        n = len(records[0]["exponents"])
    return SparsePoly(n, ((tuple(r["exponents"]), Fraction(r["coeff"])) for r in records))
