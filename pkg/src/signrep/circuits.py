"""Threshold-of-AND circuits and sparsity over the AND-gate basis.

An AND gate with positive inputs I and negated inputs J computes
prod_{i in I} x_i * prod_{j in J} (1 - x_j).  Gate indices are 0-based here
and 1-based in circuit files.  The constant gate (I = J = empty) counts
toward the circuit size like any other gate.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .poly import SparsePoly, format_rational
from .representations import CapExceeded, Kind, TargetFunction, VerificationReport, verify
from .search import SearchConfig, SearchStats, _Context, subset_search, variable_symmetries, _pool_perms

MAX_BASIS_N = 8


@dataclass(frozen=True, init=False)
class AndGateTerm:
    positive: frozenset[int]
    negated: frozenset[int]

    def __init__(self, positive: Sequence[int] = (), negated: Sequence[int] = ()):
        object.__setattr__(self, "positive", frozenset(positive))
        object.__setattr__(self, "negated", frozenset(negated))
        if self.positive & self.negated:
            raise ValueError(f"gate inputs overlap: {sorted(self.positive & self.negated)}")

    def sort_key(self) -> tuple:
        return (len(self.positive) + len(self.negated), sorted(self.positive), sorted(self.negated))

    def value(self, point: Sequence[int]) -> int:
        return int(all(point[i] for i in self.positive) and not any(point[j] for j in self.negated))

    def describe(self) -> str:
        parts = [f"x{i + 1}" for i in sorted(self.positive)] + [f"~x{j + 1}" for j in sorted(self.negated)]
        return "&".join(parts) or "1"


def gate_poly(term: AndGateTerm, n: int) -> SparsePoly:
    """Expanded multilinear polynomial of an AND gate."""
    if any(not 0 <= i < n for i in term.positive | term.negated):
        raise ValueError(f"gate uses a variable outside 0..{n - 1}")
    p = SparsePoly.const(n, 1)
    for i in sorted(term.positive):
        p = p * SparsePoly.var(n, i)
    for j in sorted(term.negated):
        p = p * (1 - SparsePoly.var(n, j))
    return p


def enumerate_basis(n: int, cap: int = MAX_BASIS_N) -> list[AndGateTerm]:
    """All 3^n gates, ordered by |I| + |J| and then lexicographically."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise CapExceeded(f"basis for n = {n} has {3 ** n} gates; cap is n <= {cap}")
    gates = []
    for roles in itertools.product((0, 1, 2), repeat=n):
        gates.append(AndGateTerm([i for i, r in enumerate(roles) if r == 1],
                                 [i for i, r in enumerate(roles) if r == 2]))
    return sorted(gates, key=AndGateTerm.sort_key)


@dataclass(frozen=True)
class ThrAndCircuit:
    n: int
    gates: tuple[AndGateTerm, ...]
    weights: tuple[Fraction, ...]
    bias: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))
        object.__setattr__(self, "bias", Fraction(self.bias))
        if len(self.gates) != len(self.weights):
            raise ValueError("one weight per gate is required")
        if len(set(self.gates)) != len(self.gates):
            raise ValueError("duplicate gates")

    @property
    def size(self) -> int:
        return len(self.gates)

    def polynomial(self) -> SparsePoly:
        p = SparsePoly.const(self.n, self.bias)
        for g, w in zip(self.gates, self.weights):
            p = p + gate_poly(g, self.n) * w
        return p

    def evaluate(self, point: Sequence[int]) -> Fraction:
        return self.bias + sum((w * g.value(point) for g, w in zip(self.gates, self.weights)), Fraction(0))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "bias": format_rational(self.bias),
            "gates": [{"I": [i + 1 for i in sorted(g.positive)], "J": [j + 1 for j in sorted(g.negated)],
                       "w": format_rational(w)} for g, w in zip(self.gates, self.weights)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> ThrAndCircuit:
        gates, weights = [], []
        for entry in data["gates"]:
            gates.append(AndGateTerm([i - 1 for i in entry.get("I", [])], [j - 1 for j in entry.get("J", [])]))
            weights.append(Fraction(entry["w"]))
        return cls(int(data["n"]), gates, weights, Fraction(data.get("bias", "0")))


def load_circuit(path: str | Path) -> ThrAndCircuit:
    return ThrAndCircuit.from_dict(json.loads(Path(path).read_text()))


def circuit_eval(c: ThrAndCircuit, point: Sequence[int]) -> int:
    """Output bit: 0 for a positive sum, 1 for a negative one."""
    v = c.evaluate(point)
    if v == 0:
        raise ValueError(f"threshold sum is zero at {tuple(point)}")
    return int(v < 0)


def circuit_verify(c: ThrAndCircuit, f: TargetFunction) -> VerificationReport:
    """The circuit computes ``f`` iff its basis expansion sign represents ``f``."""
    if f.grid.points != (0, 1):
        raise ValueError("circuits are evaluated on {0,1}^n")
    return verify(c.polynomial(), f, Kind.SIGN)


@dataclass
class CircuitSearchResult:
    k: int | None
    circuit: ThrAndCircuit | None
    stats: SearchStats


def _permute_gate(g: AndGateTerm, p: Sequence[int]) -> AndGateTerm:
    return AndGateTerm([p[i] for i in g.positive], [p[j] for j in g.negated])


def min_spr_B(f: TargetFunction, config: SearchConfig = SearchConfig()) -> CircuitSearchResult:
    """Fewest basis gates whose weighted sum sign represents ``f`` on {0,1}^n."""
    grid = f.grid
    if grid.points != (0, 1):
        raise ValueError("the AND-gate basis lives on {0,1}^n")
    if grid.size > config.grid_cap:
        raise CapExceeded(f"grid has {grid.size} points, cap is {config.grid_cap}")
    basis = enumerate_basis(grid.n)
    if len(basis) > config.pool_cap:
        raise CapExceeded(f"basis has {len(basis)} gates, cap is {config.pool_cap}")
    points = list(grid)
    signs = [(-1) ** f(a) for a in points]
    columns = tuple(tuple(s * g.value(a) for s, a in zip(signs, points)) for g in basis)
    perms = ()
    if config.symmetry:
        perms = _pool_perms(basis, variable_symmetries(f), _permute_gate)
    ctx = _Context(columns, Kind.SIGN, perms, False)
    res = subset_search(ctx, config)
    if res.k is None:
        return CircuitSearchResult(None, None, res.stats)
    circuit = ThrAndCircuit(grid.n, [basis[j] for j in res.subset], res.coefficients)
    report = circuit_verify(circuit, f)
    if not report.passed:
        raise ArithmeticError(f"search circuit failed independent verification: {report}")
    return CircuitSearchResult(res.k, circuit, res.stats)


def _block_product(blocks: list[list[tuple[AndGateTerm, Fraction]]], n: int) -> ThrAndCircuit:
    # gates on disjoint variable blocks multiply into single gates
    gates, weights = [], []
    for combo in itertools.product(*blocks):
        pos, neg, w = set(), set(), Fraction(1)
        for g, c in combo:
            pos |= g.positive
            neg |= g.negated
            w *= c
        gates.append(AndGateTerm(sorted(pos), sorted(neg)))
        weights.append(w)
    return ThrAndCircuit(n, gates, weights)


def construct_parity_5_circuit(n: int) -> ThrAndCircuit:
    """Product over 3-bit blocks of 1 - 2Q, Q the 4-gate exact parity on 3 bits."""
    if n < 3 or n % 3:
        raise ValueError(f"n must be a positive multiple of 3, got {n}")
    blocks = []
    for b in range(n // 3):
        x1, x2, x3 = 3 * b, 3 * b + 1, 3 * b + 2
        blocks.append([
            (AndGateTerm(), Fraction(1)),
            (AndGateTerm([x1, x2, x3]), Fraction(-2)),
            (AndGateTerm([x1], [x2, x3]), Fraction(-2)),
            (AndGateTerm([x2], [x1, x3]), Fraction(-2)),
            (AndGateTerm([x3], [x1, x2]), Fraction(-2)),
        ])
    return _block_product(blocks, n)


def construct_ip_circuit(pairs: int) -> ThrAndCircuit:
    """Product over pair blocks of 1 - 2(x1y1 + x2y2 - 2 x1y1x2y2); 2^pairs gates.

    Variables are laid out as (x_1..x_k, y_1..y_k) with k = pairs.
    """
    if pairs < 2 or pairs % 2:
        raise ValueError(f"the number of pairs must be a positive even number, got {pairs}")
    k = pairs
    blocks = []
    for b in range(k // 2):
        xa, xb = 2 * b, 2 * b + 1
        ya, yb = k + xa, k + xb
        blocks.append([
            (AndGateTerm(), Fraction(1)),
            (AndGateTerm([xa, ya]), Fraction(-2)),
            (AndGateTerm([xb, yb]), Fraction(-2)),
            (AndGateTerm([xa, ya, xb, yb]), Fraction(4)),
        ])
    return _block_product(blocks, 2 * k)


def split_last_variable(c: ThrAndCircuit) -> tuple[SparsePoly, SparsePoly, SparsePoly]:
    """Group gates by the last variable: P = x_n A + (1 - x_n) B + C.

    A, B and C are returned as polynomials in the first n - 1 variables.
    """
    n = c.n
    last = n - 1
    parts = {"A": SparsePoly.zero(n - 1), "B": SparsePoly.zero(n - 1), "C": SparsePoly.const(n - 1, c.bias)}
    for g, w in zip(c.gates, c.weights):
        rest = AndGateTerm(g.positive - {last}, g.negated - {last})
        poly = gate_poly(rest, n - 1) * w
        key = "A" if last in g.positive else "B" if last in g.negated else "C"
        parts[key] = parts[key] + poly
    return parts["A"], parts["B"], parts["C"]
