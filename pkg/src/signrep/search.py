"""Exhaustive support search backed by exact LP feasibility.

For a fixed support, the coefficients of a sign representation satisfy the
homogeneous strict system (-1)^f(a) P(a) > 0, which is feasible exactly when
the normalised system (-1)^f(a) P(a) >= 1 is.  Weak representations use one
system per candidate witness point a*: all rows >= 0 and the a* row >= 1.

Every infeasible verdict carries a Farkas ray that is re-checked exactly, and
every feasible verdict carries coefficients that are re-verified on the grid.
Rays are cached: a ray that annihilates every column of a new support
certifies that support without another LP.
"""

from __future__ import annotations

import dataclasses
import itertools
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

from .lp import SimplexStats, check_ray, check_solution, farkas_ray, primal_solution
from .poly import Exponent, Grid, SparsePoly, monomial_key
from .representations import CapExceeded, Kind, TargetFunction, verify

CHUNK = 4096
CACHE_CAP = 256


@dataclass(frozen=True)
class SearchConfig:
    degree_cap: int = 1
    max_support: int | None = None
    symmetry: bool = False
    grid_cap: int = 10**6
    subset_cap: int = 2**20
    pool_cap: int = 4096
    parallel: int = 1
    collect_certificates: bool = False

    def __post_init__(self):
        if self.degree_cap < 0:
            raise ValueError("degree cap must be >= 0")
        for name in ("grid_cap", "subset_cap", "pool_cap", "parallel"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class FeasibilityProblem:
    """Coefficient unknowns over ``support`` with sign constraints at grid points.

    ``extra_rows`` appends constraints ``row . c >= rhs`` on the coefficients.
    """

    support: tuple[Exponent, ...]
    target: TargetFunction
    kind: Kind = Kind.SIGN
    witness_point: tuple[int, ...] | None = None
    extra_rows: tuple[tuple[tuple[int, ...], int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(tuple(e) for e in self.support))
        object.__setattr__(self, "kind", Kind(self.kind))
        if len(set(self.support)) != len(self.support):
            raise ValueError("support entries must be distinct")
        if any(len(e) != self.grid.n for e in self.support):
            raise ValueError("support and grid dimensions differ")
        if self.kind is Kind.EXACT:
            raise ValueError("feasibility problems are sign or weak")
        if self.witness_point is not None:
            if self.kind is not Kind.WEAK:
                raise ValueError("a witness point only applies to weak problems")
            if tuple(self.witness_point) not in self.grid:
                raise ValueError("witness point is not on the grid")
        for row, _ in self.extra_rows:
            if len(row) != len(self.support):
                raise ValueError("extra row length differs from the support")

    @property
    def grid(self) -> Grid:
        return self.target.grid

    def points(self) -> list[tuple[int, ...]]:
        return list(self.grid)

    def matrix(self) -> list[list[int]]:
        """Grid rows (-1)^f(a) * a^M followed by the extra rows."""
        rows = [[(-1) ** self.target(a) * _mono_value(e, a) for e in self.support] for a in self.grid]
        rows.extend(list(r) for r, _ in self.extra_rows)
        return rows

    def rhs(self, witness: tuple[int, ...] | None = None) -> list[int]:
        pts = self.points()
        if self.kind is Kind.SIGN:
            b = [1] * len(pts)
        else:
            b = [int(a == witness) for a in pts]
        return b + [r for _, r in self.extra_rows]


@dataclass
class Certificate:
    status: str
    coefficients: dict[Exponent, Fraction] | None = None
    dual_ray: tuple[Fraction, ...] | None = None
    witness_point: tuple[int, ...] | None = None
    witness_rays: dict[tuple[int, ...], tuple[Fraction, ...]] | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "Feasible"

    def polynomial(self, n: int) -> SparsePoly:
        return SparsePoly(n, self.coefficients or {})


def _mono_value(exps: Sequence[int], point: Sequence[int]) -> int:
    v = 1
    for a, e in zip(point, exps):
        if e:
            v *= a ** e
    return v


def audit(problem: FeasibilityProblem, cert: Certificate) -> bool:
    """Re-check a certificate with exact arithmetic, independently of the solver."""
    g = problem.matrix()
    if cert.feasible:
        c = [cert.coefficients.get(e, Fraction(0)) for e in problem.support]
        if problem.kind is Kind.SIGN:
            return check_solution(g, problem.rhs(), c)
        return check_solution(g, problem.rhs(cert.witness_point), c)
    if problem.kind is Kind.SIGN:
        return cert.dual_ray is not None and check_ray(g, problem.rhs(), cert.dual_ray)
    witnesses = [problem.witness_point] if problem.witness_point else problem.points()
    rays = cert.witness_rays or {}
    return all(w in rays and check_ray(g, problem.rhs(w), rays[w]) for w in witnesses)


def feasible_sign_rep(problem: FeasibilityProblem, stats: SimplexStats | None = None) -> Certificate:
    """Decide whether some polynomial on the support sign represents the target."""
    if problem.kind is not Kind.SIGN:
        raise ValueError("feasible_sign_rep needs a sign problem")
    g, b = problem.matrix(), problem.rhs()
    y = farkas_ray(g, b, stats)
    if y is not None:
        cert = Certificate("Infeasible", dual_ray=tuple(y))
    else:
        c = primal_solution(g, b, stats)
        if c is None:
            raise ArithmeticError("Farkas alternative failed: both systems infeasible")
        cert = Certificate("Feasible", coefficients=dict(zip(problem.support, c)))
    if not audit(problem, cert):
        raise ArithmeticError("certificate failed its audit")
    return cert


def feasible_weak_rep(problem: FeasibilityProblem, stats: SimplexStats | None = None) -> Certificate:
    """Weak feasibility as a disjunction over witness points."""
    if problem.kind is not Kind.WEAK:
        raise ValueError("feasible_weak_rep needs a weak problem")
    g = problem.matrix()
    witnesses = [tuple(problem.witness_point)] if problem.witness_point else problem.points()
    rays = {}
    for w in witnesses:
        b = problem.rhs(w)
        y = farkas_ray(g, b, stats)
        if y is None:
            c = primal_solution(g, b, stats)
            if c is None:
                raise ArithmeticError("Farkas alternative failed: both systems infeasible")
            cert = Certificate("Feasible", coefficients=dict(zip(problem.support, c)), witness_point=w)
            break
        rays[w] = tuple(y)
    else:
        cert = Certificate("Infeasible", witness_rays=rays)
    if not audit(problem, cert):
        raise ArithmeticError("certificate failed its audit")
    return cert


# subset search engine


@dataclass
class SearchStats:
    subsets: int = 0
    symmetric_skips: int = 0
    cache_hits: int = 0
    lps: int = 0
    pivots: int = 0

    def merge(self, other: SearchStats) -> None:
        self.subsets += other.subsets
        self.symmetric_skips += other.symmetric_skips
        self.cache_hits += other.cache_hits
        self.lps += other.lps
        self.pivots += other.pivots

    def to_dict(self) -> dict:
        return {
            "certificates_checked": self.subsets,
            "symmetric_skips": self.symmetric_skips,
            "cache_hits": self.cache_hits,
            "lps_solved": self.lps,
            "pivots": self.pivots,
        }


@dataclass(frozen=True)
class _Context:
    columns: tuple[tuple[int, ...], ...]  # per pool element: signed values at each point
    kind: Kind
    perms: tuple[tuple[int, ...], ...] = ()
    collect: bool = False

    @property
    def npoints(self) -> int:
        return len(self.columns[0]) if self.columns else 0


@dataclass(frozen=True)
class _Ray:
    annihilated: int  # bitmask over pool columns with y . column = 0
    positive: int  # bitmask over points with y_a > 0
    y: tuple[int, ...]


@dataclass
class _ChunkResult:
    found: tuple[tuple[int, ...], tuple[int, ...] | None] | None
    stats: SearchStats
    new_rays: list[_Ray]
    certificates: list = field(default_factory=list)


def _make_ray(ctx: _Context, y: Sequence[Fraction]) -> _Ray:
    scale = lcm(*(v.denominator for v in y))
    yi = tuple(int(v * scale) for v in y)
    nz = [(a, v) for a, v in enumerate(yi) if v]
    ann = 0
    for j, col in enumerate(ctx.columns):
        if sum(v * col[a] for a, v in nz) == 0:
            ann |= 1 << j
    pos = 0
    for a, _ in nz:
        pos |= 1 << a
    return _Ray(ann, pos, yi)


def _canonical(subset: tuple[int, ...], perms) -> bool:
    for p in perms:
        if tuple(sorted(p[j] for j in subset)) < subset:
            return False
    return True


def _lookup(cache: list[_Ray], smask: int, point_bit: int) -> _Ray | None:
    for idx, ray in enumerate(cache):
        if smask & ray.annihilated == smask and ray.positive & point_bit:
            if idx:
                cache.insert(0, cache.pop(idx))
            return ray
    return None


def _process_chunk(ctx: _Context, subsets: Sequence[tuple[int, ...]], seed: Sequence[_Ray]) -> _ChunkResult:
    cache = list(seed)
    stats = SearchStats()
    simplex = SimplexStats()
    new_rays: list[_Ray] = []
    certs: list = []
    npts = ctx.npoints
    all_points = (1 << npts) - 1

    def settle(ray: _Ray, subset, witness):
        if ctx.collect:
            certs.append((subset, witness, ray.y))

    def solve(subset, g, witness_index):
        b = [1] * npts if witness_index is None else [int(a == witness_index) for a in range(npts)]
        y = farkas_ray(g, b, simplex)
        if y is None:
            return None
        if not check_ray(g, b, y):
            raise ArithmeticError("Farkas ray failed its exact check")
        ray = _make_ray(ctx, y)
        cache.insert(0, ray)
        del cache[CACHE_CAP:]
        new_rays.append(ray)
        return ray

    try:
        for subset in subsets:
            if ctx.perms and not _canonical(subset, ctx.perms):
                stats.symmetric_skips += 1
                continue
            stats.subsets += 1
            smask = 0
            for j in subset:
                smask |= 1 << j
            if ctx.kind is Kind.SIGN:
                ray = _lookup(cache, smask, all_points)
                if ray is not None:
                    stats.cache_hits += 1
                    settle(ray, subset, None)
                    continue
                g = [[ctx.columns[j][a] for j in subset] for a in range(npts)]
                ray = solve(subset, g, None)
                if ray is None:
                    return _ChunkResult((subset, None), stats, new_rays, certs)
                settle(ray, subset, None)
                continue
            g = [[ctx.columns[j][a] for j in subset] for a in range(npts)]
            tried = set()
            for a in range(npts):
                row = tuple(g[a])
                if not any(row):
                    # the unit ray on this point certifies it
                    if ctx.collect:
                        certs.append((subset, a, tuple(int(i == a) for i in range(npts))))
                    continue
                if row in tried:
                    continue
                tried.add(row)
                ray = _lookup(cache, smask, 1 << a)
                if ray is not None:
                    stats.cache_hits += 1
                    settle(ray, subset, a)
                    continue
                ray = solve(subset, g, a)
                if ray is None:
                    return _ChunkResult((subset, a), stats, new_rays, certs)
                settle(ray, subset, a)
        return _ChunkResult(None, stats, new_rays, certs)
    finally:
        stats.lps += simplex.lps
        stats.pivots += simplex.pivots


_WORKER_CTX: _Context | None = None


def _init_worker(ctx: _Context) -> None:
    global _WORKER_CTX
    _WORKER_CTX = ctx


def _worker_chunk(subsets, seed) -> _ChunkResult:
    return _process_chunk(_WORKER_CTX, subsets, seed)


def _chunks(it: Iterator, size: int) -> Iterator[list]:
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


@dataclass
class SubsetSearchResult:
    k: int | None
    subset: tuple[int, ...] | None
    witness_point: int | None
    coefficients: list[Fraction] | None
    stats: SearchStats
    certificates: list


def subset_search(ctx: _Context, config: SearchConfig, max_k: int | None = None) -> SubsetSearchResult:
    """Smallest k such that some k-subset of the pool is feasible.

    Subsets are enumerated by size, then lexicographically; the first
    feasible subset in that order is the witness.  Work is cut into fixed
    chunks, each starting from the ray cache left by the previous size, so
    the outcome and the statistics do not depend on ``config.parallel``.
    """
    pool = len(ctx.columns)
    top = pool if max_k is None else min(pool, max_k)
    if config.max_support is not None:
        top = min(top, config.max_support)
    stats = SearchStats()
    certs: list = []
    enumerated = [0]
    seed: list[_Ray] = []
    executor = None
    if config.parallel > 1:
        executor = ProcessPoolExecutor(config.parallel, initializer=_init_worker, initargs=(ctx,))
    try:
        for k in range(0, top + 1):
            next_seed: list[_Ray] = []
            blocks = _chunks(itertools.combinations(range(pool), k), CHUNK)
            for res in _run_blocks(ctx, blocks, seed, executor, config, enumerated):
                stats.merge(res.stats)
                certs.extend(res.certificates)
                next_seed.extend(res.new_rays)
                if res.found is not None:
                    subset, witness = res.found
                    coeffs = _solve_found(ctx, subset, witness)
                    return SubsetSearchResult(k, subset, witness, coeffs, stats, certs)
            seed = (next_seed[::-1] + seed)[:CACHE_CAP]
        return SubsetSearchResult(None, None, None, None, stats, certs)
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)


def _run_blocks(ctx, blocks, seed, executor, config, counter):
    def budget(block):
        counter[0] += len(block)
        if counter[0] > config.subset_cap:
            raise CapExceeded(f"more than {config.subset_cap} supports would be enumerated")

    if executor is None:
        for block in blocks:
            budget(block)
            yield _process_chunk(ctx, block, seed)
        return
    # keep a bounded window of futures; results are consumed in submission order
    window = []
    blocks = iter(blocks)
    exhausted = False
    while True:
        while not exhausted and len(window) < 2 * config.parallel:
            block = next(blocks, None)
            if block is None:
                exhausted = True
                break
            budget(block)
            window.append(executor.submit(_worker_chunk, block, seed))
        if not window:
            return
        yield window.pop(0).result()


def _solve_found(ctx: _Context, subset, witness) -> list[Fraction]:
    npts = ctx.npoints
    g = [[ctx.columns[j][a] for j in subset] for a in range(npts)]
    b = [1] * npts if witness is None else [int(a == witness) for a in range(npts)]
    c = primal_solution(g, b)
    if c is None or not check_solution(g, b, c):
        raise ArithmeticError("feasible support without a checked solution")
    return c


# monomial pools and symmetry


def monomial_pool(n: int, degree_cap: int, total_degree: int | None = None) -> list[Exponent]:
    """Exponent vectors with every entry <= degree_cap, in graded order."""
    pool = [e for e in itertools.product(range(degree_cap + 1), repeat=n)
            if total_degree is None or sum(e) <= total_degree]
    return sorted(pool, key=monomial_key)


def variable_symmetries(target: TargetFunction) -> list[tuple[int, ...]]:
    """Variable permutations that fix the target (identity excluded)."""
    n = target.grid.n
    if target.kind == "parity":
        perms = itertools.permutations(range(n))
    elif target.kind == "ip":
        k = n // 2
        perms = []
        for order in itertools.permutations(range(k)):
            for flips in itertools.product((False, True), repeat=k):
                p = [0] * n
                for src, dst in enumerate(order):
                    x, y = dst, k + dst
                    if flips[src]:
                        x, y = y, x
                    p[src], p[k + src] = x, y
                perms.append(tuple(p))
    else:
        return []
    ident = tuple(range(n))
    return [tuple(p) for p in perms if tuple(p) != ident]


def _pool_perms(labels: Sequence, var_perms, act) -> tuple[tuple[int, ...], ...]:
    index = {lab: j for j, lab in enumerate(labels)}
    out = []
    for p in var_perms:
        out.append(tuple(index[act(lab, p)] for lab in labels))
    return tuple(out)


def _permute_exps(exps: Exponent, p: Sequence[int]) -> Exponent:
    new = [0] * len(exps)
    for i, e in enumerate(exps):
        new[p[i]] = e
    return tuple(new)


def monomial_context(target: TargetFunction, pool: Sequence[Exponent], kind: Kind, config: SearchConfig) -> _Context:
    grid = target.grid
    if grid.size > config.grid_cap:
        raise CapExceeded(f"grid has {grid.size} points, cap is {config.grid_cap}")
    if len(pool) > config.pool_cap:
        raise CapExceeded(f"monomial pool has {len(pool)} entries, cap is {config.pool_cap}")
    points = list(grid)
    signs = [(-1) ** target(a) for a in points]
    columns = tuple(tuple(s * _mono_value(e, a) for s, a in zip(signs, points)) for e in pool)
    perms = ()
    if config.symmetry:
        perms = _pool_perms(pool, variable_symmetries(target), _permute_exps)
    return _Context(columns, Kind(kind), perms, config.collect_certificates)


@dataclass
class SparsityResult:
    k: int | None
    witness: SparsePoly | None
    support: tuple[Exponent, ...] | None
    witness_point: tuple[int, ...] | None
    stats: SearchStats
    degree_cap: int
    elapsed: float
    certificates: list = field(default_factory=list)

    def to_dict(self, timing: bool = False) -> dict:
        from .poly import format_poly, poly_to_records

        out = {
            "k": self.k,
            "degree_cap": self.degree_cap,
            "witness": format_poly(self.witness) if self.witness is not None else None,
            "witness_terms": poly_to_records(self.witness) if self.witness is not None else None,
        }
        if self.witness_point is not None:
            out["witness_point"] = list(self.witness_point)
        out.update(self.stats.to_dict())
        if timing:
            out["wall_time"] = round(self.elapsed, 3)
        return out


def min_sparsity(target: TargetFunction, kind: Kind | str, config: SearchConfig = SearchConfig()) -> SparsityResult:
    """Minimum support size over monomials with per-variable degree <= config.degree_cap."""
    kind = Kind(kind)
    if kind is Kind.EXACT:
        raise ValueError("search supports sign and weak representations")
    start = time.perf_counter()
    n = target.grid.n
    if (config.degree_cap + 1) ** n > config.pool_cap:
        raise CapExceeded(f"pool of {(config.degree_cap + 1) ** n} monomials exceeds cap {config.pool_cap}")
    pool = monomial_pool(n, config.degree_cap)
    ctx = monomial_context(target, pool, kind, config)
    res = subset_search(ctx, config)
    elapsed = time.perf_counter() - start
    if res.k is None:
        return SparsityResult(None, None, None, None, res.stats, config.degree_cap, elapsed,
                              _label_certs(res.certificates, pool, target))
    support = tuple(pool[j] for j in res.subset)
    witness = SparsePoly(n, dict(zip(support, res.coefficients)))
    wpt = list(target.grid)[res.witness_point] if res.witness_point is not None else None
    _reverify(witness, target, kind)
    return SparsityResult(res.k, witness, support, wpt, res.stats, config.degree_cap, elapsed,
                          _label_certs(res.certificates, pool, target))


def _label_certs(certs, labels, target) -> list:
    points = list(target.grid)
    out = []
    for subset, witness, y in certs:
        out.append({
            "support": [labels[j] for j in subset],
            "witness_point": points[witness] if witness is not None else None,
            "ray": {points[a]: v for a, v in enumerate(y) if v},
        })
    return out


def _reverify(p: SparsePoly, target: TargetFunction, kind: Kind) -> None:
    report = verify(p, target, kind)
    if not report.passed:
        raise ArithmeticError(f"search witness failed independent verification: {report}")


@dataclass
class DegreeResult:
    d: int | None
    witness: SparsePoly | None
    infeasible_rays: dict[int, list]
    stats: SearchStats
    degree_cap: int


def min_degree(target: TargetFunction, kind: Kind | str, config: SearchConfig = SearchConfig()) -> DegreeResult:
    """Smallest total degree d whose full pool (entries <= cap, total <= d) is feasible."""
    kind = Kind(kind)
    if kind is Kind.EXACT:
        raise ValueError("search supports sign and weak representations")
    n = target.grid.n
    stats = SearchStats()
    rays: dict[int, list] = {}
    full = dataclasses.replace(config, symmetry=False, collect_certificates=True)
    for d in range(0, n * config.degree_cap + 1):
        pool = monomial_pool(n, config.degree_cap, d)
        ctx = monomial_context(target, pool, kind, full)
        res = _process_chunk(ctx, [tuple(range(len(pool)))], [])
        stats.merge(res.stats)
        if res.found is not None:
            subset, witness = res.found
            coeffs = _solve_found(ctx, subset, witness)
            p = SparsePoly(n, dict(zip(pool, coeffs)))
            _reverify(p, target, kind)
            return DegreeResult(d, p, rays, stats, config.degree_cap)
        rays[d] = _label_certs(res.certificates, pool, target)
    return DegreeResult(None, None, rays, stats, config.degree_cap)


@dataclass
class CensusEntry:
    subset: tuple[int, ...]
    expected_sign: int
    wrong_sign: Certificate
    right_sign: Certificate

    @property
    def verdict(self) -> str:
        wrong, right = self.wrong_sign.feasible, self.right_sign.feasible
        if not wrong and right:
            return "+" if self.expected_sign > 0 else "-"
        if wrong and right:
            return "Unconstrained"
        if not wrong and not right:
            return "Infeasible"
        return "+" if self.expected_sign < 0 else "-"


def coefficient_sign_census(n: int, config: SearchConfig = SearchConfig(),
                            stats: SimplexStats | None = None) -> list[CensusEntry]:
    """For each multilinear monomial S, test both signs of c_S against parity on {0,1}^n.

    The wrong sign adds the row -(-1)^|S| c_S >= 0; the right sign adds
    (-1)^|S| c_S >= 1.  Expected: wrong infeasible, right feasible.
    """
    grid = Grid(n, (0, 1))
    if grid.size > config.grid_cap or 2 ** n > config.pool_cap:
        raise CapExceeded(f"n = {n} exceeds the configured caps")
    target = TargetFunction.parity(grid)
    support = tuple(monomial_pool(n, 1))
    out = []
    for idx, exps in enumerate(support):
        s = (-1) ** sum(exps)
        unit = tuple(int(j == idx) for j in range(len(support)))
        wrong = FeasibilityProblem(support, target, Kind.SIGN, extra_rows=((tuple(-s * u for u in unit), 0),))
        right = FeasibilityProblem(support, target, Kind.SIGN, extra_rows=((tuple(s * u for u in unit), 1),))
        subset = tuple(i + 1 for i, e in enumerate(exps) if e)
        out.append(CensusEntry(subset, s, feasible_sign_rep(wrong, stats), feasible_sign_rep(right, stats)))
    return out
