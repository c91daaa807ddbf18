"""Named experiments that recompute the small-case bounds and compare exactly."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, replace
from math import comb
from typing import Callable

from . import circuits, representations as reps, search, signtools
from .lp import SimplexStats
from .poly import Grid, measures
from .report import Case, RunReport
from .representations import CapExceeded, Kind, TargetFunction


@dataclass(frozen=True)
class ExperimentPreset:
    name: str
    criterion: str
    run: Callable[[RunReport, dict], None]
    defaults: dict


def _parity(n: int, lo: int, hi: int) -> TargetFunction:
    return TargetFunction.parity(Grid.range(n, lo, hi))


def _config(opts: dict, **kw) -> search.SearchConfig:
    return search.SearchConfig(parallel=opts.get("parallel", 1), symmetry=opts.get("symmetry", False), **kw)


def _tally(report: RunReport, stats: search.SearchStats) -> None:
    report.solver["lps_solved"] += stats.lps
    report.solver["pivots"] += stats.pivots


def _case(report: RunReport, params: dict, expected, claim: str, compute, relation: str = "==") -> None:
    try:
        value = compute()
    except (CapExceeded, ValueError) as exc:
        report.cases.append(Case(params, None, expected, relation, claim, error=str(exc)))
        return
    report.cases.append(Case(params, value, expected, relation, claim))


def _min_sparsity(report, target, kind, opts, degree_cap):
    res = search.min_sparsity(target, kind, _config(opts, degree_cap=degree_cap))
    _tally(report, res.stats)
    return res.k


def _min_degree(report, target, kind, opts, degree_cap):
    res = search.min_degree(target, kind, _config(opts, degree_cap=degree_cap))
    _tally(report, res.stats)
    return res.d


def run_dsp2(report, opts):
    for n in opts["n"]:
        _case(report, {"n": n, "grid": "{0,1}", "D": 1}, 2 ** n,
              "multilinear sign representations of parity use all 2^n monomials",
              lambda: _min_sparsity(report, _parity(n, 0, 1), Kind.SIGN, opts, 1))


def run_dsp2_degree(report, opts):
    for n in opts["n"]:
        _case(report, {"n": n, "grid": "{0,1}", "D": 1}, n,
              "sign representations of parity on the hypercube have degree n",
              lambda: _min_degree(report, _parity(n, 0, 1), Kind.SIGN, opts, 1))


def run_sign2(report, opts):
    for n in opts["n"]:
        def census():
            lp_stats = SimplexStats()
            entries = search.coefficient_sign_census(n, stats=lp_stats)
            report.solver["lps_solved"] += lp_stats.lps
            report.solver["pivots"] += lp_stats.pivots
            good = [e for e in entries if e.verdict == ("+" if e.expected_sign > 0 else "-")]
            return len(good)
        _case(report, {"n": n}, 2 ** n,
              "every coefficient c_S of a hypercube parity representation has sign (-1)^|S|", census)


def run_dspm(report, opts):
    for n in opts["n"]:
        _case(report, {"n": n, "grid": "{0,1,2}", "D": 2}, 3 ** n,
              "per-variable degree <= m-1 forces sparsity m^n",
              lambda: _min_sparsity(report, _parity(n, 0, 2), Kind.SIGN, opts, 2))


def run_degree_m(report, opts):
    n, m = 2, 3
    _case(report, {"n": n, "grid": "{0,1,2}", "D": 2}, n * (m - 1),
          "degree of a sign representation on {0..m-1}^n is at least n(m-1)",
          lambda: _min_degree(report, _parity(n, 0, 2), Kind.SIGN, opts, 2))


def run_general_lower(report, opts):
    for n in opts["n"]:
        _case(report, {"n": n, "grid": "{1,2}", "D": n}, n + 1,
              "parity on {1,2}^n needs exactly n+1 monomials without degree limits",
              lambda: _min_sparsity(report, _parity(n, 1, 2), Kind.SIGN, opts, n))
        _case(report, {"n": n, "construction": "geometric"}, n + 1,
              "the product construction has n+1 terms and verifies",
              lambda: _geometric_size(n))
    _case(report, {"n": 2, "grid": "{1,2,3}", "D": 3}, 5,
          "sparsity on {1..m}^n is at least n(m-1)+1",
          lambda: _min_sparsity(report, _parity(2, 1, 3), Kind.SIGN, opts, 3), ">=")


def _geometric_size(n: int) -> int | None:
    p = reps.construct_geometric_parity(n)
    ok = reps.verify(p, _parity(n, 1, 2), Kind.SIGN).passed and measures(p).deg == n * n
    return len(p) if ok else None


def run_weak(report, opts):
    for m, n in [(2, 1), (2, 2), (3, 1), (3, 2)]:
        _case(report, {"n": n, "grid": f"{{0..{m - 1}}}", "D": m - 1, "kind": "weak"}, (m - 1) ** n,
              "weak representations on {0..m-1}^n with degree <= m-1 need (m-1)^n monomials",
              lambda: _min_sparsity(report, _parity(n, 0, m - 1), Kind.WEAK, opts, m - 1))
    for m, n in [(2, 1), (2, 2)]:
        _case(report, {"n": n, "grid": f"{{1..{m}}}", "D": m - 1, "kind": "weak"}, m ** n,
              "without 0 in the grid weak representations need m^n monomials",
              lambda: _min_sparsity(report, _parity(n, 1, m), Kind.WEAK, opts, m - 1))
    for n in opts["n"]:
        _case(report, {"n": n, "grid": "{0,1}", "D": 1, "kind": "weak", "measure": "degree"}, n,
              "weak representations of hypercube parity have degree n",
              lambda: _min_degree(report, _parity(n, 0, 1), Kind.WEAK, opts, 1))


def run_weak_roots(report, opts):
    for m in range(2, 6):
        res = search.min_sparsity(_parity(1, 0, m - 1), Kind.WEAK, _config(opts, degree_cap=m - 1))
        _tally(report, res.stats)
        w = res.witness
        inner = list(range(0, m))
        _case(report, {"m": m, "witness": str(w), "measure": "grid roots"}, m - 2,
              "a univariate weak representation has m-2 roots in (0, m-1]",
              lambda: signtools.positive_root_witnesses(w, inner), ">=")
        _case(report, {"m": m, "witness": str(w), "measure": "Descartes"}, m - 2,
              "Descartes' bound covers the forced roots",
              lambda: signtools.descartes_bound(w), ">=")


def run_vandermonde(report, opts):
    rng = random.Random(opts["seed"])
    count = opts["count"]

    def det_suite():
        good = 0
        for _ in range(count):
            v = signtools.random_gvd(rng, rng.randint(1, 6))
            good += signtools.det_exact(v) > 0
        return good

    def inverse_suite():
        good = 0
        for _ in range(count):
            k = rng.randint(1, 6)
            v = signtools.random_gvd(rng, k, zero_first=True)
            good += signtools.inverse_sign_pattern(v) == signtools.expected_inverse_pattern(k, True)
        return good

    _case(report, {"instances": count, "points": "positive"}, count,
          "generalized Vandermonde determinants with positive points are positive", det_suite)
    _case(report, {"instances": count, "points": "0 first"}, count,
          "inverse signs are (-1)^(i+j) with first row (+,0,...,0)", inverse_suite)


def _circuit_min(report, target, opts):
    res = circuits.min_spr_B(target, _config(opts))
    _tally(report, res.stats)
    return res.k


def run_size_parity(report, opts):
    for n, want in zip((1, 2, 3), (2, 3, 5)):
        if n not in opts["n"]:
            continue
        _case(report, {"n": n, "measure": "min size"}, want,
              "exhaustive minimum over the AND-gate basis",
              lambda: _circuit_min(report, _parity(n, 0, 1), opts))
        last = report.cases[-1]
        _case(report, {"n": n, "measure": "vs (3/2)^n"}, (3 / 2) ** n,
              "Thr-of-AND circuits for parity have size above (3/2)^n",
              lambda: last.computed, ">")


def run_size_ip(report, opts):
    for pairs in (1, 2):
        _case(report, {"pairs": pairs}, 2 ** pairs,
              "Thr-of-AND circuits for inner product need 2^n gates, and 2^n suffice",
              lambda: _circuit_min(report, TargetFunction.inner_product(pairs), opts))


def run_circuit_constructions(report, opts):
    def parity_gates(n):
        c = circuits.construct_parity_5_circuit(n)
        return c.size if circuits.circuit_verify(c, _parity(n, 0, 1)).passed else None

    def ip_gates(pairs):
        c = circuits.construct_ip_circuit(pairs)
        return c.size if circuits.circuit_verify(c, TargetFunction.inner_product(pairs)).passed else None

    for n in (3, 6):
        _case(report, {"family": "parity", "n": n}, 5 ** (n // 3),
              "block product of the 5-gate parity circuit", lambda: parity_gates(n))
    for pairs in (2, 4):
        _case(report, {"family": "ip", "pairs": pairs}, 2 ** pairs,
              "block product of the 4-gate inner product circuit", lambda: ip_gates(pairs))


def constructor_matrix(max_n: int = 4, max_m: int = 4) -> dict[str, tuple[int, int]]:
    """(passing, total) per constructor family over its domain."""
    out = {}

    def tally(name, ok):
        p, t = out.get(name, (0, 0))
        out[name] = (p + bool(ok), t + 1)

    for n in range(1, max_n + 1):
        p = reps.construct_hypercube_parity(n)
        tally("hypercube", reps.verify(p, _parity(n, 0, 1), Kind.SIGN).passed and len(p) == 2 ** n)
        p = reps.construct_geometric_parity(n)
        tally("geometric", reps.verify(p, _parity(n, 1, 2), Kind.SIGN).passed and len(p) == n + 1)
        for m in range(2, max_m + 1):
            p = reps.construct_mary_parity(n, m)
            ok = reps.verify(p, _parity(n, 0, m - 1), Kind.SIGN).passed
            tally("mary", ok and len(p) == m ** n and measures(p).deg_i == (m - 1,) * n)
            p = reps.construct_weak_low_sparsity(n, m)
            ok = reps.verify(p, _parity(n, 0, m - 1), Kind.WEAK).passed
            tally("weak-sparse", ok and len(p) == (m - 1) ** n and max(measures(p).deg_i) <= m - 1)
            for lo in (0, 1):
                grid = Grid.range(n, lo, lo + m - 1)
                p = reps.construct_weak_product(grid)
                s = reps.product_values(grid)
                ok = reps.verify(p, TargetFunction.parity(grid), Kind.WEAK).passed
                expected_terms = len(s) - (0 in s)
                tally("weak-product", ok and len(p) == expected_terms and len(s) <= comb(n + m - 1, n))
    return out


def run_constructors(report, opts):
    matrix = constructor_matrix(opts["max_n"], opts["max_m"])
    for name, (passed, total) in matrix.items():
        report.cases.append(Case({"family": name, "max_n": opts["max_n"], "max_m": opts["max_m"]}, passed, total,
                                 "==", "every construction verifies with its advertised size"))


PRESETS: dict[str, ExperimentPreset] = {
    p.name: p for p in [
        ExperimentPreset("dsp2", "hypercube sparsity 2^n", run_dsp2, {"n": [1, 2, 3]}),
        ExperimentPreset("dsp2-degree", "hypercube degree n", run_dsp2_degree, {"n": [1, 2, 3]}),
        ExperimentPreset("sign2", "coefficient sign census", run_sign2, {"n": [1, 2, 3]}),
        ExperimentPreset("dspm", "m-ary sparsity m^n", run_dspm, {"n": [1, 2]}),
        ExperimentPreset("degree-m", "m-ary degree n(m-1)", run_degree_m, {}),
        ExperimentPreset("general-lower", "unrestricted-degree bound n(m-1)+1", run_general_lower, {"n": [1, 2, 3]}),
        ExperimentPreset("weak", "weak representation sparsity and degree", run_weak, {"n": [1, 2, 3]}),
        ExperimentPreset("weak-roots", "univariate weak roots", run_weak_roots, {}),
        ExperimentPreset("vandermonde", "generalized Vandermonde signs", run_vandermonde, {"count": 1000, "seed": 0}),
        ExperimentPreset("size-parity", "Thr-of-AND size for parity", run_size_parity, {"n": [1, 2, 3]}),
        ExperimentPreset("size-ip", "Thr-of-AND size for inner product", run_size_ip, {}),
        ExperimentPreset("circuit-build", "explicit circuit constructions", run_circuit_constructions, {}),
        ExperimentPreset("constructors", "constructor verification matrix", run_constructors, {"max_n": 4, "max_m": 4}),
    ]
}


def run_preset(name: str, overrides: dict | None = None) -> RunReport:
    """Run a preset; ``overrides`` replace defaults (n ranges, seed, count, parallel, symmetry)."""
    if name not in PRESETS:
        raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
    preset = PRESETS[name]
    opts = {**preset.defaults, "parallel": 1, "symmetry": False}
    for key, value in (overrides or {}).items():
        if value is not None:
            opts[key] = value
    report = RunReport(preset.name, preset.criterion)
    start = time.perf_counter()
    preset.run(report, opts)
    report.wall_time = time.perf_counter() - start
    return report
