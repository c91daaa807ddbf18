"""Command-line entry point: ``signrep <subcommand> ...``.

Structured output is JSON with a stable key order.  Exit status is 0 when the
command's check passes, 1 when it fails and 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import circuits, representations as reps, search, signtools
from .poly import Grid, SparsePoly, format_poly, format_rational, parse_poly, poly_from_records, poly_to_records
from .presets import PRESETS, run_preset
from .report import emit
from .representations import CapExceeded, Kind, TargetFunction

FAMILIES = ("hypercube", "mary", "geometric", "weak-sparse", "weak-product")


class UsageError(Exception):
    pass


def parse_grid_points(text: str) -> tuple[int, ...]:
    """``a..b`` or a comma-separated list such as ``0,1,3``."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse grid {text!r}; use a..b or a,b,c") from None


def _plain(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, SparsePoly):
        return format_poly(v)
    if isinstance(v, dict):
        return {(",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _dump(obj, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_plain(obj), indent=2) + "\n"
    lines = []
    for key, value in _plain(obj).items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def _read_poly(arg: str, n: int | None) -> SparsePoly:
    path = Path(arg)
    text = arg
    if len(arg) < 4096 and path.is_file():
        text = path.read_text()
        if text.lstrip().startswith("["):
            return poly_from_records(json.loads(text), n)
    return parse_poly(text.strip(), n)


def _target(args, n: int | None = None) -> TargetFunction:
    name = args.target
    if name == "ip":
        if args.n is None:
            raise UsageError("--n (number of pairs) is required for the ip target")
        return TargetFunction.inner_product(args.n)
    n = args.n if args.n is not None else n
    if n is None:
        raise UsageError("--n is required")
    grid = Grid(n, parse_grid_points(args.grid or "0..1"))
    if name == "parity":
        return TargetFunction.parity(grid)
    if name.startswith("table:"):
        return reps.load_table(name[len("table:"):], grid)
    raise UsageError(f"unknown target {name!r}; use parity, ip or table:<file>")


def _config(args, **kw) -> search.SearchConfig:
    fields = {"parallel": args.parallel, "symmetry": args.symmetry}
    if getattr(args, "degcap", None) is not None:
        fields["degree_cap"] = args.degcap
    if getattr(args, "max_support", None) is not None:
        fields["max_support"] = args.max_support
    fields.update(kw)
    return search.SearchConfig(**fields)


def _write_certificates(path: str | None, payload) -> None:
    if path:
        Path(path).write_text(json.dumps(_plain(payload), indent=2) + "\n")


def _certificate_dict(cert: search.Certificate) -> dict:
    out = {"status": cert.status}
    if cert.coefficients is not None:
        out["coefficients"] = [{"exponents": list(e), "coeff": format_rational(c)} for e, c in cert.coefficients.items()]
    if cert.dual_ray is not None:
        out["dual_ray"] = [format_rational(y) for y in cert.dual_ray]
    if cert.witness_point is not None:
        out["witness_point"] = list(cert.witness_point)
    return out


# subcommands

def cmd_verify(args) -> int:
    f = _target(args)
    p = _read_poly(args.poly, f.grid.n)
    report = reps.verify(p, f, args.kind)
    out = {"polynomial": format_poly(p), "target": f.describe(), **report.to_dict()}
    sys.stdout.write(_dump(out, args.format))
    return 0 if report.passed else 1


def cmd_construct(args) -> int:
    fam, n, m = args.family, args.n, args.m
    if n is None:
        raise UsageError("--n is required")
    alphas = [Fraction(a) for a in args.alphas.split(",")] if args.alphas else None
    if fam == "hypercube":
        p, grid, kind = reps.construct_hypercube_parity(n), Grid(n, (0, 1)), Kind.SIGN
    elif fam == "mary":
        if m is None:
            raise UsageError("--m is required for the mary family")
        p, grid, kind = reps.construct_mary_parity(n, m, alphas), Grid.range(n, 0, m - 1), Kind.SIGN
    elif fam == "geometric":
        p, grid, kind = reps.construct_geometric_parity(n, alphas), Grid(n, (1, 2)), Kind.SIGN
    elif fam == "weak-sparse":
        if m is None:
            raise UsageError("--m is required for the weak-sparse family")
        p, grid, kind = reps.construct_weak_low_sparsity(n, m), Grid.range(n, 0, m - 1), Kind.WEAK
    else:
        if args.grid is None and m is None:
            raise UsageError("weak-product needs --grid or --m")
        points = parse_grid_points(args.grid) if args.grid else tuple(range(m))
        grid = Grid(n, points)
        p, kind = reps.construct_weak_product(grid), Kind.WEAK
    report = reps.verify(p, TargetFunction.parity(grid), kind)
    if args.format == "text":
        sys.stdout.write(format_poly(p) + "\n")
    else:
        out = {"family": fam, "grid": grid.describe(), "kind": kind.value, "polynomial": format_poly(p),
               "terms": poly_to_records(p), "sparsity": len(p), "verified": report.passed}
        sys.stdout.write(_dump(out, args.format))
    return 0 if report.passed else 1


def cmd_minsparsity(args) -> int:
    f = _target(args)
    config = _config(args, collect_certificates=bool(args.certificates))
    res = search.min_sparsity(f, args.kind, config)
    out = {"target": f.describe(), "kind": Kind(args.kind).value, **res.to_dict(timing=args.timing)}
    sys.stdout.write(_dump(out, args.format))
    _write_certificates(args.certificates, {"target": f.describe(), "kind": Kind(args.kind).value,
                                            "infeasible": res.certificates})
    return 0 if res.k is not None else 1


def cmd_mindegree(args) -> int:
    f = _target(args)
    res = search.min_degree(f, args.kind, _config(args))
    out = {"target": f.describe(), "kind": Kind(args.kind).value, "d": res.d, "degree_cap": res.degree_cap,
           "witness": format_poly(res.witness) if res.witness is not None else None, **res.stats.to_dict()}
    sys.stdout.write(_dump(out, args.format))
    _write_certificates(args.certificates, {"target": f.describe(), "infeasible_by_degree": res.infeasible_rays})
    return 0 if res.d is not None else 1


def cmd_census(args) -> int:
    if args.n is None:
        raise UsageError("--n is required")
    entries = search.coefficient_sign_census(args.n)
    rows = [{"S": list(e.subset), "expected": "+" if e.expected_sign > 0 else "-", "verdict": e.verdict}
            for e in entries]
    ok = all(r["verdict"] == r["expected"] for r in rows)
    sys.stdout.write(_dump({"n": args.n, "entries": rows, "pass": ok}, args.format))
    _write_certificates(args.certificates, [
        {"S": list(e.subset), "wrong_sign": _certificate_dict(e.wrong_sign), "right_sign": _certificate_dict(e.right_sign)}
        for e in entries])
    return 0 if ok else 1


def cmd_circuit(args) -> int:
    op = args.op
    if op == "minsize":
        f = _target(args)
        res = circuits.min_spr_B(f, _config(args))
        out = {"target": f.describe(), "size": res.k,
               "circuit": res.circuit.to_dict() if res.circuit else None, **res.stats.to_dict()}
        sys.stdout.write(_dump(out, args.format))
        return 0 if res.k is not None else 1
    if op in ("build-parity", "build-ip"):
        if args.n is None:
            raise UsageError("--n is required")
        if op == "build-parity":
            c, f = circuits.construct_parity_5_circuit(args.n), TargetFunction.parity(Grid(args.n, (0, 1)))
        else:
            c, f = circuits.construct_ip_circuit(args.n), TargetFunction.inner_product(args.n)
        ok = circuits.circuit_verify(c, f).passed
        if args.circuit:
            Path(args.circuit).write_text(json.dumps(c.to_dict(), indent=2) + "\n")
        sys.stdout.write(_dump({"target": f.describe(), "size": c.size, "verified": ok, "circuit": c.to_dict()},
                               args.format))
        return 0 if ok else 1
    if not args.circuit:
        raise UsageError("--circuit FILE is required for verify")
    c = circuits.load_circuit(args.circuit)
    if args.target == "ip":
        f = TargetFunction.inner_product(c.n // 2)
    else:
        args.grid = "0..1"
        f = _target(args, c.n)
    report = circuits.circuit_verify(c, f)
    sys.stdout.write(_dump({"target": f.describe(), "size": c.size, **report.to_dict()}, args.format))
    return 0 if report.passed else 1


def _fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse list {text!r}") from None


def cmd_vandermonde(args) -> int:
    if args.points is None or args.exponents is None:
        raise UsageError("--points and --exponents are required")
    v = signtools.gvd_build(_fractions(args.points), [int(d) for d in _fractions(args.exponents)])
    det = signtools.det_exact(v)
    pattern = signtools.inverse_sign_pattern(v)
    zero_first = v.points[0] == 0 and v.exponents[0] == 0
    expected = signtools.expected_inverse_pattern(v.k, zero_first)
    out = {
        "points": list(v.points), "exponents": list(v.exponents), "determinant": det,
        "inverse": signtools.inverse_exact(v), "sign_pattern": pattern,
        "determinant_positive": det > 0, "pattern_matches": pattern == expected,
    }
    sys.stdout.write(_dump(out, args.format))
    ok = pattern == expected and (det > 0 or v.points[0] == 0)
    return 0 if ok else 1


def cmd_descartes(args) -> int:
    if args.poly is None:
        raise UsageError("--poly is required")
    p = _read_poly(args.poly, 1)
    coeffs = signtools.univariate_coefficients(p)
    out = {"polynomial": format_poly(p), "coefficients": coeffs,
           "variations": signtools.sign_variations(coeffs), "bound": signtools.descartes_bound(p)}
    sys.stdout.write(_dump(out, args.format))
    return 0


def cmd_preset(args) -> int:
    if args.list or not args.name:
        for p in PRESETS.values():
            sys.stdout.write(f"{p.name:15} {p.criterion}\n")
        return 0
    names = list(PRESETS) if args.name == "all" else [args.name]
    if any(name not in PRESETS for name in names):
        raise UsageError(f"unknown preset {args.name!r}; see --list")
    overrides = {"parallel": args.parallel, "symmetry": args.symmetry, "seed": args.seed}
    if args.n is not None:
        overrides["n"] = list(range(1, args.n + 1))
    reports = [run_preset(name, overrides) for name in names]
    fmt = "table" if args.format == "text" else args.format
    sys.stdout.write(emit(reports, fmt, timing=args.timing))
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="dimension (number of pairs for the ip target)")
    common.add_argument("--m", type=int, help="grid size for {0..m-1}")
    common.add_argument("--grid", help="grid points A as a..b or a,b,c (default 0..1)")
    common.add_argument("--target", default="parity", help="parity, ip or table:<file>")
    common.add_argument("--kind", default="sign", choices=[k.value for k in Kind])
    common.add_argument("--degcap", type=int, help="per-variable degree cap D")
    common.add_argument("--max-support", type=int, help="stop searching beyond this support size")
    common.add_argument("--format", default="json", choices=["json", "csv", "table", "text"])
    common.add_argument("--parallel", type=int, default=1, help="worker processes")
    common.add_argument("--symmetry", action="store_true", help="prune supports up to variable permutations")
    common.add_argument("--seed", type=int, help="seed for randomized suites")
    common.add_argument("--timing", action="store_true", help="include wall-clock time in the output")
    common.add_argument("--certificates", metavar="FILE", help="write infeasibility certificates here")

    parser = argparse.ArgumentParser(prog="signrep", description="Exact sign representations of parity-like functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check a polynomial against a target")
    p.add_argument("--poly", required=True, help="polynomial text or a file (text or JSON records)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", parents=[common], help="print a constructed representation")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--alphas", help="comma-separated rationals")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("minsparsity", parents=[common], help="exhaustive minimum sparsity")
    p.set_defaults(func=cmd_minsparsity)

    p = sub.add_parser("mindegree", parents=[common], help="minimum total degree")
    p.set_defaults(func=cmd_mindegree)

    p = sub.add_parser("census", parents=[common], help="coefficient sign census on the hypercube")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("circuit", parents=[common], help="Thr-of-AND circuits")
    p.add_argument("--op", required=True, choices=["minsize", "build-parity", "build-ip", "verify"])
    p.add_argument("--circuit", metavar="FILE", help="circuit file to read (verify) or write (build-*)")
    p.set_defaults(func=cmd_circuit)

    p = sub.add_parser("vandermonde", parents=[common], help="generalized Vandermonde determinant and inverse")
    p.add_argument("--points", help="comma-separated increasing rationals")
    p.add_argument("--exponents", help="comma-separated increasing integers")
    p.set_defaults(func=cmd_vandermonde)

    p = sub.add_parser("descartes", parents=[common], help="sign variations of a univariate polynomial")
    p.add_argument("--poly", help="univariate polynomial text in x1")
    p.set_defaults(func=cmd_descartes)

    p = sub.add_parser("preset", parents=[common], help="run a named experiment")
    p.add_argument("name", nargs="?", help="preset name or 'all'")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_preset)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError, CapExceeded, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
