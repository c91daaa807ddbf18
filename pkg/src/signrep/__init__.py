"""Exact sign representations of parity and inner product over integer grids."""

from .circuits import AndGateTerm, ThrAndCircuit, circuit_eval, circuit_verify, min_spr_B
from .poly import Grid, SparsePoly, format_poly, grid_reduce, measures, parse_poly
from .representations import CapExceeded, Kind, TargetFunction, verify
from .search import SearchConfig, coefficient_sign_census, min_degree, min_sparsity

__all__ = [
    "AndGateTerm", "CapExceeded", "Grid", "Kind", "SearchConfig", "SparsePoly", "TargetFunction", "ThrAndCircuit",
    "circuit_eval", "circuit_verify", "coefficient_sign_census", "format_poly", "grid_reduce", "measures",
    "min_degree", "min_sparsity", "min_spr_B", "parse_poly", "verify",
]
