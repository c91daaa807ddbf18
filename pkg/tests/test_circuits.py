import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from signrep.circuits import (
    AndGateTerm,
    ThrAndCircuit,
    circuit_eval,
    circuit_verify,
    construct_ip_circuit,
    construct_parity_5_circuit,
    enumerate_basis,
    gate_poly,
    load_circuit,
    min_spr_B,
    split_last_variable,
)
from signrep.poly import Grid, evaluate, format_poly
from signrep.representations import CapExceeded, Kind, TargetFunction, verify
from signrep.search import SearchConfig


def parity(n):
    return TargetFunction.parity(Grid(n, (0, 1)))


def test_gate_overlap_rejected():
    with pytest.raises(ValueError):
        AndGateTerm([0], [0])


def test_gate_poly_matches_values():
    g = AndGateTerm([0], [1, 2])
    assert format_poly(gate_poly(g, 3)) == "x1 - x1*x2 - x1*x3 + x1*x2*x3"
    for a in Grid(3, (0, 1)):
        assert evaluate(gate_poly(g, 3), a) == g.value(a)


def test_basis_size_and_order():
    basis = enumerate_basis(3)
    assert len(basis) == 27 and len(set(basis)) == 27
    assert basis[0] == AndGateTerm()
    with pytest.raises(CapExceeded):
        enumerate_basis(9)


def test_circuit_file_round_trip(tmp_path):
    c = construct_parity_5_circuit(3)
    path = tmp_path / "c.json"
    path.write_text(json.dumps(c.to_dict()))
    back = load_circuit(path)
    assert back == c
    assert c.to_dict()["gates"][1] == {"I": [1, 2, 3], "J": [], "w": "-2"}


def test_constructions():
    for n in (3, 6):
        c = construct_parity_5_circuit(n)
        assert c.size == 5 ** (n // 3) and circuit_verify(c, parity(n)).passed
    for pairs in (2, 4):
        c = construct_ip_circuit(pairs)
        assert c.size == 2 ** pairs and circuit_verify(c, TargetFunction.inner_product(pairs)).passed
    with pytest.raises(ValueError):
        construct_parity_5_circuit(4)


def test_eval_output_convention():
    c = ThrAndCircuit(1, [AndGateTerm(), AndGateTerm([0])], [1, -2])
    assert circuit_eval(c, (0,)) == 0 and circuit_eval(c, (1,)) == 1
    zero = ThrAndCircuit(1, [AndGateTerm([0])], [1])
    with pytest.raises(ValueError):
        circuit_eval(zero, (0,))


def test_min_spr_b_small():
    assert [min_spr_B(parity(n)).k for n in (1, 2)] == [2, 3]
    res = min_spr_B(TargetFunction.inner_product(1))
    assert res.k == 2 and circuit_verify(res.circuit, TargetFunction.inner_product(1)).passed


def test_min_spr_b_symmetry_and_parallel_agree():
    base = min_spr_B(parity(3))
    sym = min_spr_B(parity(3), SearchConfig(symmetry=True))
    par = min_spr_B(parity(3), SearchConfig(parallel=2))
    assert base.k == sym.k == par.k == 5
    assert base.circuit == par.circuit


@st.composite
def circuits(draw, n=3):
    basis = enumerate_basis(n)
    idx = draw(st.lists(st.integers(0, len(basis) - 1), min_size=1, max_size=6, unique=True))
    weights = draw(st.lists(st.integers(-4, 4).filter(bool), min_size=len(idx), max_size=len(idx)))
    return ThrAndCircuit(n, [basis[i] for i in idx], weights, draw(st.integers(-2, 2)))


@given(circuits())
@settings(max_examples=80, deadline=None)
def test_verify_iff_sign_representation(c):
    f = parity(3)
    direct = True
    for a in f.grid:
        v = c.evaluate(a)
        if v == 0 or int(v < 0) != f(a):
            direct = False
    assert circuit_verify(c, f).passed == direct == verify(c.polynomial(), f, Kind.SIGN).passed


@given(circuits(n=3), st.fractions(min_value=Fraction(1, 3), max_value=3))
@settings(max_examples=40, deadline=None)
def test_circuit_scale_invariance(c, s):
    scaled = ThrAndCircuit(c.n, c.gates, [w * s for w in c.weights], c.bias * s)
    assert circuit_verify(c, parity(3)).passed == circuit_verify(scaled, parity(3)).passed


@pytest.mark.parametrize("n", [3, 6])
def test_split_last_variable_decomposition(n):
    c = construct_parity_5_circuit(n)
    a, b, rest = split_last_variable(c)
    sub = parity(n - 1)
    assert verify(b + rest, sub, Kind.SIGN).passed
    assert verify(a + rest, sub.complement(), Kind.SIGN).passed
    assert verify(b - a, sub, Kind.SIGN).passed
