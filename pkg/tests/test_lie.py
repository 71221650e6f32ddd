import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncloop.algebra import algebra_from_structure_constants, builtin
from ncloop.errors import AlgebraMismatch, BadParams
from ncloop.lie import (
    CoeffPoly,
    antisymmetry_defect,
    check_st_identity,
    cyclic_defect,
    exchange_defect,
    graded_generators,
    jacobi_check,
    sabinin_axioms_check,
    spanning_set,
    standard_identity,
    standard_identity_dp,
    table_bracket,
    window_admissible,
    wronskian_bracket,
)
from ncloop.series import random_element
from ncloop.su import GradedElt, sabinin_binary

K = algebra_from_structure_constants(["e"], {("e", "e"): {"e": 1}}, name="scalars")
EV = builtin("ev")


def t(k, alg=K, label="e"):
    return CoeffPoly.monomial(alg.basis(alg.key_from_label(label)), k)


def random_poly(alg, rng, deg=3):
    return CoeffPoly(alg, {k: random_element(alg, rng, max_terms=2) for k in range(deg + 1)})


def test_scalar_wronskian_is_witt():
    for i, j in product(range(5), repeat=2):
        want = t(i + j - 1).scale(j - i) if i + j else CoeffPoly(K)
        assert wronskian_bracket(t(i), t(j)) == want


def test_ev_bracket_example():
    assert wronskian_bracket(t(1, EV, "e"), t(1, EV, "v")) == t(1, EV, "v")


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9), st.sampled_from([EV, builtin("split_null", n=2), builtin("matrix", n=2)]))
def test_wronskian_antisymmetric(seed, alg):
    rng = random.Random(seed)
    f, g = random_poly(alg, rng), random_poly(alg, rng)
    assert not wronskian_bracket(f, g) + wronskian_bracket(g, f)


def test_coeff_poly_basics():
    f = t(2) + t(0).scale(3)
    assert f.max_degree == 2
    assert f.derivative() == t(1).scale(2)
    assert not (f - f)
    assert str(t(2)) == "(e)*t^2"
    with pytest.raises(BadParams):
        CoeffPoly(K, {-1: K.one()})
    with pytest.raises(AlgebraMismatch):
        t(1) + t(1, EV, "e")


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 4))
def test_dp_matches_definition(seed, n):
    rng = random.Random(seed)
    xs = [random_poly(EV, rng, 2) for _ in range(n)]
    z = random_poly(EV, rng, 2)
    assert standard_identity(wronskian_bracket, xs, z) == standard_identity_dp(wronskian_bracket, xs, z)


def test_standard_identity_alternates():
    rng = random.Random(7)
    x1, x2, x3, z = (random_poly(EV, rng, 2) for _ in range(4))
    s = standard_identity(wronskian_bracket, [x1, x2, x3], z)
    assert standard_identity(wronskian_bracket, [x2, x1, x3], z) == -s
    assert not standard_identity(wronskian_bracket, [x1, x1, x3], z)
    with pytest.raises(BadParams):
        standard_identity(wronskian_bracket, [], z)
    with pytest.raises(BadParams):
        standard_identity(wronskian_bracket, [x1] * 6, z)


def test_st3_on_witt_is_a_double_bracket():
    # St_3(x1, x2, z) = [x1,[x2,z]] - [x2,[x1,z]] = [[x1,x2],z] by Jacobi
    for a, b, c in product(range(4), repeat=3):
        x1, x2, z = t(a), t(b), t(c)
        assert standard_identity(wronskian_bracket, [x1, x2], z) == wronskian_bracket(wronskian_bracket(x1, x2), z)
    assert check_st_identity(K, 3, 3)["status"] == "FAIL"


def test_spanning_set_size():
    assert len(spanning_set(EV, 3)) == 8


def test_ev_st5_fails_st6_passes():
    rep5 = check_st_identity(EV, 5, 3)
    assert rep5["status"] == "FAIL" and len(rep5["witness"]) == 5
    rep6 = check_st_identity(EV, 6, 3)
    assert rep6["status"] == "PASS" and rep6["arithmetic"] == "int64"


def test_ut3_st5_passes():
    rep = check_st_identity(builtin("upper_triangular", n=3), 5, 3)
    assert rep["status"] == "PASS"


def test_commutative_coefficients_st5():
    assert check_st_identity(builtin("laurent_window", a=0, b=4), 5, 2)["status"] == "PASS"


def test_st_bounds():
    with pytest.raises(BadParams):
        check_st_identity(EV, 7, 1)
    with pytest.raises(BadParams):
        check_st_identity(EV, 1, 1)


def test_jacobi_on_wronskian_algebras():
    assert jacobi_check(wronskian_bracket, spanning_set(K, 4))["status"] == "PASS"
    assert jacobi_check(wronskian_bracket, spanning_set(EV, 2))["status"] == "PASS"


def test_jacobi_detects_corrupted_table():
    bad = algebra_from_structure_constants(
        ["x", "y", "z"],
        {("x", "y"): {"x": 1}, ("y", "x"): {"x": -1}, ("x", "z"): {"y": 1}, ("z", "x"): {"y": -1}},
        check_associativity=False,
    )
    rep = jacobi_check(table_bracket, [bad.basis(k) for k in bad.basis_keys()])
    assert rep["status"] == "FAIL" and rep["axiom"] == "jacobi"


def test_jacobi_on_laurent_window_binary():
    L = builtin("laurent_window", a=-3, b=3)
    gens = graded_generators(L)
    rep = jacobi_check(sabinin_binary, gens, window_admissible(-3, 3))
    assert rep["status"] == "PASS" and rep["triples_checked"] > 0


def test_axiom_defects_vanish_on_laurent_window():
    L = builtin("laurent_window", a=0, b=4)
    g = {d: GradedElt(d, L.gen(f"t{d}")) for d in range(5)}
    assert not antisymmetry_defect([g[1]], g[0], g[2])
    assert not exchange_defect([], g[1], g[0], 0, g[1], g[0])
    assert not cyclic_defect([], g[0], g[1], g[2])


def test_sabinin_axioms_on_builtins():
    rep = sabinin_axioms_check(builtin("laurent_window", a=0, b=4), max_arity=4)
    assert rep["status"] == "PASS"
    assert all(rep["counts"].values())
    rep = sabinin_axioms_check(builtin("split_null", n=2), max_arity=3, degrees=(0, 1))
    assert rep["status"] == "PASS"
    with pytest.raises(BadParams):
        sabinin_axioms_check(EV, max_arity=5)
