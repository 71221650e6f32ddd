import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncloop.algebra import algebra_from_structure_constants, builtin, free_truncated_algebra
from ncloop.errors import BadParams, ParseError, UnknownSymbol
from ncloop.series import random_series, series_from_terms
from ncloop.su import GradedElt
from ncloop.textio import (
    algebra_from_json,
    algebra_to_json,
    element_from_json,
    element_to_json,
    graded_from_json,
    graded_to_json,
    load_algebra,
    parse_series,
    rat,
    series_from_json,
    series_to_json,
)

F = free_truncated_algebra([("a", 1), ("b", 1)], 4, name="ab4")


def test_parse_basic_expression():
    s = parse_series("t + a*t^2 - (1/2)*a*b*t^3 + 3*b*t^2", F)
    assert s.truncation == 2
    assert s == series_from_terms(F, 2, {1: {"a": 1, "b": 3}, 2: {"a*b": Fraction(-1, 2)}})


def test_parse_negative_scalar_and_truncation():
    s = parse_series("t + (-3/4)*a*t^2 + b*b*b*t^4", F, truncation=2)
    assert s[1] == F.gen("a").scale(Fraction(-3, 4))
    assert not s[2]


def test_parse_unit_terms_need_unit():
    E = builtin("split_null", n=2)
    s = parse_series("t + 2*t^2 + e*t^2", E)
    assert s[1] == E.one().scale(2) + E.gen("e")
    with pytest.raises(ParseError):
        parse_series("t + 2*t^2", F)


@pytest.mark.parametrize("text,col", [
    ("t + a*t^1", 9),
    ("t + a*t^2 * b", 11),
    ("t + 3 a*t^2", 7),
    ("t + a*t^(2)", 9),
    ("t + a*t^2 $", 11),
    ("t ^ 2", 3),
])
def test_parse_errors_carry_position(text, col):
    with pytest.raises(ParseError) as info:
        parse_series(text, F)
    assert info.value.details["col"] == col


def test_parse_error_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_series("t\n + a*t^2\n + b*t^1", F)
    assert info.value.details["line"] == 3


def test_unknown_symbol():
    with pytest.raises(UnknownSymbol) as info:
        parse_series("t + c*t^2", F)
    assert info.value.details["col"] == 5


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 4))
def test_print_parse_round_trip(seed, T):
    s = random_series(F, T, random.Random(seed), zero_prob=0.3)
    assert parse_series(str(s), F, T) == s


def test_round_trip_on_builtin():
    U = builtin("upper_triangular", n=3)
    s = random_series(U, 3, random.Random(2), graded_mode=True)
    assert parse_series(str(s), U, 3, True) == s


@pytest.mark.parametrize("alg", [
    F,
    builtin("split_null", n=2),
    builtin("laurent_window", a=-2, b=2),
    algebra_from_structure_constants(["x", "y"], {("x", "x"): {"y": Fraction(1, 2)}}, grading={"x": 1, "y": 2}),
], ids=lambda a: a.name or "table")
def test_algebra_json_round_trip(alg):
    doc = json.loads(json.dumps(algebra_to_json(alg)))
    back = algebra_from_json(doc)
    assert len(back.basis_keys()) == len(alg.basis_keys())
    for ka in alg.basis_keys():
        for kb in alg.basis_keys():
            x, y = alg.basis(ka) * alg.basis(kb), back.basis(ka) * back.basis(kb)
            assert element_to_json(x) == element_to_json(y)


def test_structure_table_with_indices(tmp_path):
    doc = {
        "kind": "structure_constants",
        "basis": ["e", "v"],
        "table": [[0, 0, {"0": 1}], [1, 0, {"1": 1}]],
    }
    path = tmp_path / "ev.json"
    path.write_text(json.dumps(doc))
    A = load_algebra(str(path))
    assert A.gen("v") * A.gen("e") == A.gen("v")
    with pytest.raises(BadParams):
        algebra_from_json({"kind": "mystery"})


def test_series_json_round_trip():
    s = random_series(F, 4, random.Random(9))
    doc = json.loads(json.dumps(series_to_json(s)))
    assert series_from_json(doc, F) == s
    text_only = {"algebra": doc["algebra"], "truncation": 4, "text": doc["text"]}
    assert series_from_json(text_only, F) == s


def test_element_and_graded_json():
    x = F.element({"a*b": 2, "b": Fraction(-1, 3)})
    assert element_from_json(element_to_json(x), F) == x
    assert element_from_json({"a*b": "2", "b": "-1/3"}, F) == x
    g = GradedElt(2, F.gen("a") * F.gen("b"))
    assert graded_from_json(graded_to_json(g), F) == g
    with pytest.raises(UnknownSymbol):
        element_from_json({"z": 1}, F)


def test_rat_refuses_floats():
    assert rat("2/4") == Fraction(1, 2)
    with pytest.raises(BadParams):
        rat(0.5)
    with pytest.raises(BadParams):
        rat(True)
