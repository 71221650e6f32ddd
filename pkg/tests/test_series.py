import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncloop.algebra import builtin, free_truncated_algebra
from ncloop.errors import (
    AlgebraMismatch,
    GradingViolation,
    SupportNeedsFreeAlgebra,
    TruncationMismatch,
)
from ncloop.series import (
    INFINITY,
    Series,
    associator_defect,
    bullet,
    compose,
    depth,
    left_divide,
    linearized_composition,
    random_series,
    right_divide,
    series_from_terms,
    single,
    star,
    star_left_divide,
    star_right_divide,
    support,
    unit,
)

FREE = free_truncated_algebra([("a", 1), ("b", 1)], 5, name="free_ab5")
WORDS = list(FREE.basis_keys())


# -- an independent oracle: the composition sum over plain word dictionaries ---------


def _as_words(x):
    alg = x.algebra
    return {tuple(alg.generators[g][0] for g in k): c for k, c in x.terms.items()}


def _wmul(p, q, cap):
    out = {}
    for u, c in p.items():
        for v, d in q.items():
            w = u + v
            if len(w) <= cap:
                out[w] = out.get(w, 0) + c * d
    return {w: c for w, c in out.items() if c}


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def oracle_compose(f, g, cap):
    """gamma_k = sum_m alpha_m sum_{J} beta_J, J a composition of k-m into m+1 parts >= 0."""
    T = f.truncation
    alpha = [{(): Fraction(1)}] + [_as_words(x) for x in f.coeffs]
    beta = [{(): Fraction(1)}] + [_as_words(x) for x in g.coeffs]
    out = []
    for k in range(1, T + 1):
        acc = {}
        for m in range(0, k + 1):
            for J in _compositions(k - m, m + 1):
                term = dict(alpha[m])
                for j in J:
                    term = _wmul(term, beta[j], cap)
                    if not term:
                        break
                for w, c in term.items():
                    acc[w] = acc.get(w, 0) + c
        out.append({w: c for w, c in acc.items() if c})
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 5))
def test_compose_matches_composition_enumeration(seed, T):
    rng = random.Random(seed)
    f = random_series(FREE, T, rng, zero_prob=0.3)
    g = random_series(FREE, T, rng, zero_prob=0.3)
    got = [_as_words(x) for x in compose(f, g).coeffs]
    assert got == oracle_compose(f, g, FREE.max_word_degree)


def test_compose_small_example():
    F = free_truncated_algebra([("a1", 1), ("a2", 2), ("b1", 1)], 3)
    f = series_from_terms(F, 3, {1: {"a1": 1}, 2: {"a2": 1}})
    g = series_from_terms(F, 3, {1: {"b1": 1}})
    want = series_from_terms(
        F, 3, {1: {"a1": 1, "b1": 1}, 2: {"a2": 1, "a1*b1": 2}, 3: {"a1*b1*b1": 1, "a2*b1": 3}}
    )
    assert compose(f, g) == want


def test_units():
    rng = random.Random(1)
    f = random_series(FREE, 5, rng)
    one = unit(FREE, 5)
    assert compose(one, f) == f and compose(f, one) == f
    assert star(one, f) == f and star(f, one) == f
    assert depth(one) == INFINITY


def test_divisions_examples():
    F = free_truncated_algebra([("a1", 1)], 4)
    a = single(F, 4, 1, F.gen("a1"))
    inv = left_divide(a, unit(F, 4))
    assert inv[1] == -F.gen("a1")
    assert inv[2] == (F.gen("a1") * F.gen("a1")).scale(2)
    b = single(F, 4, 1, F.gen("a1"))
    assert right_divide(unit(F, 4), b)[1] == -F.gen("a1")
    assert right_divide(b, b) == unit(F, 4)
    assert left_divide(b, b) == unit(F, 4)


def test_star_example():
    F = free_truncated_algebra([("a1", 1), ("b2", 2)], 3)
    got = star(single(F, 3, 1, F.gen("a1")), single(F, 3, 2, F.gen("b2")))
    want = series_from_terms(F, 3, {1: {"a1": 1}, 2: {"b2": 1}, 3: {"a1*b2": 2}})
    assert got == want


def _series_pair(draw_seed, T, alg=FREE, graded=False):
    rng = random.Random(draw_seed)
    return (random_series(alg, T, rng, graded_mode=graded, zero_prob=0.3),
            random_series(alg, T, rng, graded_mode=graded, zero_prob=0.3))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 6), st.sampled_from(["compose", "star"]))
def test_loop_axioms(seed, T, product):
    F = free_truncated_algebra([("a", 1), ("b", 2)], 6)
    x, y = _series_pair(seed, T, F, graded=True)
    mul, ldiv, rdiv = {
        "compose": (compose, left_divide, right_divide),
        "star": (star, star_left_divide, star_right_divide),
    }[product]
    one = unit(F, T, True)
    assert ldiv(x, mul(x, y)) == y
    assert mul(x, ldiv(x, y)) == y
    assert rdiv(mul(x, y), y) == x
    assert mul(rdiv(x, y), y) == x
    assert ldiv(x, x) == one == rdiv(y, y)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_unitriangularity(seed):
    x, y = _series_pair(seed, 5)
    h = compose(x, y)
    for k in range(1, 6):
        # changing only the degree-k coefficients shifts gamma_k by exactly that change
        bumped = x.with_coeffs([c if i != k else c + FREE.gen("a") for i, c in enumerate(x.coeffs, 1)])
        diff = [p - q for p, q in zip(compose(bumped, y).coeffs, h.coeffs)]
        assert diff[k - 1] == FREE.gen("a")
        assert all(not d for d in diff[: k - 1])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_bullet_is_compose_on_non_unit_parts(seed):
    a, b = _series_pair(seed, 5)
    assert bullet(a, b) == compose(a, b)
    zero = unit(FREE, 5)
    assert bullet(zero, b) == b and bullet(a, zero) == a


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 9))
def test_linearized_composition(seed):
    a, b = _series_pair(seed, 5)
    lin = linearized_composition(a, b)
    # a * b minus a's own coefficients is the part linear in b
    assert list(lin.coeffs) == [p - q for p, q in zip(star(a, b).coeffs, a.coeffs)]
    assert linearized_composition(unit(FREE, 5), b) == b
    assert linearized_composition(a, unit(FREE, 5)) == unit(FREE, 5)


def test_depth_and_support():
    F = free_truncated_algebra([("alpha", 1), ("beta", 2)], 5)
    w = series_from_terms(F, 5, {3: {"alpha": 1}, 5: {"alpha*beta": 1}})
    assert depth(w) == 3
    assert support(single(F, 5, 3, F.gen("alpha") * F.gen("beta"))) == {"alpha", "beta"}
    with pytest.raises(SupportNeedsFreeAlgebra):
        support(unit(builtin("ev"), 3))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 9), st.integers(1, 3), st.integers(1, 3))
def test_depth_of_compose(seed, d1, d2):
    rng = random.Random(seed)
    f = random_series(FREE, 5, rng, depth=d1)
    g = random_series(FREE, 5, rng, depth=d2)
    assert depth(compose(f, g)) >= min(depth(f), depth(g))


def test_associator_defect_examples():
    F = free_truncated_algebra([("a", 1), ("b", 1), ("c", 1)], 3)
    a, b, c = (single(F, 3, 1, F.gen(n), True) for n in "abc")
    d = associator_defect(a, b, c)
    assert d[3] == F.element({"a*b*c": 1, "a*c*b": -1})
    assert not d[1] and not d[2]


@pytest.mark.parametrize("i,j,k", [(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 1, 2), (3, 1, 1)])
def test_associator_defect_stratum(i, j, k):
    total = i + j + k
    F = free_truncated_algebra([("x", i), ("y", j), ("z", k)], total)
    a, b, c = single(F, total, i, F.gen("x")), single(F, total, j, F.gen("y")), single(F, total, k, F.gen("z"))
    lead = associator_defect(a, b, c)[total]
    x, y, z = F.gen("x"), F.gen("y"), F.gen("z")
    multilinear = F.element({w: lead.coefficient(w) for w in ("x*y*z", "x*z*y", "y*x*z", "y*z*x", "z*x*y", "z*y*x")})
    assert multilinear == (x * (y * z - z * y)).scale(comb(i + 1, 2))


def test_group_over_upper_triangular():
    U = builtin("upper_triangular", n=3)
    rng = random.Random(5)
    for _ in range(50):
        triple = [random_series(U, 4, rng, graded_mode=True) for _ in range(3)]
        assert associator_defect(*triple).is_unit()


def test_mismatch_errors():
    with pytest.raises(TruncationMismatch):
        compose(unit(FREE, 3), unit(FREE, 4))
    with pytest.raises(AlgebraMismatch):
        compose(unit(FREE, 3), unit(builtin("ev"), 3))


def test_graded_mode_rejects_inhomogeneous():
    U = builtin("upper_triangular", n=3)
    with pytest.raises(GradingViolation):
        Series(U, 3, {1: U.gen("E13")}, graded_mode=True)


def test_printing():
    F = free_truncated_algebra([("a", 1), ("b", 1)], 3)
    s = series_from_terms(F, 2, {1: {"a": 1}, 2: {"a*b": Fraction(1, 2), "b": -3}})
    assert str(s) == "t + a*t^2 - 3*b*t^3 + (1/2)*a*b*t^3"
