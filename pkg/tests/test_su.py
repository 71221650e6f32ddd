from fractions import Fraction
from itertools import permutations, product
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncloop.algebra import builtin, free_truncated_algebra
from ncloop.errors import BadArity, EmptyArgs, EmptyI, GradingViolation, KTooLarge
from ncloop.su import (
    GradedElt,
    deconcatenations,
    left_normed_star,
    multioperator_phi,
    n_coefficient,
    sabinin_binary,
    sabinin_closed,
    star_graded,
    su_bracket,
    su_p,
)


def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def free_args(xdegs, ydegs=(), zdeg=1):
    gens = [(f"x{i}", d) for i, d in enumerate(xdegs)] + [(f"y{i}", d) for i, d in enumerate(ydegs)]
    gens.append(("z", zdeg))
    F = free_truncated_algebra(gens, sum(d for _, d in gens))
    xs = [GradedElt(d, F.gen(f"x{i}")) for i, d in enumerate(xdegs)]
    ys = [GradedElt(d, F.gen(f"y{i}")) for i, d in enumerate(ydegs)]
    return F, xs, ys, GradedElt(zdeg, F.gen("z"))


@pytest.mark.parametrize("m,k", [(m, k) for m in range(1, 6) for k in range(1, m + 1)])
def test_deconcatenation_count(m, k):
    assert len(deconcatenations(m, k)) == factorial(k) * stirling2(m, k)


def test_deconcatenation_errors():
    with pytest.raises(KTooLarge):
        deconcatenations(2, 3)


def test_n_coefficient():
    assert n_coefficient([]) == 1
    assert n_coefficient([2]) == 3
    assert n_coefficient([1, 2, 3]) == 2 * 4 * 7


def test_star_graded_and_unit():
    F, (a, b), _, _ = free_args((1, 2))
    assert star_graded(a, b).value == (a.value * b.value).scale(2)
    assert star_graded(b, a).value == (b.value * a.value).scale(3)
    assert star_graded(None, a) is a and star_graded(a, None) is a
    assert left_normed_star([]) is None


def test_graded_elt_checks_homogeneity():
    U = builtin("upper_triangular", n=3)
    with pytest.raises(GradingViolation):
        GradedElt(1, U.gen("E13"))
    GradedElt(7, builtin("ev").gen("e"))  # ungraded algebras take any degree


def test_defining_formula_for_small_cases():
    # (a*b)*c - a*(b*c) = p(a; b; c) when I = (a), J = (b): no lower terms contribute
    F, (a,), (b,), c = free_args((1,), (2,), 1)
    lhs = star_graded(star_graded(a, b), c) - star_graded(a, star_graded(b, c))
    rhs = su_p([a], [b], c) + star_graded(a, su_p([], [b], c)) + star_graded(b, su_p([a], [], c))
    assert lhs == rhs


def test_p_with_one_empty_group():
    F, (a,), _, c = free_args((2,))
    # (a * c) - (a * c) = 0: p(a; ; c) vanishes since * is bilinear with a two-sided formal unit
    assert not su_p([a], [], c)


@pytest.mark.parametrize("I", [I for n in range(1, 4) for I in product(range(1, 4), repeat=n)])
@pytest.mark.parametrize("db,dc", [(1, 1), (2, 1)])
def test_recursion_matches_closed_form(I, db, dc):
    gens = [(f"x{i}", d) for i, d in enumerate(I)] + [("b", db), ("c", dc)]
    F = free_truncated_algebra(gens, sum(d for _, d in gens))
    xs = [GradedElt(d, F.gen(f"x{i}")) for i, d in enumerate(I)]
    b, c = GradedElt(db, F.gen("b")), GradedElt(dc, F.gen("c"))
    assert su_bracket(xs, b, c) == sabinin_closed(xs, b, c)


def test_small_displays():
    for i in range(1, 5):
        F2 = free_truncated_algebra([("a", i), ("b", 1), ("c", 2)], i + 3)
        a, b, c = GradedElt(i, F2.gen("a")), GradedElt(1, F2.gen("b")), GradedElt(2, F2.gen("c"))
        cb = c.value * b.value - b.value * c.value
        assert sabinin_closed([a], b, c).value == (a.value * cb).scale(i * (i + 1))


def test_binary_bracket():
    F, (a, b), _, _ = free_args((1, 2))
    assert sabinin_binary(a, b).value == (b.value * a.value).scale(3) - (a.value * b.value).scale(2)
    assert sabinin_binary(a, b) == -sabinin_binary(b, a)
    assert not sabinin_binary(a, a)


def test_laurent_binary_table():
    L = builtin("laurent_window", a=-3, b=3)
    for i, j in product(range(-3, 4), repeat=2):
        got = sabinin_binary(GradedElt(i, L.gen(f"t{i}" if i >= 0 else f"tm{-i}")),
                             GradedElt(j, L.gen(f"t{j}" if j >= 0 else f"tm{-j}")))
        if -3 <= i + j <= 3:
            k = i + j
            assert got.value == L.gen(f"t{k}" if k >= 0 else f"tm{-k}").scale(j - i)
        else:
            assert not got


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(1, 3), st.integers(1, 3))
def test_closed_form_antisymmetry(I, db, dc):
    gens = [(f"x{i}", d) for i, d in enumerate(I)] + [("b", db), ("c", dc)]
    F = free_truncated_algebra(gens, sum(d for _, d in gens))
    xs = [GradedElt(d, F.gen(f"x{i}")) for i, d in enumerate(I)]
    b, c = GradedElt(db, F.gen("b")), GradedElt(dc, F.gen("c"))
    assert sabinin_closed(xs, b, c) == -sabinin_closed(xs, c, b)


def test_empty_arguments():
    F, (a,), _, z = free_args((1,))
    with pytest.raises(EmptyArgs):
        su_p([], [], z)
    with pytest.raises(EmptyI):
        sabinin_closed([], a, z)
    with pytest.raises(EmptyI):
        su_bracket([], a, z)


def test_phi_symmetry_and_unfolding():
    F, (x,), (b, c), _ = free_args((1,), (1, 2))
    phi = multioperator_phi([x], [b, c])
    assert phi == multioperator_phi([x], [c, b])
    assert phi == (su_p([x], [b], c) + su_p([x], [c], b)).scale(Fraction(1, 2))
    assert multioperator_phi([x], [b, b]) == su_p([x], [b], b)
    with pytest.raises(BadArity):
        multioperator_phi([x], [b])


def test_phi_full_symmetry():
    F, (x1, x2), (y1, y2), _ = free_args((1, 2), (1, 1))
    ref = multioperator_phi([x1, x2], [y1, y2])
    for xs in permutations([x1, x2]):
        for ys in permutations([y1, y2]):
            assert multioperator_phi(list(xs), list(ys)) == ref


def test_split_null_brackets():
    for n in (2, 3):
        A = builtin("split_null", n=n)
        e = A.gen("e")
        x, y = A.gen("e"), A.gen("v0")
        for m in range(1, n + 2):
            xs = [GradedElt(-2, e)] + [GradedElt(-1, e)] * (m - 1)
            got = sabinin_closed(xs, GradedElt(0, x), GradedElt(0, y))
            em = A.one()
            for _ in range(m):
                em = em * e
            want = (em * (y * x - x * y)).scale((-1) ** (m + 1) * factorial(m + 1)) if m < n else A.zero()
            assert got.value == want
            assert got.degree == -m - 1
