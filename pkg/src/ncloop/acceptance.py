"""The acceptance suite: every worked example and property, rerun exactly.

Each ``criterion_*`` function returns ``(passed, detail)``.  :func:`run_all`
times them and :func:`run_selftest` renders a table and a JSON report.
"""

import json
import random
import time
from fractions import Fraction
from itertools import product
from math import factorial

from .algebra import builtin, check_s_comm_ideal, free_truncated_algebra
from .lie import (
    CoeffPoly,
    check_st_identity,
    standard_identity,
    standard_identity_dp,
    wronskian_bracket,
)
from .loopcalc import (
    ASSOCIATOR,
    COMMUTATOR,
    DeviationExpr,
    check_group,
    commutator_bracket,
    filtration_bracket,
    klopsch_check,
    klopsch_witness,
)
from .series import (
    Series,
    associator_defect,
    compose,
    depth,
    left_divide,
    linearized_composition,
    random_series,
    right_divide,
    single,
    star,
    star_left_divide,
    star_right_divide,
    unit,
)
from .su import GradedElt, sabinin_binary, sabinin_closed, star_graded, su_bracket


def _free(gens, max_deg, name="free"):
    return free_truncated_algebra(gens, max_deg, name=name)


# 1 ---------------------------------------------------------------------------------


def criterion_1():
    F = _free([("alpha1", 1), ("beta1", 1), ("gamma1", 1)], 3)
    a, b, c = (single(F, 3, 1, F.gen(g), True) for g in ("alpha1", "beta1", "gamma1"))
    left = compose(compose(a, b), c)[3]
    right = compose(a, compose(b, c))[3]
    w = F.element
    want_left = w({"alpha1*gamma1*gamma1": 1, "alpha1*beta1*beta1": 1,
                   "beta1*gamma1*gamma1": 1, "alpha1*beta1*gamma1": 6})
    want_right = w({"alpha1*gamma1*gamma1": 1, "alpha1*beta1*beta1": 1,
                    "beta1*gamma1*gamma1": 1, "alpha1*beta1*gamma1": 5,
                    "alpha1*gamma1*beta1": 1})
    want_diff = w({"alpha1*beta1*gamma1": 1, "alpha1*gamma1*beta1": -1})
    ok = left == want_left and right == want_right and left - right == want_diff
    return ok, f"left: {left} | right: {right} | difference: {left - right}"


# 2 ---------------------------------------------------------------------------------


def criterion_2(samples=200, seed=2):
    U = builtin("upper_triangular", n=3)
    T = 4
    bad = []
    for ka in U.basis_keys():
        for kb in U.basis_keys():
            x, y = U.basis(ka), U.basis(kb)
            da, db = U.key_degree(ka), U.key_degree(kb)
            got = compose(single(U, T, da, x, True), single(U, T, db, y, True))
            coeffs = {}
            for k, v in ((da, x), (db, y), (da + db, (x * y).scale(2))):
                if k <= T:
                    coeffs[k] = coeffs[k] + v if k in coeffs else v
            if got != Series(U, T, coeffs, True):
                bad.append((str(x), str(y), str(got)))
    rng = random.Random(seed)
    nonunit = 0
    for _ in range(samples):
        triple = [random_series(U, T, rng, graded_mode=True) for _ in range(3)]
        if not associator_defect(*triple).is_unit():
            nonunit += 1
    return not bad and nonunit == 0, f"basis mismatches: {bad or 'none'}; nonunit associators: {nonunit}/{samples}"


# 3 ---------------------------------------------------------------------------------

BUILTINS_FOR_GROUP = [
    ("upper_triangular", {"n": 3}),
    ("split_null", {"n": 2}),
    ("split_null", {"n": 3}),
    ("ev", {}),
    ("laurent_window", {"a": 1, "b": 5}),
    ("matrix", {"n": 2}),
    ("free", {}),
]


def criterion_3(samples=200, seed=3):
    lines, ok = [], True
    for name, params in BUILTINS_FOR_GROUP:
        alg = builtin(name, **params)
        try:
            rep = check_group(alg, truncation=5, samples=samples, seed=seed)
        except Exception as exc:  # Inconsistent or anything unexpected
            ok = False
            lines.append(f"{alg.name}: {type(exc).__name__}")
            continue
        lines.append(f"{alg.name}: {rep['verdict']}")
    return ok, "; ".join(lines)


# 4 ---------------------------------------------------------------------------------


def criterion_4(pairs=100, seed=4):
    F = _free([("a", 1), ("b", 1)], 6)
    T = 6
    rng = random.Random(seed)
    for _ in range(pairs):
        a = random_series(F, T, rng, graded_mode=True, zero_prob=0.3)
        b = random_series(F, T, rng, graded_mode=True, zero_prob=0.3)
        got = linearized_composition(a, b)
        # sum over m >= 0 of (m+1) alpha_m b, with alpha_0 = 1
        want = []
        for k in range(1, T + 1):
            acc = b[k]
            for m in range(1, k):
                acc = acc + (a[m] * b[k - m]).scale(m + 1)
            want.append(acc)
        if list(got.coeffs) != want:
            return False, f"mismatch for a = {a}, b = {b}"
    return True, f"{pairs} random pairs, T = {T}"


# 5 ---------------------------------------------------------------------------------


def _free_graded_args(degrees, deg_b, deg_c):
    gens = [(f"x{i + 1}", d) for i, d in enumerate(degrees)] + [("b", deg_b), ("c", deg_c)]
    F = _free(gens, sum(degrees) + deg_b + deg_c)
    xs = [GradedElt(d, F.gen(f"x{i + 1}")) for i, d in enumerate(degrees)]
    return F, xs, GradedElt(deg_b, F.gen("b")), GradedElt(deg_c, F.gen("c"))


def criterion_5(tail_degrees=((1, 1), (1, 2), (2, 1))):
    count = 0
    for length in range(1, 4):
        for I in product(range(1, 4), repeat=length):
            for db, dc in tail_degrees:
                _, xs, b, c = _free_graded_args(I, db, dc)
                count += 1
                if su_bracket(xs, b, c) != sabinin_closed(xs, b, c):
                    return False, f"mismatch at I = {I}, deg b = {db}, deg c = {dc}"
    return True, f"{count} cases"


# 6 ---------------------------------------------------------------------------------


def criterion_6(top=4):
    for i, j in product(range(1, top + 1), repeat=2):
        F = _free([("a", i), ("b", j)], i + j)
        a, b = GradedElt(i, F.gen("a")), GradedElt(j, F.gen("b"))
        want = (F.gen("b") * F.gen("a")).scale(j + 1) - (F.gen("a") * F.gen("b")).scale(i + 1)
        if sabinin_binary(a, b).value != want:
            return False, f"<a,b> at degrees {i},{j}"
        if (star_graded(b, a) - star_graded(a, b)).value != want:
            return False, f"<a,b> from the *-product at degrees {i},{j}"
    for i, dy, dz in product(range(1, top + 1), range(1, 3), range(1, 3)):
        F, (ai,), b, c = _free_graded_args((i,), dy, dz)
        cb = c.value * b.value - b.value * c.value
        want = (ai.value * cb).scale(i * (i + 1))
        if sabinin_closed([ai], b, c).value != want or su_bracket([ai], b, c).value != want:
            return False, f"<a_i; b, c> at i = {i}"
    for i, j in product(range(1, top + 1), repeat=2):
        F, (ai, aj), b, c = _free_graded_args((i, j), 1, 1)
        cb = c.value * b.value - b.value * c.value
        want = (ai.value * aj.value * cb).scale(i * (i + 1) * (i + 2 * j + 1)) - (
            aj.value * ai.value * cb
        ).scale(i * (i + 1) * (j + 1))
        if sabinin_closed([ai, aj], b, c).value != want or su_bracket([ai, aj], b, c).value != want:
            return False, f"<a_i, a_j; b, c> at i, j = {i}, {j}"
    return True, f"binary, unary and two-index displays for degrees <= {top}"


# 7 ---------------------------------------------------------------------------------


def criterion_7(lo=-4, hi=4):
    L = builtin("laurent_window", a=lo, b=hi)

    def t(i):
        return GradedElt(i, L.basis(i - lo))

    for i, j in product(range(lo, hi + 1), repeat=2):
        want = L.basis(i + j - lo).scale(j - i) if lo <= i + j <= hi else L.zero()
        if sabinin_binary(t(i), t(j)).value != want:
            return False, f"<t^{i}, t^{j}>"
    checked = 0
    for length in (1, 2):
        for args in product(range(lo, hi + 1), repeat=length + 2):
            if not lo <= sum(args) <= hi or any(not lo <= s <= hi for s in _partial_sums(args)):
                continue
            checked += 1
            xs = [t(i) for i in args[:length]]
            if sabinin_closed(xs, t(args[-2]), t(args[-1])):
                return False, f"nonzero bracket at exponents {args}"
    return True, f"binary table on [{lo},{hi}]; {checked} inside-window brackets vanish"


def _partial_sums(args):
    out, run = [], 0
    for a in args:
        run += a
        out.append(run)
    return out


# 8 ---------------------------------------------------------------------------------


def criterion_8():
    for n in (2, 3):
        A = builtin("split_null", n=n)
        e = A.gen("e")
        basis = [A.basis(k) for k in A.basis_keys()]
        for m in range(1, n + 2):
            xs = [GradedElt(-2, e)] + [GradedElt(-1, e)] * (m - 1)
            em = A.one()
            for _ in range(m):
                em = em * e
            for x, y in product(basis, repeat=2):
                got = sabinin_closed(xs, GradedElt(0, x), GradedElt(0, y))
                if m < n:
                    want = (em * (y * x - x * y)).scale((-1) ** (m + 1) * factorial(m + 1))
                else:
                    want = A.zero()
                if got.value != want or got.degree != -m - 1:
                    return False, f"split_null({n}), m = {m}, x = {x}, y = {y}: {got}"
        acc = GradedElt(0, A.gen("v0"))
        for length in range(1, n + 1):
            acc = sabinin_binary(GradedElt(0, e), acc)
            if not acc:
                return False, f"iterated bracket of length {length} vanishes on split_null({n})"
    return True, "n = 2, 3: closed values, vanishing for m = n, n+1, iterated brackets nonzero"


# 9 ---------------------------------------------------------------------------------


def filtration_tuples(max_total=5, max_n=2):
    out = []
    for n in range(1, max_n + 1):
        for degs in product(range(1, max_total + 1), repeat=n + 2):
            if sum(degs) <= max_total:
                out.append((degs[:n], degs[n], degs[n + 1]))
    return out


def criterion_9(truncation=6, max_total=5):
    count = 0
    for dy, dz in product(range(1, max_total), repeat=2):
        if dy + dz > max_total:
            continue
        lead, y, z = commutator_bracket(dy, dz, truncation)
        count += 1
        # [y, z] leads with y*z - z*y, the binary bracket <z, y>
        if lead.value != sabinin_binary(z, y).value:
            return False, f"binary bracket at degrees {dy},{dz}: {lead}"
    for degs, dy, dz in filtration_tuples(max_total):
        fb = filtration_bracket(degs, dy, dz, truncation)
        count += 1
        closed = sabinin_closed(fb.xs, fb.y, fb.z)
        if fb.value.value != closed.value:
            return False, f"degrees {degs}; {dy}, {dz}: loop {fb.value} vs closed {closed}"
    return True, f"{count} degree tuples, T = {truncation}"


# 10 --------------------------------------------------------------------------------

WORD_SHAPES = [
    DeviationExpr(COMMUTATOR, ()),
    DeviationExpr(ASSOCIATOR, ()),
    DeviationExpr(COMMUTATOR, (1,)),
    DeviationExpr(ASSOCIATOR, (1,)),
    DeviationExpr(ASSOCIATOR, (2,)),
    DeviationExpr(ASSOCIATOR, (3,)),
]


def _lead_args(alg, T, rng, depths):
    return [random_series(alg, T, rng, depth=d, zero_prob=0.3) for d in depths]


def _replace(args, i, s):
    return args[:i] + [s] + args[i + 1:]


def criterion_10(instances=100, seed=10):
    M = builtin("matrix", n=2)
    rng = random.Random(seed)
    for word in WORD_SHAPES:
        r = word.arity
        for _ in range(instances):
            depths = [1] * r
            for j in rng.sample(range(r), rng.randint(0, r)):
                if sum(depths) < 6:
                    depths[j] = 2
            need = sum(depths)
            T = need + 1
            args = _lead_args(M, T, rng, depths)
            val = word(*args)
            if depth(val) < need:
                return False, f"{word}: depth {depth(val)} < {need}"
            i = rng.randrange(r)
            if not word(*_replace(args, i, unit(M, T))).is_unit():
                return False, f"{word}: not balanced in slot {i + 1}"
            # new tail, same leading coefficient: leading output unchanged
            tail = random_series(M, T, rng, depth=depths[i] + 1)
            moved = args[i].with_coeffs(
                [args[i][k] if k == depths[i] else tail[k] for k in range(1, T + 1)]
            )
            if word(*_replace(args, i, moved))[need] != val[need]:
                return False, f"{word}: leading term depends on a tail in slot {i + 1}"
            # additivity and homogeneity in the leading coefficient of slot i
            other = random_series(M, T, rng, depth=depths[i])
            lam = Fraction(rng.choice((-3, -1, 2, 5)), rng.choice((1, 2, 3)))
            d = depths[i]

            def lead_with(x):
                s = single(M, T, d, x)
                return word(*_replace(args, i, s))[need]

            ai, bi = args[i][d], other[d]
            if lead_with(ai.scale(lam) + bi) != lead_with(ai).scale(lam) + lead_with(bi):
                return False, f"{word}: leading term not linear in slot {i + 1}"
    return True, f"{len(WORD_SHAPES)} word shapes x {instances} instances over matrix(2)"


# 11 --------------------------------------------------------------------------------

EXPECTED_KLOPSCH_VALUE = (Fraction(1, 2), Fraction(-1, 3))


def criterion_11():
    got = klopsch_witness(1, 3, "ba")
    value_ok = got == EXPECTED_KLOPSCH_VALUE
    trips = []
    for n in (1, 2):
        for m in range(n + 2, 7):
            for target in ("ba", "ab"):
                if not klopsch_check(n, m, target):
                    trips.append((n, m, target))
    detail = (
        f"klopsch_witness(1,3,BA) = ({got[0]}, {got[1]}), expected value "
        f"({EXPECTED_KLOPSCH_VALUE[0]}, {EXPECTED_KLOPSCH_VALUE[1]}); "
        f"expected value reproduces the target: {klopsch_check(1, 3, 'ba', *EXPECTED_KLOPSCH_VALUE)}; "
        f"round-trip failures: {trips or 'none'}"
    )
    return value_ok and not trips, detail


# 12 --------------------------------------------------------------------------------


def criterion_12():
    E = builtin("ev")
    e, v = E.gen("e"), E.gen("v")

    def m(x, k):
        return CoeffPoly.monomial(x, k)

    xs, z = [m(e, 1), m(e, 2), m(v, 1), m(e, 0)], m(e, 0)
    val = standard_identity(wronskian_bracket, xs, z)
    want = CoeffPoly.monomial(v.scale(4), 0)
    ok = val == want and standard_identity_dp(wronskian_bracket, xs, z) == want
    return ok, f"St5(et, et^2, vt, e, e) = {val}"


# 13 --------------------------------------------------------------------------------


def criterion_13(degree_bound=3):
    ok, lines = True, []
    for name, params in (("ev", {}), ("split_null", {"n": 2})):
        alg = builtin(name, **params)
        pred = check_s_comm_ideal(alg)
        rep = check_st_identity(alg, 6, degree_bound)
        if not pred["s_brackets_zero"] or rep["status"] != "PASS":
            ok = False
        line = f"{alg.name}: S[S,S]=0 {pred['s_brackets_zero']}, St6 {rep['status']}"
        if rep["status"] != "PASS":
            line += f" at {rep['witness']} -> {rep['value']}"
        lines.append(line)
    return ok, "; ".join(lines)


# 14 --------------------------------------------------------------------------------


def criterion_14(degree_bound=3):
    U = builtin("upper_triangular", n=3)
    pred = check_s_comm_ideal(U)
    rep = check_st_identity(U, 5, degree_bound)
    ok = pred["s_brackets_zero"] and pred["brackets_s3_zero"] and rep["status"] == "PASS"
    return ok, (
        f"S[S,S]=0 {pred['s_brackets_zero']}, [S,S]S^3=0 {pred['brackets_s3_zero']}, "
        f"St5 {rep['status']} ({rep['tuples_checked']} tuples)"
    )


# 15 --------------------------------------------------------------------------------


def loop_axiom_failures(x, y, mul, ldiv, rdiv):
    """Names of the loop identities that fail for the pair (x, y)."""
    one = unit(x.algebra, x.truncation, x.graded_mode)
    bad = []
    if ldiv(x, mul(x, y)) != y:
        bad.append("x\\(xy) = y")
    if mul(x, ldiv(x, y)) != y:
        bad.append("x(x\\y) = y")
    if rdiv(mul(x, y), y) != x:
        bad.append("(xy)/y = x")
    if mul(rdiv(x, y), y) != x:
        bad.append("(x/y)y = x")
    if ldiv(x, x) != one or rdiv(y, y) != one:
        bad.append("x\\x = y/y = 1")
    return bad


def criterion_15(instances=500, seed=15, truncation=6):
    F = _free([("a", 1), ("b", 2)], truncation, name="free_ab")
    rng = random.Random(seed)
    ops = {
        "o": (compose, left_divide, right_divide),
        "*": (star, star_left_divide, star_right_divide),
    }
    for _ in range(instances):
        x = random_series(F, truncation, rng, graded_mode=True, zero_prob=0.4)
        y = random_series(F, truncation, rng, graded_mode=True, zero_prob=0.4)
        for name, (mul, ldiv, rdiv) in ops.items():
            bad = loop_axiom_failures(x, y, mul, ldiv, rdiv)
            if bad:
                return False, f"{name}: {bad} for x = {x}, y = {y}"
    return True, f"{instances} random pairs, T = {truncation}, both products"


# -- runner ----------------------------------------------------------------------------

CRITERIA = [
    (1, "composition degree-3 components and defect", criterion_1, 1.0),
    (2, "upper triangular coefficients give a group", criterion_2, 5.0),
    (3, "group predicate agrees with associator sampling", criterion_3, None),
    (4, "linearized composition is the *-product", criterion_4, None),
    (5, "p-operation recursion equals the closed form", criterion_5, 60.0),
    (6, "small bracket displays", criterion_6, None),
    (7, "Laurent window brackets", criterion_7, None),
    (8, "split-null brackets and nonnilpotence", criterion_8, None),
    (9, "filtration brackets equal the closed form", criterion_9, 300.0),
    (10, "balanced, superadditive, multilinear leading terms", criterion_10, None),
    (11, "normal subloop witness scalars", criterion_11, None),
    (12, "St5 on the ev algebra", criterion_12, 1.0),
    (13, "St6 on ev and split_null(2)", criterion_13, 120.0),
    (14, "St5 on upper triangular coefficients", criterion_14, None),
    (15, "loop axioms for both products", criterion_15, 30.0),
]


def run_criterion(number):
    num, name, fn, budget = CRITERIA[number - 1]
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - t0
    over = budget is not None and seconds > budget
    if over:
        detail += f" (took {seconds:.2f}s, budget {budget}s)"
    return {
        "criterion": num,
        "name": name,
        "passed": bool(passed) and not over,
        "detail": detail,
        "seconds": round(seconds, 3),
        "budget": budget,
    }


def run_all(numbers=None):
    numbers = numbers or [c[0] for c in CRITERIA]
    return [run_criterion(n) for n in numbers]


def format_table(results):
    lines = [f"{'#':>3}  {'result':6}  {'seconds':>8}  name"]
    for r in results:
        mark = "PASS" if r["passed"] else "FAIL"
        lines.append(f"{r['criterion']:>3}  {mark:6}  {r['seconds']:>8.3f}  {r['name']}")
        lines.append(f"{'':>3}  {'':6}  {'':>8}  {r['detail']}")
    passed = sum(r["passed"] for r in results)
    lines.append(f"{passed}/{len(results)} passed")
    return "\n".join(lines)


def run_selftest(numbers=None, as_json=False):
    """Run the suite; returns ``(exit_code, text)``."""
    results = run_all(numbers)
    code = 0 if all(r["passed"] for r in results) else 1
    if as_json:
        return code, json.dumps({"passed": code == 0, "results": results}, indent=2)
    return code, format_table(results)
