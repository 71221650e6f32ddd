"""Loop words evaluated on truncated series.

Commutators, associators and their iterated deviations are evaluated
directly in the series loop (never expanded as free-loop words).  On top of
that: the filtration-induced brackets, the depth (N-sequence) checks and the
two normal-subloop witness computations for coefficient rings.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import free_truncated_algebra
from .algebra import check_s_comm_ideal
from .errors import BadArity, BadIndex, BadParams, Inconsistent, TruncationTooSmall
from .series import (
    INFINITY, associator_defect, compose, depth, left_divide, random_series, single, unit,
)
from .su import GradedElt

COMMUTATOR = "commutator"
ASSOCIATOR = "associator"
_BASE_ARITY = {COMMUTATOR: 2, ASSOCIATOR: 3}


def loop_commutator(a, b):
    """``[a, b] = (b o a) \\ (a o b)``."""
    return left_divide(compose(b, a), compose(a, b))


def loop_associator(a, b, c):
    """``(a, b, c) = (a o (b o c)) \\ ((a o b) o c)``."""
    return left_divide(compose(a, compose(b, c)), compose(compose(a, b), c))


@dataclass(frozen=True)
class DeviationExpr:
    """A commutator or associator followed by deviations at ``indices``.

    The j-th deviation (1-based) acts on a word of arity ``base + j - 1`` and
    its index must lie in ``1..base + j - 1``; the resulting word has one
    more argument.
    """

    base: str = ASSOCIATOR
    indices: tuple = ()

    def __post_init__(self):
        if self.base not in _BASE_ARITY:
            raise BadParams(f"unknown base word {self.base!r}")
        r = _BASE_ARITY[self.base]
        for j, i in enumerate(self.indices):
            if not 1 <= i <= r + j:
                raise BadIndex(f"deviation index {i} at level {j + 1} must be in 1..{r + j}")

    @property
    def arity(self):
        return _BASE_ARITY[self.base] + len(self.indices)

    def __call__(self, *args):
        return deviation_apply(self, list(args))


def _evaluate(base, indices, args):
    if not indices:
        if base == COMMUTATOR:
            return loop_commutator(*args)
        return loop_associator(*args)
    i = indices[-1]
    y, z = args[i - 1], args[i]
    head, tail = args[: i - 1], args[i + 1:]

    def w(s):
        return _evaluate(base, indices[:-1], head + [s] + tail)

    # both new arguments go into the same slot i
    return left_divide(compose(w(y), w(z)), w(compose(y, z)))


def deviation_apply(expr, args):
    if len(args) != expr.arity:
        raise BadArity(f"{expr} takes {expr.arity} arguments, got {len(args)}")
    return _evaluate(expr.base, tuple(expr.indices), list(args))


def p_nm_expr(n, m):
    """The deviation pattern of ``P_{n,m}``: n-1 ones then m-1 copies of n+1."""
    if n < 1 or m < 1:
        raise BadArity("P_{n,m} needs n, m >= 1")
    return DeviationExpr(ASSOCIATOR, (1,) * (n - 1) + (n + 1,) * (m - 1))


def p_nm(xs, ys, z):
    xs, ys = list(xs), list(ys)
    return deviation_apply(p_nm_expr(len(xs), len(ys)), xs + ys + [z])


# -- multilinear strata and filtration brackets -----------------------------------


def multilinear_part(x, gen_indices):
    """Terms of a free-algebra element using each listed generator exactly once."""
    want = sorted(gen_indices)
    return x.__class__(
        x.algebra, {w: c for w, c in x.terms.items() if sorted(w) == want}
    )


@dataclass
class FiltrationBracket:
    value: GradedElt
    xs: list
    y: GradedElt
    z: GradedElt


def filtration_bracket(degrees, deg_y, deg_z, truncation=None):
    """The bracket ``<x_1..x_n; y, z>`` induced on the associated graded of the filtration.

    ``x_i = 1 + alpha_i`` with ``alpha_i`` a free generator of degree
    ``degrees[i]``, likewise y and z.  Evaluates
    ``P_{n,1}(x; z; y) - P_{n,1}(x; y; z)`` and keeps the multilinear part of
    the degree ``sum(degrees) + deg_y + deg_z`` coefficient.  The returned
    generators can be fed to :func:`su.sabinin_closed` for comparison.
    """
    degrees = list(degrees)
    if not degrees or min(degrees + [deg_y, deg_z]) < 1:
        raise BadParams("all degrees must be >= 1 and at least one x is needed")
    total = sum(degrees) + deg_y + deg_z
    T = total if truncation is None else truncation
    if T < total:
        raise TruncationTooSmall(f"truncation {T} < total degree {total}")
    gens = [(f"x{i + 1}", d) for i, d in enumerate(degrees)] + [("y", deg_y), ("z", deg_z)]
    F = free_truncated_algebra(gens, T, name="filtration")
    n = len(degrees)
    xs = [single(F, T, d, F.gen(f"x{i + 1}"), True) for i, d in enumerate(degrees)]
    y = single(F, T, deg_y, F.gen("y"), True)
    z = single(F, T, deg_z, F.gen("z"), True)
    diff = p_nm(xs, [z], y)[total] - p_nm(xs, [y], z)[total]
    value = multilinear_part(diff, range(n + 2))
    return FiltrationBracket(
        GradedElt(total, value),
        [GradedElt(d, F.gen(f"x{i + 1}")) for i, d in enumerate(degrees)],
        GradedElt(deg_y, F.gen("y")),
        GradedElt(deg_z, F.gen("z")),
    )


def commutator_bracket(deg_y, deg_z, truncation=None):
    """Leading coefficient of ``[1 + y, 1 + z]`` on free generators y, z.

    It is ``y*z - z*y``, i.e. the binary bracket ``<z, y>``: the same swap as
    in the n-ary brackets, which start from ``P(x; z; y)``.
    """
    total = deg_y + deg_z
    T = total if truncation is None else truncation
    if T < total:
        raise TruncationTooSmall(f"truncation {T} < total degree {total}")
    F = free_truncated_algebra([("y", deg_y), ("z", deg_z)], T, name="filtration")
    y = single(F, T, deg_y, F.gen("y"), True)
    z = single(F, T, deg_z, F.gen("z"), True)
    lead = loop_commutator(y, z)[total]
    return (
        GradedElt(total, multilinear_part(lead, [0, 1])),
        GradedElt(deg_y, F.gen("y")),
        GradedElt(deg_z, F.gen("z")),
    )


# -- depth checks -------------------------------------------------------------------


def word_from(spec):
    """Callable for ``"commutator"``, ``"associator"``, ``DeviationExpr`` or ``("P", n, m)``."""
    if callable(spec) and not isinstance(spec, str):
        return spec
    if spec == COMMUTATOR:
        return DeviationExpr(COMMUTATOR, ())
    if spec == ASSOCIATOR:
        return DeviationExpr(ASSOCIATOR, ())
    if isinstance(spec, tuple) and spec[0] == "P":
        return p_nm_expr(spec[1], spec[2])
    raise BadParams(f"unknown word {spec!r}")


def n_sequence_check(word, depths, samples, algebra, truncation, seed=0, graded_mode=False):
    """Evaluate ``word`` on random series of prescribed depths and compare depths.

    Passes when every result has depth >= sum(depths).  ``min_slack`` is the
    smallest observed ``depth(result) - sum(depths)`` (``inf`` if every result
    was the unit within the truncation).
    """
    fn = word_from(word)
    depths = list(depths)
    need = sum(depths)
    if truncation < need:
        raise TruncationTooSmall(f"truncation {truncation} < sum of depths {need}")
    rng = random.Random(seed)
    failures = []
    min_slack = INFINITY
    for _ in range(samples):
        args = [
            random_series(algebra, truncation, rng, depth=d, graded_mode=graded_mode, zero_prob=0.3)
            for d in depths
        ]
        d = depth(fn(*args))
        min_slack = min(min_slack, d - need)
        if d < need:
            failures.append({"args": [str(a) for a in args], "depth": d})
    return {
        "word": str(word),
        "depths": depths,
        "samples": samples,
        "seed": seed,
        "passed": not failures,
        "min_slack": min_slack,
        "failures": failures,
    }


def check_group(algebra, truncation=5, samples=200, seed=0, graded_mode=None):
    """Is the substitution loop over ``algebra`` a group?

    The exact basis predicate ``S[S,S] = 0`` is compared with random
    associator sampling.  Disagreement means a bug and raises
    :class:`Inconsistent`.  Graded algebras are sampled in graded mode
    unless told otherwise.
    """
    if graded_mode is None:
        graded_mode = algebra.is_graded
    pred = check_s_comm_ideal(algebra)
    rng = random.Random(seed)
    witness = None
    for _ in range(samples):
        triple = [
            random_series(algebra, truncation, rng, graded_mode=graded_mode, zero_prob=0.3)
            for _ in range(3)
        ]
        if not associator_defect(*triple).is_unit():
            witness = triple
            break
    sampled_group = witness is None
    if sampled_group != pred["s_brackets_zero"] and not (sampled_group and truncation < 3):
        raise Inconsistent(
            "basis predicate and associator sampling disagree",
            predicate=pred, witness=[str(s) for s in witness or []],
        )
    return {
        "algebra": algebra.name,
        "verdict": "GROUP" if pred["s_brackets_zero"] else "NOT_GROUP",
        "predicate": pred,
        "truncation": truncation,
        "samples": samples,
        "seed": seed,
        "witness": [str(s) for s in witness] if witness else None,
    }


# -- normal subloop witnesses --------------------------------------------------------


def absorption_witness(alpha_n, beta, n, i, truncation):
    """``[1 + beta t^i-slot, 1 + alpha_n at n]`` in the ungraded loop and its degree n+i part.

    With this package's commutator orientation the degree n+i coefficient is
    ``(i+1) beta alpha_n - (n+1) alpha_n beta``.
    """
    if truncation < n + i:
        raise TruncationTooSmall(f"truncation {truncation} < n + i = {n + i}")
    alg = alpha_n.algebra
    a = single(alg, truncation, i, beta)
    A = single(alg, truncation, n, alpha_n)
    comm = loop_commutator(a, A)
    return comm, comm[n + i]


def klopsch_system(n, m):
    """Rows ``(coef_lambda, coef_mu)`` of the ``beta alpha`` and ``alpha beta`` coefficients.

    For ``a = 1 + lambda beta`` at degree m-n, ``b = 1 + mu beta`` at m-n-1,
    ``A = 1 + alpha`` at n and ``B = 1 + alpha`` at n+1, the degree-m
    coefficient of ``[a, A] o [b, B]`` is
    ``(r0 . (lambda, mu)) beta alpha + (r1 . (lambda, mu)) alpha beta``.
    Each commutator contributes its leading term
    ``(deg+1) beta alpha - (n'+1) alpha beta``.
    """
    return (
        (Fraction(m - n + 1), Fraction(m - n)),
        (Fraction(-(n + 1)), Fraction(-(n + 2))),
    )


def klopsch_witness(n, m, target):
    """Scalars (lambda, mu) making ``[a, A] o [b, B]`` congruent to ``1 + target``.

    ``target`` is ``"ab"`` (alpha beta) or ``"ba"`` (beta alpha).
    """
    if n < 1 or m < n + 2:
        raise BadParams("need n >= 1 and m >= n + 2")
    target = target.lower()
    if target not in ("ab", "ba"):
        raise BadParams("target must be 'ab' or 'ba'")
    (p, q), (r, s) = klopsch_system(n, m)
    rhs = (Fraction(1), Fraction(0)) if target == "ba" else (Fraction(0), Fraction(1))
    det = p * s - q * r
    lam = (rhs[0] * s - q * rhs[1]) / det
    mu = (p * rhs[1] - r * rhs[0]) / det
    return lam, mu


def klopsch_evaluate(n, m, lam, mu):
    """Evaluate ``[a, A] o [b, B]`` over free alpha, beta with truncation m+1.

    Returns the product series (ungraded, free coefficients of degree 1).
    """
    T = m + 1
    F = free_truncated_algebra([("alpha", 1), ("beta", 1)], T + 1, name="klopsch")
    alpha, beta = F.gen("alpha"), F.gen("beta")
    a = single(F, T, m - n, beta.scale(lam))
    b = single(F, T, m - n - 1, beta.scale(mu))
    A = single(F, T, n, alpha)
    B = single(F, T, n + 1, alpha)
    return compose(loop_commutator(a, A), loop_commutator(b, B))


def klopsch_check(n, m, target, lam=None, mu=None):
    """True when the degree < m coefficients vanish and degree m is exactly the target word."""
    if lam is None:
        lam, mu = klopsch_witness(n, m, target)
    s = klopsch_evaluate(n, m, lam, mu)
    F = s.algebra
    word = (F.generator_index("alpha"), F.generator_index("beta"))
    if target.lower() == "ba":
        word = word[::-1]
    want = F.basis(word)
    return all(not s[k] for k in range(1, m)) and s[m] == want


__all__ = [
    "COMMUTATOR", "ASSOCIATOR", "loop_commutator", "loop_associator", "DeviationExpr",
    "deviation_apply", "p_nm_expr", "p_nm", "multilinear_part", "FiltrationBracket",
    "filtration_bracket", "commutator_bracket", "word_from", "n_sequence_check",
    "absorption_witness", "klopsch_system", "klopsch_witness", "klopsch_evaluate",
    "klopsch_check", "check_group", "unit",
]
