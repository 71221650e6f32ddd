"""Shestakov-Umirbaev operations for the product ``a_m * a_n = (m+1) a_m a_n``.

Elements carry their degree explicitly (:class:`GradedElt`) because the same
ring is often used in several degrees at once.  The formal unit of the
``*``-product is represented by ``None``: it is a two-sided unit, which a
degree-0 element would not be.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import factorial

from .algebra import AlgElt
from .errors import AlgebraMismatch, BadArity, EmptyArgs, EmptyI, GradingViolation, KTooLarge


@dataclass(frozen=True)
class GradedElt:
    degree: int
    value: AlgElt

    def __post_init__(self):
        alg = self.value.algebra
        if alg.is_graded and self.value and not self.value.is_homogeneous(self.degree):
            raise GradingViolation(f"{self.value} is not homogeneous of degree {self.degree}")

    @property
    def algebra(self):
        return self.value.algebra

    def __add__(self, other):
        if self.degree != other.degree:
            raise GradingViolation("adding elements of different degrees")
        return GradedElt(self.degree, self.value + other.value)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return GradedElt(self.degree, -self.value)

    def scale(self, s):
        return GradedElt(self.degree, self.value.scale(s))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return f"[{self.degree}] {self.value}"


def graded(degree, value):
    return GradedElt(int(degree), value)


def _same_algebra(elts):
    algs = {id(e.algebra) for e in elts if e is not None}
    if len(algs) > 1:
        raise AlgebraMismatch("arguments live in different algebras")


# -- multi-indices and deconcatenations -----------------------------------------


def n_coefficient(degrees):
    """N(I) = (i1+1)(i1+i2+1)...(i1+...+im+1); N of the empty index is 1."""
    out, run = 1, 0
    for d in degrees:
        run += d
        out *= run + 1
    return out


def deconcatenations(m, k):
    """All ways to split positions 0..m-1 into k ordered nonempty order-preserving blocks.

    There are k! S(m, k) of them.
    """
    if k < 1:
        raise KTooLarge("k must be >= 1")
    if k > m:
        raise KTooLarge(f"cannot split {m} positions into {k} nonempty blocks")
    out = []
    for assign in product(range(k), repeat=m):
        blocks = [[] for _ in range(k)]
        for pos, blk in enumerate(assign):
            blocks[blk].append(pos)
        if all(blocks):
            out.append(tuple(tuple(b) for b in blocks))
    return out


# -- the *-product ----------------------------------------------------------------


def star_graded(x, y):
    """``x * y = (deg x + 1) x y``; ``None`` is the formal unit on either side."""
    if x is None:
        return y
    if y is None:
        return x
    _same_algebra((x, y))
    return GradedElt(x.degree + y.degree, (x.value * y.value).scale(x.degree + 1))


def left_normed_star(elts):
    """``((a1 * a2) * ...) * am``; the empty product is the formal unit."""
    acc = None
    for e in elts:
        acc = star_graded(acc, e)
    return acc


def plain_product(elts):
    acc = elts[0].value
    for e in elts[1:]:
        acc = acc * e.value
    return acc


# -- p-operations by recursion -------------------------------------------------------


def su_p(xs, ys, z):
    """The p-operation ``p(x_1..x_m; y_1..y_n; z)``.

    Solves the defining formula

        (a*_I * a*_J) * z - a*_I * (a*_J * z)
            = sum (a*_{I(1)} * a*_{J(1)}) * p(I(2); J(2); z)

    for the term with ``I(2) = I, J(2) = J``.  The sum runs over all splittings
    of I and J into complementary order-preserving subsequences.  The term
    with I(2) and J(2) both empty never occurs on the right: its left side
    is identically zero.  Sub-operations are memoised by position sets.
    """
    xs, ys = list(xs), list(ys)
    if not xs and not ys:
        raise EmptyArgs("p needs at least one argument before the last slot")
    _same_algebra(xs + ys + [z])
    memo = {}

    def value(Ipos, Jpos):
        key = (Ipos, Jpos)
        if key in memo:
            return memo[key]
        aI = left_normed_star([xs[i] for i in Ipos])
        aJ = left_normed_star([ys[j] for j in Jpos])
        deg = sum(xs[i].degree for i in Ipos) + sum(ys[j].degree for j in Jpos) + z.degree
        lhs = star_graded(star_graded(aI, aJ), z) - star_graded(aI, star_graded(aJ, z))
        acc = lhs.value
        for r in range(len(Ipos) + 1):
            for I1 in combinations(Ipos, r):
                I2 = tuple(i for i in Ipos if i not in I1)
                for s in range(len(Jpos) + 1):
                    for J1 in combinations(Jpos, s):
                        J2 = tuple(j for j in Jpos if j not in J1)
                        if (I2, J2) == (Ipos, Jpos) or (not I2 and not J2):
                            continue
                        inner = value(I2, J2)
                        if not inner:
                            continue
                        left = star_graded(
                            left_normed_star([xs[i] for i in I1]),
                            left_normed_star([ys[j] for j in J1]),
                        )
                        acc = acc - star_graded(left, inner).value
        out = GradedElt(deg, acc)
        memo[key] = out
        return out

    return value(tuple(range(len(xs))), tuple(range(len(ys))))


def su_bracket(xs, b, c):
    """``<x_1..x_m; b, c> = p(x; c; b) - p(x; b; c)`` computed through the recursion."""
    if not xs:
        raise EmptyI("the m = 0 bracket is not <b, c>; use sabinin_binary")
    return su_p(xs, [c], b) - su_p(xs, [b], c)


# -- brackets in closed form ------------------------------------------------------------


def sabinin_binary(a, b):
    """``<a, b> = b * a - a * b = (|b|+1) ba - (|a|+1) ab``."""
    _same_algebra((a, b))
    val = (b.value * a.value).scale(b.degree + 1) - (a.value * b.value).scale(a.degree + 1)
    return GradedElt(a.degree + b.degree, val)


def sabinin_closed(I_elts, b, c):
    """Closed form of ``<a_I; b, c>`` for the *-product.

    Sum over k and over deconcatenations of I into k nonempty blocks of
    ``(-1)^(k+1) |I(k)| N(I(1))...N(I(k)) a_{I(1)}...a_{I(k)} [c, b]``.
    """
    I_elts = list(I_elts)
    if not I_elts:
        raise EmptyI("<;b,c> with empty I is not the binary bracket")
    _same_algebra(I_elts + [b, c])
    alg = b.algebra
    m = len(I_elts)
    degs = [e.degree for e in I_elts]
    comm = c.value * b.value - b.value * c.value
    total = alg.zero()
    if comm:
        for k in range(1, m + 1):
            sign = 1 if k % 2 else -1
            for blocks in deconcatenations(m, k):
                scalar = sign * sum(degs[p] for p in blocks[-1])
                if not scalar:
                    continue
                for blk in blocks:
                    scalar *= n_coefficient([degs[p] for p in blk])
                    if not scalar:
                        break
                if not scalar:
                    continue
                word = plain_product([I_elts[p] for blk in blocks for p in blk])
                if word:
                    total = total + (word * comm).scale(scalar)
    return GradedElt(sum(degs) + b.degree + c.degree, total)


def multioperator_phi(xs, ys):
    """``1/(m!(n+1)!) sum_{s, t} p(x_s(1..m); y_t(1..n); y_t(n+1))``."""
    xs, ys = list(xs), list(ys)
    if len(xs) < 1 or len(ys) < 2:
        raise BadArity("Phi needs m >= 1 and at least two y arguments")
    _same_algebra(xs + ys)
    acc = None
    for sx in permutations(xs):
        for ty in permutations(ys):
            term = su_p(sx, ty[:-1], ty[-1])
            acc = term if acc is None else acc + term
    return acc.scale(Fraction(1, factorial(len(xs)) * factorial(len(ys))))


__all__ = [
    "GradedElt", "graded", "n_coefficient", "deconcatenations", "star_graded",
    "left_normed_star", "plain_product", "su_p", "su_bracket", "sabinin_binary",
    "sabinin_closed", "multioperator_phi",
]
