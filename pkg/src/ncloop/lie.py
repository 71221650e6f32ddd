"""Wronskian-type brackets on S[t], standard identities and axiom checkers."""

from fractions import Fraction
from itertools import combinations, permutations, product

import numpy as np

from .algebra import AlgElt
from .errors import AlgebraMismatch, BadParams
from .su import GradedElt, sabinin_binary, sabinin_closed

WRONSKIAN = "wronskian"
SABININ_BINARY = "sabinin_binary"
CUSTOM_TABLE = "custom_table"

MAX_ST = 6


class CoeffPoly:
    """Polynomial ``sum c_k t^k`` with coefficients in an algebra; t is central."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs=None):
        self.algebra = algebra
        clean = {}
        for k, c in (coeffs or {}).items():
            if k < 0:
                raise BadParams("negative power of t")
            if c.algebra is not algebra:
                raise AlgebraMismatch("coefficient from a different algebra")
            if c:
                clean[k] = c
        self.coeffs = clean

    @classmethod
    def monomial(cls, x, k):
        return cls(x.algebra, {k: x})

    @property
    def max_degree(self):
        return max(self.coeffs, default=-1)

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("polynomials over different algebras")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return CoeffPoly(self.algebra, out)

    def __neg__(self):
        return CoeffPoly(self.algebra, {k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        return CoeffPoly(self.algebra, {k: c.scale(s) for k, c in self.coeffs.items()})

    def __mul__(self, other):
        self._check(other)
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                p = a * b
                if p:
                    out[i + j] = out[i + j] + p if i + j in out else p
        return CoeffPoly(self.algebra, out)

    def derivative(self):
        return CoeffPoly(self.algebra, {k - 1: c.scale(k) for k, c in self.coeffs.items() if k})

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, CoeffPoly):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = str(self.coeffs[k])
            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*t")
            else:
                parts.append(f"({c})*t^{k}")
        return " + ".join(parts)

    __repr__ = __str__


def wronskian_bracket(f, g):
    """``<f, g> = g' f - f' g``."""
    f._check(g)
    return g.derivative() * f - f.derivative() * g


def table_bracket(x, y):
    """Bracket given by a (not necessarily associative) structure-constant table."""
    return x * y


def bracket_handle(tag):
    return {
        WRONSKIAN: wronskian_bracket,
        SABININ_BINARY: sabinin_binary,
        CUSTOM_TABLE: table_bracket,
    }[tag]


# -- standard identities --------------------------------------------------------------


def _sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def standard_identity(bracket, xs, z):
    """``St_{n+1}(x_1..x_n, z) = sum_s sgn(s) [x_s(1), [..., [x_s(n), z]]]``, by definition."""
    xs = list(xs)
    if not xs:
        raise BadParams("St needs at least one x")
    if len(xs) + 1 > MAX_ST:
        raise BadParams(f"St_n is limited to n <= {MAX_ST}")
    acc = None
    for perm in permutations(range(len(xs))):
        term = z
        for i in reversed(perm):
            term = bracket(xs[i], term)
        if _sign(perm) < 0:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def standard_identity_dp(bracket, xs, z):
    """Same value as :func:`standard_identity`, expanding by the outermost argument.

    ``G(S) = sum_p (-1)^p [x_{S[p]}, G(S minus S[p])]`` over sorted subsets S.
    """
    xs = list(xs)
    n = len(xs)
    level = {(): z}
    for size in range(1, n + 1):
        nxt = {}
        for S in combinations(range(n), size):
            acc = None
            for p, i in enumerate(S):
                rest = S[:p] + S[p + 1:]
                term = bracket(xs[i], level[rest])
                if p % 2:
                    term = -term
                acc = term if acc is None else acc + term
            nxt[S] = acc
        level = nxt
    return level[tuple(range(n))]


def spanning_set(algebra, degree_bound):
    """``{b t^k : b basis, 0 <= k <= degree_bound}``."""
    return [
        CoeffPoly.monomial(algebra.basis(key), k)
        for k in range(degree_bound + 1)
        for key in algebra.basis_keys()
    ]


def _label(p):
    (k, c), = p.coeffs.items()
    name = str(c)
    return name if k == 0 else (f"{name}*t" if k == 1 else f"{name}*t^{k}")


def check_st_identity(algebra, n, degree_bound):
    """Does ``St_n`` vanish on the Wronskian Lie algebra S[t] (t-degree <= bound)?

    St_n is multilinear and alternating in its first n-1 arguments, so it is
    enough to evaluate it on sorted (n-1)-subsets of the spanning set, with
    the last argument ranging over the whole set.  The computation runs in
    coordinates: ``ad x`` becomes an integer matrix on ``basis x t^0..t^D``
    and every z is handled at once as a column.  Integer arithmetic is used
    when a worst-case bound on the entries fits in int64; Fractions
    otherwise.
    """
    if not 2 <= n <= MAX_ST:
        raise BadParams(f"St_n needs 2 <= n <= {MAX_ST}")
    keys = algebra.basis_keys()
    span = [(b, k) for k in range(degree_bound + 1) for b in range(len(keys))]
    dmax = n * max(degree_bound, 1)
    coord = {(b, k): i for i, (b, k) in enumerate(product(range(len(keys)), range(dmax + 1)))}
    W = len(coord)

    integral = True
    prods = {}
    for bi, ka in enumerate(keys):
        for bj, kb in enumerate(keys):
            row = {keys.index(k): c for k, c in algebra.mul_keys(ka, kb).items()}
            if any(Fraction(c).denominator != 1 for c in row.values()):
                integral = False
            prods[(bi, bj)] = row

    def ad_entries(b, k):
        # <b t^k, b' t^k'> = (k' b'b - k bb') t^(k+k'-1)
        out = []
        for (bp, kp), col in coord.items():
            deg = k + kp - 1
            if deg < 0 or deg > dmax:
                continue
            if kp:
                for c, v in prods[(bp, b)].items():
                    out.append((coord[(c, deg)], col, kp * v))
            if k:
                for c, v in prods[(b, bp)].items():
                    out.append((coord[(c, deg)], col, -k * v))
        return out

    entries = [ad_entries(b, k) for b, k in span]
    radius = 0
    for ent in entries:
        rows = {}
        for r, _, v in ent:
            rows[r] = rows.get(r, 0) + abs(v)
        radius = max(radius, max(rows.values(), default=0))
    bound = 1
    for j in range(1, n):
        bound *= j * radius
    dtype = np.int64 if integral and bound < 2 ** 62 else object

    def dense(ent):
        A = np.zeros((W, W), dtype=dtype)
        if dtype is object:
            A[:] = Fraction(0)
        for r, c, v in ent:
            A[r, c] += v if dtype is object else int(v)
        return A

    ads = [dense(e) for e in entries]
    Z = np.zeros((W, len(span)), dtype=dtype)
    if dtype is object:
        Z[:] = Fraction(0)
    for j, (b, k) in enumerate(span):
        Z[coord[(b, k)], j] = 1
    level = {(): Z}
    nx = n - 1
    report = {
        "n": n,
        "algebra": algebra.name,
        "degree_bound": degree_bound,
        "spanning_size": len(span),
        "arithmetic": "int64" if dtype is np.int64 else "fraction",
        "status": "PASS",
    }
    checked = 0
    for size in range(1, nx + 1):
        nxt = {}
        for S in combinations(range(len(span)), size):
            acc = None
            for p, i in enumerate(S):
                term = ads[i] @ level[S[:p] + S[p + 1:]]
                acc = (term if p % 2 == 0 else -term) if acc is None else (
                    acc + term if p % 2 == 0 else acc - term)
            if size == nx:
                checked += 1
                nz = np.nonzero(np.any(acc != 0, axis=0))[0]
                if len(nz):
                    j = int(nz[0])
                    value = _poly_from_vector(algebra, keys, coord, acc[:, j])
                    report.update(
                        status="FAIL",
                        witness=[_label(_span_poly(algebra, keys, span[i])) for i in S]
                        + [_label(_span_poly(algebra, keys, span[j]))],
                        value=str(value),
                    )
                    report["tuples_checked"] = checked
                    return report
            else:
                nxt[S] = acc
        level = nxt
    report["tuples_checked"] = checked
    return report


def _span_poly(algebra, keys, bk):
    b, k = bk
    return CoeffPoly.monomial(algebra.basis(keys[b]), k)


def _poly_from_vector(algebra, keys, coord, vec):
    coeffs = {}
    for (b, k), i in coord.items():
        v = vec[i]
        if v:
            x = algebra.basis(keys[b]).scale(Fraction(v) if not isinstance(v, Fraction) else v)
            coeffs[k] = coeffs[k] + x if k in coeffs else x
    return CoeffPoly(algebra, coeffs)


# -- Jacobi -------------------------------------------------------------------------


def _is_zero(x):
    return not x


def jacobi_check(bracket, spanning, admissible=None):
    """Antisymmetry on all pairs and Jacobi on all (admissible) triples."""
    spanning = list(spanning)
    checked = 0
    for x, y in product(spanning, repeat=2):
        if admissible is not None and not admissible(x, y, None):
            continue
        v = bracket(x, y) + bracket(y, x)
        if not _is_zero(v):
            return {"status": "FAIL", "axiom": "antisymmetry", "witness": [str(x), str(y)], "value": str(v)}
    for x, y, z in product(spanning, repeat=3):
        if admissible is not None and not admissible(x, y, z):
            continue
        checked += 1
        v = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        if not _is_zero(v):
            return {
                "status": "FAIL",
                "axiom": "jacobi",
                "witness": [str(x), str(y), str(z)],
                "value": str(v),
            }
    return {"status": "PASS", "triples_checked": checked}


def window_admissible(a, b):
    """Triples of Laurent monomials whose partial sums stay in the window [a, b]."""

    def ok(x, y, z):
        degs = [e.degree for e in (x, y, z) if e is not None]
        sums = [degs[i] + degs[j] for i in range(len(degs)) for j in range(i + 1, len(degs))]
        if len(degs) == 3:
            sums.append(sum(degs))
        return all(a <= s <= b for s in sums)

    return ok


# -- Sabinin axioms ---------------------------------------------------------------------


def _bracket(xs, y, z):
    if not xs:
        return sabinin_binary(y, z)
    return sabinin_closed(xs, y, z)


def _shuffles(seq):
    """All (k, r-k) shuffles of seq: pairs (first part, second part) in original order."""
    r = len(seq)
    for k in range(r + 1):
        for first in combinations(range(r), k):
            rest = [i for i in range(r) if i not in first]
            yield [seq[i] for i in first], [seq[i] for i in rest]


def graded_generators(algebra, degrees=(0,)):
    """Homogeneous basis elements: intrinsic degrees if graded, else every basis x degree."""
    out = []
    for key in algebra.basis_keys():
        x = algebra.basis(key)
        if algebra.is_graded:
            out.append(GradedElt(algebra.key_degree(key), x))
        else:
            out.extend(GradedElt(d, x) for d in degrees)
    return out


def _add(acc, term):
    return term if acc is None else acc + term


def antisymmetry_defect(xs, y, z):
    return _bracket(xs, y, z) + _bracket(xs, z, y)


def exchange_defect(xs, a, b, r, y, z):
    """Left side of the exchange axiom for ``<x_1..x_r, a, b, x_{r+1}..; y, z>``."""
    head, tail = list(xs[:r]), list(xs[r:])
    acc = _bracket(head + [a, b] + tail, y, z) - _bracket(head + [b, a] + tail, y, z)
    for first, second in _shuffles(head):
        inner = _bracket(second, a, b)
        acc = acc + _bracket(first + [inner] + tail, y, z)
    return acc


def cyclic_defect(xs, x, y, z):
    """Left side of the cyclic axiom with prefix ``x_1..x_r``."""
    acc = None
    for u, v, w in ((x, y, z), (y, z, x), (z, x, y)):
        acc = _add(acc, _bracket(list(xs) + [u], v, w))
        for first, second in _shuffles(list(xs)):
            acc = acc + _bracket(first, _bracket(second, v, w), u)
    return acc


def sabinin_axioms_check(algebra, max_arity=4, degrees=(0,)):
    """Check the three bracket axiom families on homogeneous basis tuples.

    ``max_arity`` bounds the total number of arguments (prefix plus the two
    tail slots); it is capped at 4.  Brackets come from the closed form, the
    empty-prefix bracket being the binary one.
    """
    if max_arity > 4:
        raise BadParams("max_arity is capped at 4")
    gens = graded_generators(algebra, degrees)
    counts = {"antisymmetry": 0, "exchange": 0, "cyclic": 0}

    def fail(axiom, args, value):
        return {
            "status": "FAIL",
            "axiom": axiom,
            "witness": [str(a) for a in args],
            "value": str(value),
            "counts": counts,
        }

    for p in range(0, max_arity - 1):
        for args in product(gens, repeat=p + 2):
            counts["antisymmetry"] += 1
            v = antisymmetry_defect(list(args[:p]), args[p], args[p + 1])
            if v:
                return fail("antisymmetry", args, v)
    for p in range(2, max_arity - 1):
        for args in product(gens, repeat=p + 2):
            xs, y, z = list(args[:p]), args[p], args[p + 1]
            for r in range(0, p - 1):
                counts["exchange"] += 1
                others = xs[:r] + xs[r + 2:]
                v = exchange_defect(others, xs[r], xs[r + 1], r, y, z)
                if v:
                    return fail("exchange", args, v)
    for r in range(0, max_arity - 2):
        for args in product(gens, repeat=r + 3):
            counts["cyclic"] += 1
            v = cyclic_defect(list(args[:r]), *args[r:])
            if v:
                return fail("cyclic", args, v)
    return {"status": "PASS", "counts": counts}


__all__ = [
    "WRONSKIAN", "SABININ_BINARY", "CUSTOM_TABLE", "CoeffPoly", "wronskian_bracket",
    "table_bracket", "bracket_handle", "standard_identity", "standard_identity_dp",
    "spanning_set", "check_st_identity", "jacobi_check", "window_admissible",
    "graded_generators", "antisymmetry_defect", "exchange_defect", "cyclic_defect",
    "sabinin_axioms_check",
]
