"""The loop of truncated series ``1 + a_1 + a_2 + ...`` under substitution.

A series stores ``a_1 .. a_T``; the leading formal unit ``a_0 = 1`` is
implicit.  Read as a power series this is ``t + a_1 t^2 + a_2 t^3 + ...``.

In graded mode ``a_k`` must lie in the degree-k part of the coefficient
algebra (the loop over a graded algebra).  Ungraded mode accepts any
coefficients (the loop over an arbitrary ring, where the index is only the
power of ``t``).
"""

import math
from fractions import Fraction

from .algebra import AlgElt, as_fraction
from .errors import (
    AlgebraMismatch,
    BadParams,
    GradingViolation,
    SupportNeedsFreeAlgebra,
    TruncationMismatch,
)

INFINITY = math.inf


class Series:
    __slots__ = ("algebra", "truncation", "coeffs", "graded_mode")

    def __init__(self, algebra, truncation, coeffs=None, graded_mode=False):
        if truncation < 1:
            raise BadParams("truncation must be >= 1")
        self.algebra = algebra
        self.truncation = truncation
        self.graded_mode = graded_mode
        zero = algebra.zero()
        if coeffs is None:
            coeffs = {}
        if isinstance(coeffs, dict):
            items = [coeffs.get(k, zero) for k in range(1, truncation + 1)]
            extra = [k for k in coeffs if not 1 <= k <= truncation]
            if any(coeffs[k] for k in extra):
                raise BadParams(f"coefficient index outside 1..{truncation}")
        else:
            items = list(coeffs)
            if len(items) > truncation:
                if any(items[truncation:]):
                    raise BadParams("more coefficients than the truncation allows")
                items = items[:truncation]
            items += [zero] * (truncation - len(items))
        for x in items:
            if x.algebra is not algebra:
                raise AlgebraMismatch("coefficient from a different algebra")
        self.coeffs = tuple(items)
        if graded_mode and algebra.is_graded:
            for k, x in enumerate(self.coeffs, 1):
                if not x.is_homogeneous(k):
                    raise GradingViolation(f"coefficient {k} is not homogeneous of degree {k}")

    def __getitem__(self, k):
        """``s[k]`` is the coefficient of degree k; ``s[0]`` is not stored."""
        if not 1 <= k <= self.truncation:
            raise IndexError(k)
        return self.coeffs[k - 1]

    def is_unit(self):
        return not any(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.algebra is other.algebra
            and self.truncation == other.truncation
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.algebra), self.truncation, self.coeffs))

    def with_coeffs(self, coeffs):
        return Series(self.algebra, self.truncation, coeffs, self.graded_mode)

    def scale_tail(self, s):
        """Multiply every stored coefficient by the scalar ``s``."""
        return self.with_coeffs([x.scale(s) for x in self.coeffs])

    def __repr__(self):
        return f"Series({format_series(self)}, T={self.truncation})"

    def __str__(self):
        return format_series(self)


def format_series(s):
    """Render as ``t + a*t^2 + (1/2)*a*b*t^3``; :func:`textio.parse_series` inverts it."""
    out = "t"
    alg = s.algebra
    for k, x in enumerate(s.coeffs, 1):
        for key in sorted(x.terms, key=_key_order):
            c = x.terms[key]
            label = alg.key_label(key)
            mag = abs(c)
            sign = " - " if c < 0 else " + "
            if mag.denominator != 1:
                scalar = f"({mag})*"
            elif mag != 1:
                scalar = f"{mag.numerator}*"
            else:
                scalar = ""
            if alg.is_free and key == ():
                body = f"{scalar}t^{k + 1}" if scalar else f"1*t^{k + 1}"
            else:
                body = f"{scalar}{label}*t^{k + 1}"
            out += sign + body
    return out


def _key_order(k):
    return (len(k), k) if isinstance(k, tuple) else (0, (k,))


def _check_pair(f, g):
    if f.algebra is not g.algebra:
        raise AlgebraMismatch("series over different algebras")
    if f.truncation != g.truncation:
        raise TruncationMismatch(f"truncations {f.truncation} and {g.truncation} differ")


def _result(template, coeffs, *others):
    graded = template.graded_mode and all(o.graded_mode for o in others)
    return Series(template.algebra, template.truncation, coeffs, graded)


def unit(algebra, truncation, graded_mode=False):
    return Series(algebra, truncation, None, graded_mode)


# -- powers of 1 + b ------------------------------------------------------


class _Powers:
    """Non-unit parts of ``(1 + b)^p`` for p = 1..T, grown one degree at a time.

    ``table[p][j]`` is the degree-j coefficient of ``(1 + b)^p``; entry 0 is
    the formal unit and is never stored (kept as ``None``).  Only
    ``j <= T - p + 1`` is ever read, so higher entries are not built.
    """

    def __init__(self, truncation, zero):
        self.T = truncation
        self.zero = zero
        self.b = [None]
        self.table = [None] + [[None] for _ in range(truncation)]

    def push(self, bk):
        """Append the next coefficient of b and extend every power to that degree."""
        k = len(self.b)
        self.b.append(bk)
        for p in range(1, self.T - k + 2):
            if p == 1:
                val = bk
            else:
                prev = self.table[p - 1]
                val = prev[k] + bk
                for i in range(1, k):
                    bi = self.b[k - i]
                    if prev[i] and bi:
                        val = val + prev[i] * bi
            self.table[p].append(val)

    def get(self, p, j):
        return self.table[p][j]


def _powers_of(g):
    P = _Powers(g.truncation, g.algebra.zero())
    for x in g.coeffs:
        P.push(x)
    return P


def compose(f, g):
    """Substitution product: ``f o g = sum_m a_m (1 + b)^{m+1}``."""
    _check_pair(f, g)
    T = f.truncation
    P = _powers_of(g)
    a = (None,) + f.coeffs
    out = []
    for k in range(1, T + 1):
        val = a[k] + g.coeffs[k - 1]
        for m in range(1, k):
            if a[m]:
                pw = P.get(m + 1, k - m)
                if pw:
                    val = val + a[m] * pw
        out.append(val)
    return _result(f, out, g)


def left_divide(f, h):
    """The unique g with ``f o g = h``, solved one degree at a time."""
    _check_pair(f, h)
    T = f.truncation
    a = (None,) + f.coeffs
    P = _Powers(T, f.algebra.zero())
    out = []
    for k in range(1, T + 1):
        # every term of (f o g)_k other than b_k involves only b_{<k}
        rest = a[k]
        for m in range(1, k):
            if a[m]:
                pw = P.get(m + 1, k - m)
                if pw:
                    rest = rest + a[m] * pw
        bk = h.coeffs[k - 1] - rest
        out.append(bk)
        P.push(bk)
    return _result(f, out, h)


def right_divide(h, g):
    """The unique f with ``f o g = h``."""
    _check_pair(h, g)
    T = h.truncation
    P = _powers_of(g)
    a = [None]
    for k in range(1, T + 1):
        rest = g.coeffs[k - 1]
        for m in range(1, k):
            if a[m]:
                pw = P.get(m + 1, k - m)
                if pw:
                    rest = rest + a[m] * pw
        a.append(h.coeffs[k - 1] - rest)
    return _result(h, a[1:], g)


# -- the *-product loop -------------------------------------------------------


def star(f, g):
    """``1 + sum a_m + sum b_n + sum (m+1) a_m b_n``."""
    _check_pair(f, g)
    T = f.truncation
    a, b = (None,) + f.coeffs, (None,) + g.coeffs
    out = []
    for k in range(1, T + 1):
        val = a[k] + b[k]
        for m in range(1, k):
            if a[m] and b[k - m]:
                val = val + (a[m] * b[k - m]).scale(m + 1)
        out.append(val)
    return _result(f, out, g)


def star_left_divide(f, h):
    """g with ``f * g = h``."""
    _check_pair(f, h)
    T = f.truncation
    a = (None,) + f.coeffs
    b = [None]
    for k in range(1, T + 1):
        rest = a[k]
        for m in range(1, k):
            if a[m] and b[k - m]:
                rest = rest + (a[m] * b[k - m]).scale(m + 1)
        b.append(h.coeffs[k - 1] - rest)
    return _result(f, b[1:], h)


def star_right_divide(h, g):
    """f with ``f * g = h``."""
    _check_pair(h, g)
    T = h.truncation
    b = (None,) + g.coeffs
    a = [None]
    for k in range(1, T + 1):
        rest = b[k]
        for m in range(1, k):
            if a[m] and b[k - m]:
                rest = rest + (a[m] * b[k - m]).scale(m + 1)
        a.append(h.coeffs[k - 1] - rest)
    return _result(h, a[1:], g)


# -- the bullet product on the non-unit parts ------------------------------------


def _unit_mul(x, y, T):
    """Non-unit part of (1 + x)(1 + y) truncated at T; x, y indexed from 1."""
    out = [None]
    for k in range(1, T + 1):
        val = x[k] + y[k]
        for i in range(1, k):
            if x[i] and y[k - i]:
                val = val + x[i] * y[k - i]
        out.append(val)
    return out


def bullet(a, b):
    """``a . b := b + a o (1 + b)`` where a, b are read as their non-unit parts.

    ``a o (1 + b)`` here means ``sum_{m>=1} a_m (1 + b)^{m+1}``; the powers are
    rebuilt by plain repeated multiplication.
    """
    _check_pair(a, b)
    T = a.truncation
    bb = [None] + list(b.coeffs)
    power = list(bb)  # (1 + b)^1
    acc = [None] + list(b.coeffs)
    for m in range(1, T + 1):
        power = _unit_mul(power, bb, T)  # (1 + b)^{m+1}
        am = a.coeffs[m - 1]
        if not am:
            continue
        acc[m] = acc[m] + am
        for j in range(1, T - m + 1):
            if power[j]:
                acc[m + j] = acc[m + j] + am * power[j]
    return _result(a, acc[1:], b)


# -- linearization -------------------------------------------------------------


def _lagrange_weights(nodes, power):
    """Weights w_i with sum w_i p(nodes[i]) = [lambda^power] p for deg p < len(nodes)."""
    weights = []
    for i, xi in enumerate(nodes):
        poly = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            poly = [Fraction(0)] + poly
            for d in range(len(poly) - 1):
                poly[d] -= xj * poly[d + 1]
            denom *= xi - xj
        weights.append(poly[power] / denom if power < len(poly) else Fraction(0))
    return weights


def scalar_coefficient(fn, power, max_degree):
    """Coefficient of ``lambda^power`` in a Series-valued polynomial ``fn(lambda)``.

    ``fn`` is evaluated at 0..max_degree and the answer recovered by exact
    interpolation, which is how a formal scalar tag is stripped off.
    """
    nodes = [Fraction(i) for i in range(max_degree + 1)]
    values = [fn(x) for x in nodes]
    weights = _lagrange_weights(nodes, power)
    template = values[0]
    coeffs = []
    for k in range(template.truncation):
        acc = template.algebra.zero()
        for w, v in zip(weights, values):
            if w:
                acc = acc + v.coeffs[k].scale(w)
        coeffs.append(acc)
    return Series(template.algebra, template.truncation, coeffs, template.graded_mode)


def linearized_composition(a, b):
    """Part of ``a o (1 + lambda b)`` linear in lambda (b's coefficients tagged by lambda)."""
    _check_pair(a, b)
    return scalar_coefficient(lambda lam: compose(a, b.scale_tail(lam)), 1, a.truncation)


# -- depth, support, associator defect --------------------------------------------


def depth(w):
    for k, x in enumerate(w.coeffs, 1):
        if x:
            return k
    return INFINITY


def support(w):
    """Generator names occurring in w (free algebras only)."""
    alg = w.algebra
    if not alg.is_free:
        raise SupportNeedsFreeAlgebra("support is defined over free algebras")
    names = set()
    for x in w.coeffs:
        for key in x.terms:
            names.update(alg.generators[g][0] for g in key)
    return names


def difference(x, y):
    """Coefficientwise ``x - y`` as a Series (unit means the two agree)."""
    _check_pair(x, y)
    return _result(x, [p - q for p, q in zip(x.coeffs, y.coeffs)], y)


def associator_defect(a, b, c):
    """``(a o b) o c - a o (b o c)`` coefficientwise."""
    return difference(compose(compose(a, b), c), compose(a, compose(b, c)))


# -- random instances -------------------------------------------------------------


def _keys_by_degree(alg):
    cache = getattr(alg, "_keys_by_degree_cache", None)
    if cache is None:
        cache = {}
        for k in alg.basis_keys():
            cache.setdefault(alg.key_degree(k), []).append(k)
        alg._keys_by_degree_cache = cache
    return cache


def random_element(alg, rng, degree=None, max_terms=2, coeff_range=3, zero_prob=0.0):
    """Small random element with integer coefficients in [-coeff_range, coeff_range]."""
    if zero_prob and rng.random() < zero_prob:
        return alg.zero()
    if degree is None:
        keys = alg.basis_keys()
    else:
        keys = _keys_by_degree(alg).get(degree, [])
    if not keys:
        return alg.zero()
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        c = 0
        while c == 0:
            c = rng.randint(-coeff_range, coeff_range)
        k = keys[rng.randrange(len(keys))]
        terms[k] = terms.get(k, 0) + Fraction(c)
    return AlgElt(alg, {k: c for k, c in terms.items() if c})


def random_series(alg, truncation, rng, depth=1, graded_mode=False, max_terms=2,
                  coeff_range=3, zero_prob=0.0):
    """Random series whose first nonzero coefficient sits at ``depth`` (when possible)."""
    coeffs = []
    for k in range(1, truncation + 1):
        if k < depth:
            coeffs.append(alg.zero())
            continue
        deg = k if graded_mode and alg.is_graded else None
        zp = 0.0 if k == depth else zero_prob
        x = random_element(alg, rng, deg, max_terms, coeff_range, zp)
        coeffs.append(x)
    return Series(alg, truncation, coeffs, graded_mode)


def series_from_terms(alg, truncation, terms, graded_mode=False):
    """Build from ``{k: {label: scalar}}``; labels as accepted by ``Algebra.element``."""
    coeffs = {k: alg.element(v) for k, v in terms.items()}
    return Series(alg, truncation, coeffs, graded_mode)


def single(alg, truncation, k, x, graded_mode=False):
    """``1 + x`` with x placed in degree k."""
    if not isinstance(x, AlgElt):
        raise TypeError("algebra element expected")
    return Series(alg, truncation, {k: x}, graded_mode)


__all__ = [
    "INFINITY", "Series", "unit", "compose", "left_divide", "right_divide", "star",
    "star_left_divide", "star_right_divide", "bullet", "linearized_composition",
    "scalar_coefficient", "depth", "support", "associator_defect", "difference",
    "random_element", "random_series", "series_from_terms", "single", "format_series",
    "as_fraction",
]
