"""Exact-rational associative coefficient algebras.

Two presentations are supported:

* structure constants: a finite basis ``e_0 .. e_{d-1}`` and a table
  ``(i, j) -> {k: c}`` with ``e_i e_j = sum c e_k``;
* truncated free algebras: words in graded generators, with every word whose
  total degree exceeds ``max_word_degree`` sent to zero.

Scalars are :class:`fractions.Fraction` throughout.  Nothing here ever rounds.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import (
    AlgebraMismatch,
    AssociativityViolation,
    BadParams,
    EmptyGenerators,
    GradingViolation,
)

STRUCTURE_CONSTANTS = "structure_constants"
FREE_TRUNCATED = "free_truncated"


def as_fraction(value):
    """Coerce ints, Fractions and ``"p/q"`` strings.  Floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"exact scalar expected, got {type(value).__name__}")


class Algebra:
    """A finite presentation of an associative algebra over Q.

    Basis elements are addressed by *keys*: ints for structure-constant
    algebras, tuples of generator indices (words) for free algebras.
    """

    def __init__(self, kind, name=""):
        self.kind = kind
        self.name = name
        self.unit_key = None
        self.grading = None
        # structure constants
        self.labels = []
        self.table = {}
        # free truncated
        self.generators = []
        self.max_word_degree = None
        self.unital = False
        self._word_degree = {}
        self.builtin_spec = None

    # -- basis -------------------------------------------------------------

    @property
    def dim(self):
        return len(self.labels) if self.kind == STRUCTURE_CONSTANTS else len(self.basis_keys())

    @property
    def is_free(self):
        return self.kind == FREE_TRUNCATED

    @property
    def is_graded(self):
        return self.is_free or self.grading is not None

    def basis_keys(self):
        if self.kind == STRUCTURE_CONSTANTS:
            return list(range(len(self.labels)))
        return _free_words(tuple(d for _, d in self.generators), self.max_word_degree, self.unital)

    def key_degree(self, key):
        if self.is_free:
            deg = self._word_degree.get(key)
            if deg is None:
                deg = sum(self.generators[g][1] for g in key)
                self._word_degree[key] = deg
            return deg
        if self.grading is None:
            return None
        return self.grading[key]

    def key_label(self, key):
        if self.is_free:
            if not key:
                return "1"
            return "*".join(self.generators[g][0] for g in key)
        return self.labels[key]

    def key_from_label(self, label):
        """Inverse of :meth:`key_label` for a single basis label or generator word."""
        if self.is_free:
            if label == "1":
                if not self.unital:
                    raise KeyError(label)
                return ()
            names = {n: i for i, (n, _) in enumerate(self.generators)}
            return tuple(names[p] for p in label.split("*"))
        return self.labels.index(label)

    def generator_index(self, name):
        for i, (n, _) in enumerate(self.generators):
            if n == name:
                return i
        raise KeyError(name)

    # -- products ------------------------------------------------------------

    def mul_keys(self, a, b):
        """Product of two basis elements as a ``{key: Fraction}`` dict."""
        if self.is_free:
            if self.key_degree(a) + self.key_degree(b) > self.max_word_degree:
                return {}
            return {a + b: Fraction(1)}
        return self.table.get((a, b), {})

    # -- element constructors ------------------------------------------------

    def zero(self):
        return AlgElt(self, {})

    def basis(self, key):
        if isinstance(key, str):
            key = self.key_from_label(key)
        return AlgElt(self, {key: Fraction(1)})

    def gen(self, name):
        if not self.is_free:
            return self.basis(name)
        return AlgElt(self, {(self.generator_index(name),): Fraction(1)})

    def one(self):
        if self.unit_key is None:
            raise BadParams(f"algebra {self.name!r} has no unit")
        return AlgElt(self, {self.unit_key: Fraction(1)})

    def element(self, terms):
        """Build an element from ``{key_or_label: scalar}``."""
        out = {}
        for k, c in terms.items():
            if isinstance(k, str):
                k = self.key_from_label(k)
            c = as_fraction(c)
            if c:
                out[k] = out.get(k, 0) + c
        return AlgElt(self, {k: c for k, c in out.items() if c})

    def __repr__(self):
        return f"Algebra({self.kind}, {self.name!r}, dim={self.dim})"


@lru_cache(maxsize=None)
def _free_words(degrees, max_degree, unital):
    words = [()] if unital else []
    frontier = [((), 0)]
    while frontier:
        nxt = []
        for w, d in frontier:
            for g, gd in enumerate(degrees):
                if d + gd <= max_degree:
                    nxt.append((w + (g,), d + gd))
        words.extend(w for w, _ in nxt)
        frontier = nxt
    return words


class AlgElt:
    """Sparse exact linear combination of basis keys of one :class:`Algebra`."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise AlgebraMismatch(
                f"elements of {self.algebra.name!r} and {other.algebra.name!r} cannot be combined"
            )

    def __add__(self, other):
        if not isinstance(other, AlgElt):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return AlgElt(self.algebra, terms)

    def __neg__(self):
        return AlgElt(self.algebra, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, AlgElt):
            return NotImplemented
        return self + (-other)

    def scale(self, s):
        s = as_fraction(s)
        if not s:
            return AlgElt(self.algebra, {})
        return AlgElt(self.algebra, {k: s * c for k, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, AlgElt):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        alg = self.algebra
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                for k, c in alg.mul_keys(ka, kb).items():
                    out[k] = out.get(k, 0) + ca * cb * c
        return AlgElt(alg, {k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, AlgElt):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.terms.items())))

    def degrees(self):
        return {self.algebra.key_degree(k) for k in self.terms}

    def is_homogeneous(self, degree):
        return all(self.algebra.key_degree(k) == degree for k in self.terms)

    def homogeneous_part(self, degree):
        return AlgElt(
            self.algebra,
            {k: c for k, c in self.terms.items() if self.algebra.key_degree(k) == degree},
        )

    def coefficient(self, key):
        if isinstance(key, str):
            key = self.algebra.key_from_label(key)
        return self.terms.get(key, Fraction(0))

    def __repr__(self):
        return format_element(self)

    __str__ = __repr__


def format_element(x):
    if not x.terms:
        return "0"
    alg = x.algebra
    keys = sorted(x.terms, key=lambda k: (_sort_degree(alg, k), _sort_key(k)))
    parts = []
    for k in keys:
        c = x.terms[k]
        label = alg.key_label(k)
        mag = abs(c)
        if mag == 1:
            body = label
        elif mag.denominator == 1:
            body = f"{mag.numerator}*{label}"
        else:
            body = f"({mag})*{label}"
        parts.append(("- " if c < 0 else "+ ") + body)
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[1:]


def _sort_degree(alg, k):
    d = alg.key_degree(k)
    return 0 if d is None else d


def _sort_key(k):
    return (len(k), k) if isinstance(k, tuple) else (0, (k,))


# -- constructors ------------------------------------------------------------


def algebra_from_structure_constants(labels, table, grading=None, name="", check_associativity=True):
    """Validate and wrap a structure-constant table.

    ``table`` maps ``(i, j)`` (indices or labels) to ``{k: scalar}``.  Missing
    entries are zero products.  ``grading`` maps index or label to an integer.
    """
    labels = list(labels)
    if not labels:
        raise BadParams("empty basis")
    if len(set(labels)) != len(labels):
        raise BadParams("duplicate basis labels")
    index = {lab: i for i, lab in enumerate(labels)}

    def idx(k):
        if isinstance(k, str):
            if k not in index:
                raise BadParams(f"unknown basis label {k!r}")
            return index[k]
        if not 0 <= k < len(labels):
            raise BadParams(f"basis index {k} out of range")
        return k

    alg = Algebra(STRUCTURE_CONSTANTS, name)
    alg.labels = labels
    for (i, j), vec in table.items():
        row = {}
        for k, c in vec.items():
            c = as_fraction(c)
            if c:
                row[idx(k)] = row.get(idx(k), 0) + c
        row = {k: c for k, c in row.items() if c}
        if row:
            alg.table[(idx(i), idx(j))] = row
    if grading is not None:
        alg.grading = {idx(k): int(d) for k, d in grading.items()}
        if len(alg.grading) != len(labels):
            raise GradingViolation("grading must assign a degree to every basis element")
        for (i, j), row in alg.table.items():
            want = alg.grading[i] + alg.grading[j]
            for k in row:
                if alg.grading[k] != want:
                    raise GradingViolation(
                        f"{labels[i]}*{labels[j]} has a component {labels[k]} outside degree {want}",
                        triple=(labels[i], labels[j], labels[k]),
                    )
    if check_associativity:
        check_associativity_table(alg)
    alg.unit_key = _find_unit(alg)
    return alg


def check_associativity_table(alg):
    n = len(alg.labels)
    basis = [alg.basis(i) for i in range(n)]
    for i, j, k in product(range(n), repeat=3):
        x, y, z = basis[i], basis[j], basis[k]
        if (x * y) * z != x * (y * z):
            names = (alg.labels[i], alg.labels[j], alg.labels[k])
            raise AssociativityViolation(
                "({0}{1}){2} != {0}({1}{2})".format(*names), triple=names
            )


def _find_unit(alg):
    n = len(alg.labels)
    for u in range(n):
        ok = True
        for i in range(n):
            if alg.mul_keys(u, i) != {i: 1} or alg.mul_keys(i, u) != {i: 1}:
                ok = False
                break
        if ok:
            return u
    return None


def free_truncated_algebra(generators, max_word_degree, unital=False, name=""):
    """Free associative algebra on graded generators modulo words of degree > max."""
    generators = [(str(n), int(d)) for n, d in generators]
    if not generators:
        raise EmptyGenerators("at least one generator is required")
    if len({n for n, _ in generators}) != len(generators):
        raise BadParams("duplicate generator names")
    if any(d < 1 for _, d in generators):
        raise BadParams("generator degrees must be >= 1")
    if max_word_degree < max(d for _, d in generators):
        raise BadParams("max_word_degree is below a generator degree")
    for n, _ in generators:
        if not n or "*" in n or n == "1":
            raise BadParams(f"bad generator name {n!r}")
    alg = Algebra(FREE_TRUNCATED, name or "free")
    alg.generators = generators
    alg.max_word_degree = int(max_word_degree)
    alg.unital = bool(unital)
    if unital:
        alg.unit_key = ()
    return alg


# -- built-in examples -----------------------------------------------------


def upper_triangular(n):
    """Strictly upper triangular n x n matrices, graded by ``deg E_ij = j - i``."""
    if n < 2:
        raise BadParams("upper_triangular needs n >= 2")
    sep = "" if n < 10 else "_"
    pairs = [(i, j) for k in range(1, n) for i in range(1, n - k + 1) for j in [i + k]]
    labels = [f"E{i}{sep}{j}" for i, j in pairs]
    pos = {p: a for a, p in enumerate(pairs)}
    table = {}
    for (i, j), a in pos.items():
        for (k, l), b in pos.items():
            if j == k:
                table[(a, b)] = {pos[(i, l)]: 1}
    grading = {a: j - i for (i, j), a in pos.items()}
    return algebra_from_structure_constants(labels, table, grading, name=f"upper_triangular({n})")


def matrix_algebra(n):
    """Full matrix algebra M_n(Q), ungraded and unital."""
    if n < 1:
        raise BadParams("matrix needs n >= 1")
    sep = "" if n < 10 else "_"
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    labels = [f"E{i}{sep}{j}" for i, j in pairs]
    pos = {p: a for a, p in enumerate(pairs)}
    table = {}
    for (i, j), a in pos.items():
        for (k, l), b in pos.items():
            if j == k:
                table[(a, b)] = {pos[(i, l)]: 1}
    return algebra_from_structure_constants(labels, table, name=f"matrix({n})")


def split_null(n):
    """Split-null extension Q[e]/(e^{n+1} - e^n) + M, M = span(v^0..v^{n-1}).

    ``e v^i = v^{i+1}`` (``v^n = 0``), ``v^i e = v^i``, ``v^i v^j = 0``.
    """
    if n < 1:
        raise BadParams("split_null needs n >= 1")
    labels = ["one", "e"] + [f"e{a}" for a in range(2, n + 1)] + [f"v{i}" for i in range(n)]
    epow = list(range(n + 1))  # e^a sits at index a (e^0 = one)
    v = [n + 1 + i for i in range(n)]
    table = {}
    for a in range(n + 1):
        for b in range(n + 1):
            table[(a, b)] = {epow[min(a + b, n)]: 1}
        for i in range(n):
            if i + a < n:
                table[(a, v[i])] = {v[i + a]: 1}
            table[(v[i], a)] = {v[i]: 1}
    return algebra_from_structure_constants(labels, table, name=f"split_null({n})")


def ev_algebra():
    """The two-dimensional algebra e^2 = e, ev = 0, ve = v, v^2 = 0."""
    return algebra_from_structure_constants(
        ["e", "v"], {("e", "e"): {"e": 1}, ("v", "e"): {"v": 1}}, name="ev"
    )


def laurent_label(i):
    return f"t{i}" if i >= 0 else f"tm{-i}"


def laurent_window(a, b):
    """Laurent monomials t^a..t^b with products leaving the window set to zero.

    A window straddling 0 is not associative (``(t^2 t^2) t^-2 = 0`` but
    ``t^2 (t^2 t^-2) = t^2`` in a window ending at 3), so the construction
    check is skipped there; it is associative on triples whose partial
    products stay inside.
    """
    if a > b:
        raise BadParams("laurent_window needs a <= b")
    exps = list(range(a, b + 1))
    labels = [laurent_label(i) for i in exps]
    table = {}
    for x, i in enumerate(exps):
        for y, j in enumerate(exps):
            if a <= i + j <= b:
                table[(x, y)] = {i + j - a: 1}
    grading = {x: i for x, i in enumerate(exps)}
    return algebra_from_structure_constants(
        labels, table, grading, name=f"laurent_window({a},{b})",
        check_associativity=(a >= 0 or b <= 0),
    )


@lru_cache(maxsize=None)
def _builtin_cached(name, params):
    p = dict(params)
    if name in ("upper_triangular", "ut"):
        alg = upper_triangular(int(p.get("n", 3)))
    elif name == "split_null":
        alg = split_null(int(p.get("n", 2)))
    elif name in ("ev", "ev_algebra"):
        alg = ev_algebra()
    elif name in ("laurent_window", "laurent"):
        alg = laurent_window(int(p.get("a", -3)), int(p.get("b", 3)))
    elif name == "matrix":
        alg = matrix_algebra(int(p.get("n", 2)))
    elif name == "free":
        gens = tuple(tuple(g) for g in p.get("generators", (("a", 1), ("b", 1))))
        alg = free_truncated_algebra(
            gens, int(p.get("max_word_degree", 3)), unital=bool(p.get("unital", False))
        )
    else:
        raise BadParams(f"unknown builtin algebra {name!r}")
    alg.builtin_spec = (name, p)
    return alg


def builtin(name, **params):
    """Named example algebras.  Identical calls return the identical object."""
    frozen = tuple(sorted((k, _freeze(v)) for k, v in params.items()))
    return _builtin_cached(name, frozen)


def _freeze(v):
    if isinstance(v, list):
        return tuple(_freeze(x) for x in v)
    return v


def parse_builtin_name(text):
    """``"split_null:2"``, ``"laurent_window:-4,4"``, ``"ev"`` -> Algebra."""
    name, _, arg = text.partition(":")
    args = [int(a) for a in arg.split(",") if a.strip()] if arg else []
    if name in ("upper_triangular", "ut", "split_null", "matrix"):
        return builtin(name, **({"n": args[0]} if args else {}))
    if name in ("laurent_window", "laurent"):
        return builtin(name, **({"a": args[0], "b": args[1]} if args else {}))
    return builtin(name)


# -- predicates --------------------------------------------------------------


def _basis_elements(alg):
    return [alg.basis(k) for k in alg.basis_keys()]


def check_s_comm_ideal(alg):
    """Decide ``S[S,S] = 0`` and ``[S,S]S^3 = 0`` on basis tuples.

    Returns a dict with both booleans and, for each failing predicate, the
    first witness tuple (basis labels).
    """
    basis = _basis_elements(alg)
    comms = []
    for y in basis:
        for z in basis:
            c = y * z - z * y
            if c:
                comms.append(((y, z), c))

    s_zero, s_witness = True, None
    for x in basis:
        for (y, z), c in comms:
            if x * c:
                s_zero = False
                s_witness = tuple(str(w) for w in (x, y, z))
                break
        if not s_zero:
            break

    s3_zero, s3_witness = True, None
    for (x, y), c in comms:
        for u in basis:
            cu = c * u
            if not cu:
                continue
            for v in basis:
                cuv = cu * v
                if not cuv:
                    continue
                for w in basis:
                    if cuv * w:
                        s3_zero = False
                        s3_witness = tuple(str(t) for t in (x, y, u, v, w))
                        break
                if not s3_zero:
                    break
            if not s3_zero:
                break
        if not s3_zero:
            break

    return {
        "s_brackets_zero": s_zero,
        "brackets_s3_zero": s3_zero,
        "s_witness": s_witness,
        "s3_witness": s3_witness,
    }


def same_algebra(*elts):
    alg = elts[0].algebra
    for e in elts[1:]:
        if e.algebra is not alg:
            raise AlgebraMismatch("operands live in different algebras")
    return alg
