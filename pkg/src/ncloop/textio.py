"""Series expressions and JSON documents.

Series syntax (the printer in :mod:`series` produces it)::

    t + a*t^2 - (1/2)*a*b*t^3 + 3*t^2

A term is an optional scalar (``3``, ``3/4`` or ``(-3/4)``), an optional
product of generator or basis labels, and a mandatory ``t^k`` with k >= 2;
``x*t^k`` stands for the coefficient x at index k-1.  A term without labels
is a multiple of the unit and needs a unital algebra.
"""

import json
import os
import re
from fractions import Fraction

from .algebra import (
    FREE_TRUNCATED,
    algebra_from_structure_constants,
    builtin,
    free_truncated_algebra,
    parse_builtin_name,
)
from .errors import BadParams, ParseError, UnknownSymbol
from .series import Series
from .su import GradedElt

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()/])"
)


def _tokenize(text):
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for i, ch in enumerate(m.group(), pos):
                if ch == "\n":
                    line, line_start = line + 1, i + 1
        else:
            out.append((kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    out.append(("end", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text, algebra):
        self.toks = _tokenize(text)
        self.i = 0
        self.algebra = algebra

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, found {got!r}", tok[2], tok[3])
        self.i += 1
        return tok

    def at(self, kind, value=None):
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def scalar(self):
        if self.at("num"):
            return Fraction(self.take()[1])
        self.take("op", "(")
        neg = False
        if self.at("op", "-"):
            self.take()
            neg = True
        val = Fraction(self.take("num")[1])
        self.take("op", ")")
        return -val if neg else val

    def label(self, tok):
        alg = self.algebra
        name = tok[1]
        try:
            if alg.kind == FREE_TRUNCATED:
                return alg.gen(name)
            return alg.basis(alg.key_from_label(name))
        except (KeyError, ValueError, BadParams):
            raise UnknownSymbol(f"unknown symbol {name!r}", tok[2], tok[3]) from None

    def power(self):
        self.take("name", "t")
        self.take("op", "^")
        tok = self.take("num")
        if "/" in tok[1]:
            raise ParseError("exponent must be an integer", tok[2], tok[3])
        k = int(tok[1])
        if k < 2:
            raise ParseError("exponents after the leading t must be >= 2", tok[2], tok[3])
        return k

    def term(self):
        start = self.peek()
        coeff = Fraction(1)
        if self.at("num") or self.at("op", "("):
            coeff = self.scalar()
            if self.at("op", "*"):
                self.take()
            else:
                tok = self.peek()
                raise ParseError("expected '*' after scalar", tok[2], tok[3])
        word = None
        while self.at("name") and self.peek()[1] != "t":
            x = self.label(self.take())
            word = x if word is None else word * x
            self.take("op", "*")
        k = self.power()
        if word is None:
            if self.algebra.unit_key is None:
                raise ParseError("scalar term needs a unital algebra", start[2], start[3])
            word = self.algebra.one()
        return k, word.scale(coeff)

    def series(self):
        self.take("name", "t")
        terms = []
        while not self.at("end"):
            sign = self.take("op")
            if sign[1] not in "+-":
                raise ParseError(f"expected '+' or '-', found {sign[1]!r}", sign[2], sign[3])
            k, x = self.term()
            terms.append((k, -x if sign[1] == "-" else x))
        return terms


def parse_series(text, algebra, truncation=None, graded_mode=False):
    """Parse an expression into a :class:`Series`.

    Without ``truncation`` the largest exponent decides it.  Terms beyond a
    given truncation are dropped.
    """
    terms = _Parser(text, algebra).series()
    if truncation is None:
        truncation = max([k - 1 for k, _ in terms], default=1)
    coeffs = {}
    for k, x in terms:
        idx = k - 1
        if idx > truncation:
            continue
        coeffs[idx] = coeffs[idx] + x if idx in coeffs else x
    return Series(algebra, truncation, coeffs, graded_mode)


# -- JSON --------------------------------------------------------------------------


def rat(value):
    """Rational from int, Fraction or string ``"p/q"``; floats are refused."""
    if isinstance(value, bool) or isinstance(value, float):
        raise BadParams(f"{value!r} is not an exact rational")
    return Fraction(value)


def rat_str(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def algebra_to_json(alg):
    """Algebra document.  Structure constants are keyed ``"left,right"`` by basis label."""
    if alg.builtin_spec is not None:
        name, params = alg.builtin_spec
        return {"kind": "builtin", "name": name, "params": _jsonable(params)}
    if alg.kind == FREE_TRUNCATED:
        return {
            "kind": "free_truncated",
            "name": alg.name,
            "generators": [[n, d] for n, d in alg.generators],
            "max_word_degree": alg.max_word_degree,
            "unital": alg.unital,
        }
    labels = alg.labels
    doc = {
        "kind": "structure_constants",
        "name": alg.name,
        "basis": list(labels),
        "table": {
            f"{labels[i]},{labels[j]}": [[labels[k], rat_str(c)] for k, c in sorted(row.items())]
            for (i, j), row in sorted(alg.table.items())
        },
    }
    if alg.grading is not None:
        doc["grading"] = {labels[k]: d for k, d in sorted(alg.grading.items())}
    return doc


def _jsonable(v):
    if isinstance(v, tuple):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


def _basis_ref(x, labels):
    """A basis reference in a table: a label, or an index (int or digit string)."""
    if isinstance(x, int) or (isinstance(x, str) and x not in labels and x.isdigit()):
        return int(x)
    return x


def algebra_from_json(doc):
    """Inverse of :func:`algebra_to_json`; a bare string is a builtin name or a file path."""
    if isinstance(doc, str):
        return load_algebra(doc)
    kind = doc.get("kind")
    if kind == "builtin":
        return builtin(doc["name"], **doc.get("params", {}))
    if kind == "free_truncated":
        return free_truncated_algebra(
            [tuple(g) for g in doc["generators"]],
            doc["max_word_degree"],
            unital=doc.get("unital", False),
            name=doc.get("name", ""),
        )
    if kind == "structure_constants":
        labels = list(doc.get("basis", doc.get("labels", [])))
        raw = doc["table"]
        entries = raw.items() if isinstance(raw, dict) else (((l, r), row) for l, r, row in raw)
        table = {}
        for pair, row in entries:
            if isinstance(pair, str):
                pair = [p.strip() for p in pair.split(",")]
            left, right = (_basis_ref(p, labels) for p in pair)
            items = row.items() if isinstance(row, dict) else row
            table[(left, right)] = {_basis_ref(k, labels): rat(c) for k, c in items}
        grading = doc.get("grading")
        if grading is not None:
            grading = {_basis_ref(k, labels): d for k, d in grading.items()}
        return algebra_from_structure_constants(
            labels,
            table,
            grading=grading,
            name=doc.get("name", ""),
            check_associativity=doc.get("check_associativity", True),
        )
    raise BadParams(f"unknown algebra kind {kind!r}")


def load_algebra(spec):
    """A builtin name like ``split_null:2`` or a path to a JSON algebra document."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return algebra_from_json(json.load(fh))
    return parse_builtin_name(spec)


def _word_labels(alg, key):
    if alg.kind == FREE_TRUNCATED:
        return [alg.generators[g][0] for g in key]
    return [] if key == alg.unit_key else [alg.labels[key]]


def element_to_json(x):
    """List of ``[rational, [labels...]]`` terms; an empty word is the unit."""
    alg = x.algebra
    return [[rat_str(c), _word_labels(alg, k)] for k, c in sorted(x.terms.items(), key=lambda kc: str(kc[0]))]


def element_from_json(doc, alg):
    """Accepts the term list of :func:`element_to_json` or a ``{label: rational}`` map."""
    items = doc.items() if isinstance(doc, dict) else ((w, c) for c, w in doc)
    acc = alg.zero()
    for word, c in items:
        if isinstance(word, str):
            word = word.split("*") if alg.kind == FREE_TRUNCATED else [word]
        term = alg.one() if not word else None
        for label in word:
            try:
                x = alg.gen(label) if alg.kind == FREE_TRUNCATED else alg.basis(alg.key_from_label(label))
            except (KeyError, ValueError, BadParams):
                raise UnknownSymbol(f"unknown symbol {label!r}") from None
            term = x if term is None else term * x
        acc = acc + term.scale(rat(c))
    return acc


def series_to_json(s):
    return {
        "algebra": algebra_to_json(s.algebra),
        "truncation": s.truncation,
        "graded_mode": s.graded_mode,
        "coeffs": {str(k): element_to_json(x) for k, x in enumerate(s.coeffs, 1) if x},
        "text": str(s),
    }


def series_from_json(doc, alg=None):
    """Series document; without ``coeffs`` the ``text`` field is parsed."""
    alg = alg or algebra_from_json(doc["algebra"])
    T = int(doc["truncation"])
    graded_mode = bool(doc.get("graded_mode", False))
    if "coeffs" not in doc and "text" in doc:
        return parse_series(doc["text"], alg, T, graded_mode)
    coeffs = {int(k): element_from_json(v, alg) for k, v in doc.get("coeffs", {}).items()}
    return Series(alg, T, coeffs, graded_mode)


def graded_to_json(g):
    return {"degree": g.degree, "value": element_to_json(g.value)}


def graded_from_json(doc, alg):
    return GradedElt(int(doc["degree"]), element_from_json(doc["value"], alg))


__all__ = [
    "parse_series", "rat", "rat_str", "algebra_to_json", "algebra_from_json", "load_algebra",
    "element_to_json", "element_from_json", "series_to_json", "series_from_json",
    "graded_to_json", "graded_from_json",
]
