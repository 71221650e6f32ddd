"""Command-line front end.

Exit codes: 0 success, 1 a mathematical check failed, 2 usage or input error.
"""

import argparse
import json
import os
import sys

from .algebra import builtin, free_truncated_algebra
from .errors import Inconsistent, NCLoopError
from .lie import (
    check_st_identity,
    jacobi_check,
    sabinin_axioms_check,
    spanning_set,
    window_admissible,
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
    klopsch_evaluate,
    klopsch_witness,
    n_sequence_check,
    p_nm_expr,
)
from .series import compose, depth, left_divide, right_divide, star, star_left_divide, star_right_divide
from .su import GradedElt, sabinin_binary, sabinin_closed
from .textio import (
    algebra_from_json,
    graded_from_json,
    graded_to_json,
    load_algebra,
    parse_series,
    rat_str,
    series_from_json,
    series_to_json,
)

DEFAULT_TRUNCATION = 6
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _ints(text):
    return [int(x) for x in text.split(",") if x.strip()]


def _algebra(args):
    if getattr(args, "generators", None):
        gens = []
        for part in args.generators.split(","):
            name, _, deg = part.partition(":")
            gens.append((name.strip(), int(deg or 1)))
        top = args.max_word_degree or args.truncation
        return free_truncated_algebra(gens, top, unital=args.unital)
    return load_algebra(args.algebra)


def _series(text, alg, args):
    if os.path.exists(text):
        with open(text) as fh:
            return series_from_json(json.load(fh), alg)
    return parse_series(text, alg, args.truncation, args.graded)


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


# -- subcommands -------------------------------------------------------------------


def cmd_compose(args):
    alg = _algebra(args)
    f, g = _series(args.f, alg, args), _series(args.g, alg, args)
    h = compose(f, g)
    _emit(args, series_to_json(h), str(h))
    return 0


def cmd_star(args):
    alg = _algebra(args)
    f, g = _series(args.f, alg, args), _series(args.g, alg, args)
    h = star(f, g)
    _emit(args, series_to_json(h), str(h))
    return 0


def cmd_divide(args):
    alg = _algebra(args)
    x, y = _series(args.x, alg, args), _series(args.y, alg, args)
    if args.product == "star":
        out = star_left_divide(x, y) if args.side == "left" else star_right_divide(x, y)
    else:
        out = left_divide(x, y) if args.side == "left" else right_divide(x, y)
    _emit(args, series_to_json(out), str(out))
    return 0


def _parse_elts(text, alg):
    """``label@degree`` items separated by commas; ``;`` separates I from (b, c)."""
    out = []
    for item in text.replace(";", ",").split(","):
        item = item.strip()
        if not item:
            continue
        label, _, deg = item.partition("@")
        if not deg:
            raise UsageError(f"element {item!r} needs a degree: label@degree")
        out.append(GradedElt(int(deg), alg.basis(alg.key_from_label(label))))
    return out


def cmd_bracket(args):
    if args.kind == "filtration":
        degs = _ints(args.I)
        if degs:
            fb = filtration_bracket(degs, args.deg_b, args.deg_c, args.truncation)
            closed = sabinin_closed(fb.xs, fb.y, fb.z)
            value = fb.value
        else:
            value, y, z = commutator_bracket(args.deg_b, args.deg_c, args.truncation)
            closed = sabinin_binary(z, y)
        agree = value.value == closed.value
        payload = {"loop": graded_to_json(value), "closed": graded_to_json(closed), "agree": agree}
        _emit(args, payload, f"loop:   {value}\nclosed: {closed}\nagree:  {agree}")
        return 0 if agree else 1

    if args.elts:
        alg = load_algebra(args.algebra)
        if os.path.exists(args.elts):
            with open(args.elts) as fh:
                elts = [graded_from_json(d, alg) for d in json.load(fh)]
        else:
            elts = _parse_elts(args.elts, alg)
        if len(elts) < 2:
            raise UsageError("need at least the two tail arguments b, c")
        xs, b, c = elts[:-2], elts[-2], elts[-1]
    else:
        degs = _ints(args.I)
        gens = [(f"a{i + 1}", d) for i, d in enumerate(degs)] + [("b", args.deg_b), ("c", args.deg_c)]
        alg = free_truncated_algebra(gens, sum(d for _, d in gens))
        xs = [GradedElt(d, alg.gen(f"a{i + 1}")) for i, d in enumerate(degs)]
        b, c = GradedElt(args.deg_b, alg.gen("b")), GradedElt(args.deg_c, alg.gen("c"))
    value = sabinin_closed(xs, b, c) if xs else sabinin_binary(b, c)
    _emit(args, graded_to_json(value), str(value))
    return 0


_BASE_NAMES = {"commutator": COMMUTATOR, "comm": COMMUTATOR, "associator": ASSOCIATOR, "assoc": ASSOCIATOR}


def _word(args):
    name = args.base or args.word
    if name.startswith("P:"):
        n, m = _ints(name[2:])
        return p_nm_expr(n, m)
    if name not in _BASE_NAMES:
        raise UsageError(f"unknown word {name!r}")
    return DeviationExpr(_BASE_NAMES[name], tuple(_ints(args.indices or "")))


def _load_args(path, args):
    """A JSON list of series: expression strings or series documents."""
    with open(path) as fh:
        items = json.load(fh)
    if not isinstance(items, list) or not items:
        raise UsageError("--args needs a non-empty JSON list of series")
    if args.generators or args.algebra != "free":
        alg = _algebra(args)
    elif isinstance(items[0], dict):
        alg = algebra_from_json(items[0]["algebra"])
    else:
        raise UsageError("expression arguments need --algebra or --generators")
    out = []
    for item in items:
        if isinstance(item, str):
            out.append(parse_series(item, alg, args.truncation, args.graded))
        else:
            out.append(series_from_json(item, alg))
    return out


def cmd_deviation(args):
    word = _word(args)
    if args.args:
        series = _load_args(args.args, args)
        if len(series) != word.arity:
            raise UsageError(f"{word} takes {word.arity} arguments, got {len(series)}")
        value = word(*series)
        payload = series_to_json(value)
        payload["depth"] = str(depth(value))
        _emit(args, payload, f"{value}\ndepth: {depth(value)}")
        return 0
    depths = _ints(args.depths) if args.depths else [1] * word.arity
    if len(depths) != word.arity:
        raise UsageError(f"{word} takes {word.arity} arguments, got {len(depths)} depths")
    alg = _algebra(args)
    T = max(args.truncation, sum(depths))
    rep = n_sequence_check(word, depths, args.samples, alg, T, seed=args.seed, graded_mode=args.graded)
    rep["word"] = repr(word)
    rep["truncation"] = T
    text = (
        f"{word} depths {depths}: {'PASS' if rep['passed'] else 'FAIL'} "
        f"({rep['samples']} samples, seed {rep['seed']}, min slack {rep['min_slack']})"
    )
    _emit(args, rep, text)
    return 0 if rep["passed"] else 1


def _report_text(rep):
    parts = [rep["status"]]
    for key in ("axiom", "witness", "value"):
        if key in rep:
            parts.append(f"{key}: {rep[key]}")
    return "  ".join(str(p) for p in parts)


def cmd_identity(args):
    if args.kind == "st":
        rep = check_st_identity(load_algebra(args.algebra), args.n, args.tmax)
    elif args.kind == "jacobi":
        if args.laurent:
            a, b = _ints(args.laurent)
            L = builtin("laurent_window", a=a, b=b)
            gens = [GradedElt(L.key_degree(k), L.basis(k)) for k in L.basis_keys()]
            rep = jacobi_check(sabinin_binary, gens, window_admissible(a, b))
        else:
            alg = load_algebra(args.algebra)
            rep = jacobi_check(wronskian_bracket, spanning_set(alg, args.tmax))
    else:
        rep = sabinin_axioms_check(
            load_algebra(args.algebra), args.max_arity, tuple(_ints(args.degrees))
        )
    _emit(args, rep, _report_text(rep))
    return 0 if rep["status"] == "PASS" else 1


def cmd_klopsch(args):
    lam, mu = klopsch_witness(args.n, args.m, args.target)
    ok = klopsch_check(args.n, args.m, args.target, lam, mu)
    product = klopsch_evaluate(args.n, args.m, lam, mu)
    payload = {
        "n": args.n,
        "m": args.m,
        "target": args.target,
        "lambda": rat_str(lam),
        "mu": rat_str(mu),
        "product": str(product),
        "reproduces_target": ok,
    }
    _emit(args, payload, f"lambda = {lam}, mu = {mu}\n{product}\nreproduces target: {ok}")
    return 0 if ok else 1


def cmd_check_group(args):
    alg = _algebra(args)
    rep = check_group(alg, args.truncation, args.samples, args.seed)
    text = f"{rep['verdict']} (seed {rep['seed']}, {rep['samples']} samples)"
    if rep["witness"]:
        text += "\nwitness:\n  " + "\n  ".join(rep["witness"])
    _emit(args, rep, text)
    return 0


def cmd_selftest(args):
    from .acceptance import run_selftest

    only = _ints(args.only) if args.only else None
    code, text = run_selftest(only, as_json=args.json)
    print(text)
    return code


# -- parser --------------------------------------------------------------------------


def _common(p, samples=200):
    p.add_argument("--algebra", default="free", help="builtin name (e.g. split_null:2) or JSON file")
    p.add_argument("--generators", help="free algebra generators, e.g. a:1,b:2")
    p.add_argument("--max-word-degree", type=int, help="word bound for --generators (default: T)")
    p.add_argument("--unital", action="store_true", help="free algebra with unit")
    p.add_argument("--truncation", "-T", type=int, default=DEFAULT_TRUNCATION)
    p.add_argument("--graded", action="store_true", help="coefficient k must have degree k")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--samples", type=int, default=samples)
    p.add_argument("--json", action="store_true", help="print JSON")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ncloop", description="Substitution loops of noncommutative power series."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="f o g")
    p.add_argument("f")
    p.add_argument("g")
    _common(p)
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("star", help="f * g")
    p.add_argument("f")
    p.add_argument("g")
    _common(p)
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("divide", help="left: x\\y, right: x/y")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--product", choices=("compose", "star"), default="compose")
    _common(p)
    p.set_defaults(func=cmd_divide)

    p = sub.add_parser("bracket", help="bracket from the closed form or the loop filtration")
    p.add_argument("kind", choices=("closed", "filtration"))
    p.add_argument("--I", "--degrees", dest="I", default="", help="degrees of the leading arguments, e.g. 1,2")
    p.add_argument("--deg-b", "--y", dest="deg_b", type=int, default=1, help="degree of the first tail argument")
    p.add_argument("--deg-c", "--z", dest="deg_c", type=int, default=1, help="degree of the second tail argument")
    p.add_argument("--elts", help="JSON file or 'label@deg,...;label@deg,label@deg'")
    _common(p)
    p.set_defaults(func=cmd_bracket, truncation=None)

    p = sub.add_parser("deviation", help="depth check of a loop word on random series")
    p.add_argument("--word", default=ASSOCIATOR, help="commutator, associator or P:n,m")
    p.add_argument("--base", help="same as --word; also accepts comm and assoc")
    p.add_argument("--args", help="JSON list of series: evaluate the word on them")
    p.add_argument("--indices", help="deviation indices, e.g. 1,2")
    p.add_argument("--depths", help="argument depths, e.g. 1,1,2")
    _common(p, samples=100)
    p.set_defaults(func=cmd_deviation)

    p = sub.add_parser("identity", help="St_n, Jacobi or bracket axioms")
    p.add_argument("kind", choices=("st", "jacobi", "sabinin-axioms"))
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--tmax", type=int, default=3, help="t-degree bound of the spanning set")
    p.add_argument("--laurent", help="window a,b: Jacobi for the Laurent binary bracket")
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--degrees", default="0", help="degrees for ungraded algebras, e.g. -1,0")
    _common(p)
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("klopsch", help="witness scalars for the normal subloop computation")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--target", choices=("ab", "ba"), default="ba")
    _common(p)
    p.set_defaults(func=cmd_klopsch)

    p = sub.add_parser("check-group", help="is the substitution loop a group?")
    _common(p)
    p.set_defaults(func=cmd_check_group, truncation=5)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--only", help="comma separated criterion numbers")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except Inconsistent as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except (NCLoopError, UsageError, KeyError, ValueError, OSError) as exc:
        code = getattr(exc, "code", "USAGE")
        print(f"error: {code}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
