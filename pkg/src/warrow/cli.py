"""Command-line front end.

Inputs are JSON presentations, JSON Gauss codes or signed Gauss-code strings,
read from ``--input FILE`` (repeatable) or stdin.  Exit codes: 0 success,
1 domain error, 2 usage error; ``equiv`` exits 3 when the inputs differ.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import redirect_stderr, redirect_stdout
from concurrent.futures import ThreadPoolExecutor

from . import classify, expand, ftcheck, group, milnor, moves
from .model import (
    GaussCode, Presentation, PresentationError, canonical_arrow_presentation,
    dumps, gauss_from_json, gauss_from_string, presentation_from_json,
)

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_DISTINCT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def max_degree() -> int:
    raw = os.environ.get("WARROW_MAX_DEGREE", "8")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"WARROW_MAX_DEGREE={raw!r} is not an integer") from None
    if value < 2:
        raise UsageError("WARROW_MAX_DEGREE must be at least 2")
    return value


def _cap(value: int, what: str) -> int:
    cap = max_degree()
    if value > cap:
        raise UsageError(f"{what} = {value} exceeds WARROW_MAX_DEGREE = {cap}")
    return value


def parse_input(text: str):
    """Presentation or GaussCode from JSON text or a signed Gauss-code string."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise PresentationError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        kind = obj.get("type")
        if kind == "gauss_code" or (kind is None and "trees" not in obj and obj.get("strands") and isinstance(obj["strands"][0], dict)):
            return gauss_from_json(obj)
        if kind not in (None, "presentation"):
            raise PresentationError(f"type: unknown input type {kind!r}")
        return presentation_from_json(obj)
    if not stripped:
        raise PresentationError("empty input")
    return gauss_from_string(stripped)


def as_presentation(obj) -> Presentation:
    p = canonical_arrow_presentation(obj) if isinstance(obj, GaussCode) else obj
    if p.trees:
        _cap(p.max_degree(), "tree degree")
    return p


def emit(obj) -> str:
    if hasattr(obj, "to_json"):
        obj = obj.to_json()
    return dumps(obj)


# -- commands ------------------------------------------------------------------------

def invariants_of(p: Presentation, kmax: int) -> dict:
    out: dict = {"strands": list(p.diagram.kinds)}
    if p.diagram.is_long_knot():
        d = group.alexander_of(p)
        out["alexander"] = str(d)
        out["alpha"] = group.alpha_coeffs(d, kmax)
    elif p.diagram.is_string_link():
        table = milnor.milnor_table(p, min(p.n, kmax))
        out["milnor"] = {milnor.format_sequence(I): v for I, v in table.items()}
    elif p.diagram.is_knot():
        out["welded_knot"] = classify.welded_knot_invariants(p, kmax)
    else:
        raise PresentationError("mixed open/closed diagrams have no invariants here")
    return out


def cmd_invariants(args, p):
    return emit(invariants_of(p, _cap(args.kmax, "kmax")))


def cmd_alexander(args, p):
    d = group.alexander_of(p)
    return emit({"alexander": d.to_json(), "text": str(d)}) if args.json else str(d)


def cmd_alpha(args, p):
    k = _cap(args.kmax, "kmax")
    return emit({"alpha": {str(i): a for i, a in enumerate(group.alpha_of(p, k), start=2)}})


def cmd_milnor(args, p):
    if args.seq:
        I = milnor.parse_sequence(args.seq)
        _cap(len(I), "sequence length")
        return str(milnor.milnor_mu(p, I))
    if args.all_nonrepeated is None:
        raise UsageError("milnor needs --seq or --all-nonrepeated MAXLEN")
    m = _cap(args.all_nonrepeated, "maxlen")
    table = milnor.milnor_table(p, m)
    return emit({milnor.format_sequence(I): v for I, v in table.items()})


def cmd_expand(args, p):
    return emit(expand.full_expand(p))


def cmd_surgery(args, p):
    g = expand.surgery(p)
    return emit(g) if args.json else g.to_string()


def _read_moves(path: str) -> list:
    with open(path, encoding="utf-8") as fh:
        text = fh.read().strip()
    if not text:
        return []
    if text.startswith("["):
        items = json.loads(text)
    else:
        items = [json.loads(line) for line in text.splitlines() if line.strip()]
    return [moves.MoveSpec.from_json(x) for x in items]


def cmd_moves(args, p):
    specs = _read_moves(args.trace)
    for m in specs:
        if m.truncation_degree is not None:
            _cap(m.truncation_degree, "truncation_degree")
    q, log = moves.trace(p, specs)
    return "\n".join([emit(e) for e in log] + [emit(q)])


def cmd_normalize(args, p):
    if args.mode == "wk":
        if args.k is None:
            raise UsageError("--mode wk needs --k")
        nf = classify.wk_normal_form(p, _cap(args.k, "k"))
    else:
        nf = classify.homotopy_normal_form(p)
    return emit(nf.representative) if args.representative else emit(nf)


def cmd_equiv(args, p, q):
    if args.mode == "wk":
        if args.k is None:
            raise UsageError("--mode wk needs --k")
        d = classify.decide_wk(p, q, _cap(args.k, "k"), args.bound)
    else:
        d = classify.decide_homotopy(p, q)
    return d


def cmd_generate(args):
    if args.Lk is not None:
        p = classify.make_Lk(_cap(args.Lk, "k"), int(args.inv))
        parts = [p] * max(1, args.power)
    elif args.TI is not None:
        if args.n is None:
            raise UsageError("--TI needs --n")
        I = milnor.parse_sequence(args.TI)
        _cap(len(I), "|I|")
        parts = [classify.make_TI(I, args.n, int(args.inv))] * max(1, args.power)
    else:
        raise UsageError("generate needs --Lk K or --TI SEQ --n N")
    from .model import product
    return emit(product(parts))


def cmd_ftcheck(args, g):
    if not isinstance(g, GaussCode):
        raise UsageError("ftcheck needs a Gauss code input")
    v = ftcheck.lookup(args.invariant)
    if args.subset:
        S = [int(x) for x in args.subset.split(",") if x.strip()]
        return emit({"subset": S, "sum": list(ftcheck.alternating_sum(v, g, S, args.limit, args.jobs))})
    from itertools import combinations
    size = args.all_subsets
    if size is None:
        raise UsageError("ftcheck needs --subset IDS or --all-subsets SIZE")
    results = []
    for S in combinations(g.crossings(), size):
        results.append({"subset": list(S), "sum": list(ftcheck.alternating_sum(v, g, S, args.limit))})
    return emit({"invariant": args.invariant, "results": results,
                 "all_zero": all(not any(r["sum"]) for r in results)})


# -- argument parsing ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="warrow", description="w-tree presentations and their invariants")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_input(sp, many=True):
        sp.add_argument("--input", "-i", action="append" if many else "store",
                        help="JSON or Gauss-code file (default: stdin)")
        if many:
            sp.add_argument("--jobs", type=int, default=1, help="parallel workers for several inputs")
        return sp

    sp = with_input(sub.add_parser("invariants", help="all invariants for the input's type"))
    sp.add_argument("--kmax", type=int, default=5)
    sp = with_input(sub.add_parser("alexander", help="normalized Alexander polynomial of a long knot"))
    sp.add_argument("--json", action="store_true")
    sp = with_input(sub.add_parser("alpha", help="alpha_2..alpha_kmax of a long knot"))
    sp.add_argument("--kmax", type=int, required=True)
    sp = with_input(sub.add_parser("milnor", help="welded Milnor invariants of a string link"))
    sp.add_argument("--seq", help="index sequence, e.g. 123 or 1.10.2")
    sp.add_argument("--all-nonrepeated", type=int, metavar="MAXLEN")
    with_input(sub.add_parser("expand", help="full expansion into w-arrows"))
    sp = with_input(sub.add_parser("surgery", help="Gauss code of the surgery"))
    sp.add_argument("--json", action="store_true")
    sp = with_input(sub.add_parser("moves", help="replay a move trace"), many=False)
    sp.add_argument("--trace", required=True, help="JSON array or JSON lines of moves")
    sp = with_input(sub.add_parser("normalize", help="w_k or homotopy normal form"), many=False)
    sp.add_argument("--mode", choices=("wk", "homotopy"), required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--representative", action="store_true", help="print the representative presentation")
    sp = sub.add_parser("equiv", help="decide w_k-equivalence or homotopy; exit 0 equal, 3 distinct")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--mode", choices=("wk", "homotopy"), required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--bound", choices=("theorem", "corollary"), default="theorem")
    sp = sub.add_parser("generate", help="generator presentations")
    sp.add_argument("--Lk", type=int, metavar="K")
    sp.add_argument("--TI", metavar="SEQ")
    sp.add_argument("--n", type=int)
    sp.add_argument("--inv", action="store_true")
    sp.add_argument("--power", type=int, default=1)
    sp = with_input(sub.add_parser("ftcheck", help="finite-type alternating sums"), many=False)
    sp.add_argument("--invariant", required=True, help="alpha<k> or mu<seq>")
    sp.add_argument("--subset", help="comma-separated crossing ids")
    sp.add_argument("--all-subsets", type=int, metavar="SIZE")
    sp.add_argument("--limit", type=int, default=ftcheck.DEFAULT_LIMIT)
    sp.add_argument("--jobs", type=int, default=1)
    return ap


def _read(path) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


_SINGLE = {
    "invariants": cmd_invariants, "alexander": cmd_alexander, "alpha": cmd_alpha,
    "milnor": cmd_milnor, "expand": cmd_expand, "surgery": cmd_surgery,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    # argparse reports to sys.stderr/sys.stdout; route it to the given streams
    try:
        with redirect_stdout(stdout), redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command in _SINGLE:
            paths = args.input or [None]
            fn = _SINGLE[args.command]

            def one(path):
                return fn(args, as_presentation(parse_input(_read(path))))

            if args.jobs > 1 and len(paths) > 1:
                with ThreadPoolExecutor(args.jobs) as pool:
                    outputs = list(pool.map(one, paths))
            else:
                outputs = [one(path) for path in paths]
            print("\n".join(outputs), file=stdout)
        elif args.command == "generate":
            print(cmd_generate(args), file=stdout)
        elif args.command == "equiv":
            p = as_presentation(parse_input(_read(args.first)))
            q = as_presentation(parse_input(_read(args.second)))
            d = cmd_equiv(args, p, q)
            print(emit(d), file=stdout)
            return EXIT_OK if d.equal else EXIT_DISTINCT
        elif args.command == "ftcheck":
            print(cmd_ftcheck(args, parse_input(_read(args.input))), file=stdout)
        else:
            p = as_presentation(parse_input(_read(args.input)))
            handler = {"moves": cmd_moves, "normalize": cmd_normalize}[args.command]
            print(handler(args, p), file=stdout)
    except UsageError as exc:
        print(f"warrow: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except (PresentationError, ValueError, OSError, KeyError, TypeError) as exc:
        print(f"warrow: error: {exc}", file=stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
