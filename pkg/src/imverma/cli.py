"""Command-line interface: ``imverma {nf,apply,gram,verify,graph,singular}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .crystal import crystal_graph
from .pbw import WeightWindow, all_monomials, parse_monomial, straighten
from .shapovalov import gram
from .sweeps import SUITES, SweepConfig, run_suite
from .verma import HighestWeight, ModuleVector, apply_spec, find_singular_vectors

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _range(text: str):
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _weight(args) -> HighestWeight:
    return HighestWeight(Fraction(args.lambda_h), Fraction(args.lambda_d), args.boundary_study)


def _common(p: argparse.ArgumentParser, fmt=("json",)) -> None:
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=fmt, default=fmt[0])


def _weight_flags(p: argparse.ArgumentParser, default_h="1") -> None:
    p.add_argument("--lambda-h", default=default_h)
    p.add_argument("--lambda-d", default="0")
    p.add_argument("--boundary-study", action="store_true", help="allow lambda(h) = 0")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="imverma", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("nf", help="PBW normal form of a word")
    s.add_argument("word", help="monomial literal such as [0,2]")
    s.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")
    _common(s)

    s = sub.add_parser("apply", help="apply operators to a module vector")
    s.add_argument("spec", help='operators applied right to left, e.g. "xm(2) psi(0)"')
    s.add_argument("vector", help="vector JSON file, or - for stdin")
    s.add_argument("--boundary-study", action="store_true")
    _common(s)

    s = sub.add_parser("gram", help="Gram matrix of one weight window")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--index-range", type=_range, default=(-3, 3))
    s.add_argument("--mod-q2", action="store_true", help="also report entries mod q^2")
    _common(s, ("json", "csv"))

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite", help="one of: " + ", ".join(list(SUITES) + ["all"]))
    s.add_argument("--config", help="JSON SweepConfig file (default: $IMVERMA_CONFIG)")
    s.add_argument("--max-len", type=int)
    s.add_argument("--index-range", type=_range)
    s.add_argument("--label-range", type=_range)
    s.add_argument("--lambda-h")
    s.add_argument("--lambda-d")
    s.add_argument("--seed", type=int)
    s.add_argument("--samples", type=int)
    s.add_argument("--boundary-study", action="store_true", default=None)
    _common(s)

    s = sub.add_parser("graph", help="crystal graph of a window")
    s.add_argument("--max-len", type=int, default=2)
    s.add_argument("--index-range", type=_range, default=(-2, 2))
    s.add_argument("--label-range", type=_range, default=(-2, 2))
    s.add_argument("--omega", action="store_true", help="add dashed Omega edges")
    _weight_flags(s)
    _common(s, ("dot", "json"))

    s = sub.add_parser("singular", help="singular vectors in a weight window")
    s.add_argument("--length", type=int, required=True)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--index-range", type=_range, default=(-3, 3))
    s.add_argument("--label-range", type=_range, help="raising labels imposed (default: derived from the window)")
    _weight_flags(s)
    _common(s)
    return p


def cmd_nf(args) -> int:
    e = straighten(parse_monomial(args.word), args.strategy)
    _emit(_dump(e.to_json_obj()), args.out)
    return EXIT_OK


def _read_vector(path: str, boundary: bool) -> ModuleVector:
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        return ModuleVector.from_json_obj(json.loads(text), boundary)
    except (OSError, KeyError, TypeError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read vector: {exc}") from exc


def cmd_apply(args) -> int:
    vec = _read_vector(args.vector, args.boundary_study)
    _emit(_dump(apply_spec(args.spec, vec).to_json_obj()), args.out)
    return EXIT_OK


def cmd_gram(args) -> int:
    lo, hi = args.index_range
    if args.length < 0:
        raise UsageError("--length must be >= 0")
    g = gram(WeightWindow(args.length, args.degree, lo, hi))
    text = g.to_csv() if args.format == "csv" else _dump(g.to_json_obj(args.mod_q2))
    _emit(text, args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite not in SUITES and args.suite != "all":
        raise UsageError(f"unknown suite {args.suite!r}")
    over = {
        "max_length": args.max_len,
        "lambda_h": args.lambda_h,
        "lambda_d": args.lambda_d,
        "seed": args.seed,
        "samples": args.samples,
        "boundary_study": args.boundary_study,
        "output_path": args.out,
    }
    if args.index_range:
        over["index_lo"], over["index_hi"] = args.index_range
    if args.label_range:
        over["label_lo"], over["label_hi"] = args.label_range
    try:
        cfg = SweepConfig.load(args.config, **over)
    except (OSError, json.JSONDecodeError, TypeError) as exc:
        raise UsageError(f"bad config: {exc}") from exc
    report = run_suite(args.suite, cfg)
    _emit(_dump(report), cfg.output_path)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_graph(args) -> int:
    _weight(args)
    lo, hi = args.index_range
    a, b = args.label_range
    if args.max_len < 0:
        raise UsageError("--max-len must be >= 0")
    g = crystal_graph(all_monomials(args.max_len, lo, hi), range(a, b + 1), args.omega)
    _emit(g.to_dot() if args.format == "dot" else g.to_json(), args.out)
    return EXIT_OK


def cmd_singular(args) -> int:
    w = _weight(args)
    lo, hi = args.index_range
    win = WeightWindow(args.length, args.degree, lo, hi)
    labels = None
    if args.label_range:
        labels = range(args.label_range[0], args.label_range[1] + 1)
    vecs = find_singular_vectors(win, w, labels)
    report = {
        "lambda": w.to_json_obj(),
        "window": win.to_json_obj(),
        "dimension": len(vecs),
        "vectors": [v.payload.to_json_obj() for v in vecs],
    }
    _emit(_dump(report), args.out)
    return EXIT_OK


COMMANDS = {
    "nf": cmd_nf,
    "apply": cmd_apply,
    "gram": cmd_gram,
    "verify": cmd_verify,
    "graph": cmd_graph,
    "singular": cmd_singular,
}


_RANGE_FLAGS = ("--index-range", "--label-range")


def _join_ranges(argv):
    # "--index-range -1:1" would otherwise read -1:1 as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _join_ranges(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.cmd](args)
    except (UsageError, ValueError) as exc:
        print(f"imverma {args.cmd}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
