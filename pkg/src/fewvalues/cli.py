"""Command-line front end: construct words, verify images, emit witnesses,
width certificates, and parse word expressions.

Exit codes: 0 success/pass, 1 verification failure, 2 usage or parameter
error.  JSON output is the stable contract; text output is for humans.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .altwords import (
    NoLadderError,
    UnsupportedGroupError,
    WitnessSearchError,
    construct_word_alt,
    construct_word_pcycle,
    construct_word_sym,
    width_certificate,
    witness_alt,
)
from .harness import (
    GroupTooLargeError,
    verify_image_alt,
    verify_image_sl,
    verify_image_sym,
)
from .slwords import WitnessSearchError as SLWitnessSearchError
from .slwords import construct_word_sl, witness_sl
from .words import WordSyntaxError, arity, free_reduce, parse_word, print_word


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fewvalues", description=__doc__)
    ap.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    # accept the output flags after the subcommand too (SUPPRESS keeps the
    # subparser from clobbering top-level values with its defaults)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE", default=argparse.SUPPRESS)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="construct a word for a group family", parents=[common])
    c.add_argument("family", choices=("alt", "sym", "pcycle", "sl"))
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--q", type=int, help="field size (sl)")
    c.add_argument("--p", type=int, help="target cycle length (pcycle)")

    v = sub.add_parser("verify", help="verify the word image claim", parents=[common])
    v.add_argument("family", choices=("alt", "sym", "sl"))
    v.add_argument("--n", type=int, required=True)
    v.add_argument("--q", type=int)
    v.add_argument("--p", type=int, help="verify the p-cycle word instead (alt)")
    v.add_argument("--mode", choices=("exhaustive", "exhaustive-classes", "sample"), default="sample")
    v.add_argument("--samples", type=int, default=10**4, help="sample-mode budget (default 10000)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--gl", action="store_true", help="verify over GL_n(q) (sl, n outside {3,4})")
    v.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    w = sub.add_parser("witness", help="produce a verified nontrivial value", parents=[common])
    w.add_argument("family", choices=("alt", "sl"))
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--q", type=int)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--samples", type=int, default=10**6, help="search budget (default 10^6)")

    k = sub.add_parser("width", help="3-cycle width lower-bound certificate", parents=[common])
    k.add_argument("--k", type=int, required=True)

    p = sub.add_parser("parse", help="parse a word and print its canonical form", parents=[common])
    p.add_argument("word")
    return ap


def _emit(payload: dict, text_lines: list[str], args) -> None:
    body = json.dumps(payload, indent=2) if args.format == "json" else "\n".join(text_lines)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body + "\n")
    else:
        print(body)


def _group_name(j: dict) -> str:
    g = j["group"]
    if g["kind"] in ("sl", "gl"):
        return f"{g['kind'].upper()}_{g['n']}({g['q']})"
    base = "Alt" if g["kind"] == "alt" else "Sym"
    return f"{base}({g['n']})"


def _run_construct(args) -> int:
    if args.family == "alt":
        plan = construct_word_alt(args.n)
    elif args.family == "sym":
        plan = construct_word_sym(args.n)
    elif args.family == "pcycle":
        if args.p is None:
            raise ValueError("construct pcycle needs --p")
        plan = construct_word_pcycle(args.n, args.p)
    else:
        if args.q is None:
            raise ValueError("construct sl needs --q")
        plan = construct_word_sl(args.n, args.q)
    j = plan.to_json()
    lines = [plan.word_text, f"variant: {j.get('variant', j.get('case'))}  arity: {plan.arity}"]
    _emit(j, lines, args)
    return 0


def _run_verify(args) -> int:
    kwargs = dict(mode=args.mode, budget=args.samples, seed=args.seed, threads=max(1, args.threads))
    if args.family == "alt":
        report = verify_image_alt(args.n, p=args.p, **kwargs)
    elif args.family == "sym":
        report = verify_image_sym(args.n, **kwargs)
    else:
        if args.q is None:
            raise ValueError("verify sl needs --q")
        report = verify_image_sl(args.n, args.q, gl=args.gl, **kwargs)
    j = report.to_json()
    counts = " ".join(f"{k}={v}" for k, v in j["classes"].items() if v)
    lines = [
        f"group: {_group_name(j)}",
        f"word: {j['word']}",
        f"mode: {j['mode']}  seed: {j['seed']}  evaluations: {j['evaluations']}",
        f"classes: {counts}",
        f"violations: {len(j['violations'])}",
        f"witness: {j['witness']}",
        "PASS" if j["pass"] else "FAIL",
    ]
    _emit(j, lines, args)
    return 0 if j["pass"] else 1


def _run_witness(args) -> int:
    if args.family == "alt":
        tr = witness_alt(args.n, seed=args.seed, budget=args.samples)
    else:
        if args.q is None:
            raise ValueError("witness sl needs --q")
        tr = witness_sl(args.n, args.q, seed=args.seed, budget=args.samples)
    j = tr.to_json()
    lines = [f"{k}: {v}" for k, v in j.items()]
    _emit(j, lines, args)
    return 0


def _run_width(args) -> int:
    cert = width_certificate(args.k)
    j = cert.to_json()
    _emit(j, [f"n: {j['n']}", f"element: {j['element']}", f"bound: {j['bound']}"], args)
    return 0


def _run_parse(args) -> int:
    tree = parse_word(args.word)
    reduced = free_reduce(tree)
    j = {
        "word": print_word(tree),
        "arity": arity(tree),
        "reduced": [[v, e] for v, e in reduced],
        "trivial": not reduced,
    }
    lines = [j["word"], f"arity: {j['arity']}", f"reduced: {j['reduced']}"]
    _emit(j, lines, args)
    return 0


def run(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.command == "construct":
            return _run_construct(args)
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "witness":
            return _run_witness(args)
        if args.command == "width":
            return _run_width(args)
        return _run_parse(args)
    except (
        UnsupportedGroupError,
        NoLadderError,
        GroupTooLargeError,
        WordSyntaxError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (WitnessSearchError, SLWitnessSearchError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
