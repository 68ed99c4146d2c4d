"""
Command-line surface: invariant, trace, multiply, reduce, enumerate-fc,
verify.  Exit codes: 0 on success, 1 when a verification check fails, 2 on
usage or parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import verify as verify_mod
from .algebra import (
    DEFAULT_MAX_LEN,
    TLElement,
    element_to_json,
    format_element,
    multiply,
    parse_element,
    reduce_letters,
)
from .coxeter import FcWord, _cartier_foata_letters, affine, enumerate_fc, parse_word, path
from .errors import ParseError
from .morphisms import parse_braid
from .scalars import delta_pow
from .traces import invariant, jones_trace, rho


def _graph(args):
    return affine(args.gens) if args.type == "affine" else path(args.gens)


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def _braid_invariant(task):
    braid, max_len = task
    return str(invariant(braid, max_len=max_len))


def cmd_invariant(args) -> int:
    lines = list(args.words)
    if args.file:
        with open(args.file) as fh:
            lines.extend(line.rstrip("\n") for line in fh)
    if not lines and not sys.stdin.isatty():
        lines.extend(line.rstrip("\n") for line in sys.stdin)
    braids = []
    for lineno, line in enumerate(lines, start=1):
        try:
            braids.append(parse_braid(line, args.gens))
        except (ParseError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    tasks = [(b, args.max_len) for b in braids]
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            values = list(pool.map(_braid_invariant, tasks))
    else:
        values = [_braid_invariant(t) for t in tasks]
    for line, value in zip(lines, values):
        _emit(args, {"input": line, "gens": args.gens, "invariant": value}, value)
    return 0


def cmd_trace(args) -> int:
    g = _graph(args)
    x = parse_element(args.element, g)
    value = rho(x) if g.is_affine else jones_trace(x)
    _emit(args, {"element": args.element, "gens": args.gens, "trace": str(value)}, str(value))
    return 0


def _parse_product(text: str, g) -> TLElement:
    """An argument may juxtapose bracket groups, as in "[s1][s2 a]"; split
    at "][" boundaries and multiply the pieces."""
    cuts = [0]
    depth = 0
    for pos, ch in enumerate(text):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0 and text[pos + 1:].lstrip().startswith("["):
                cuts.append(text.find("[", pos + 1))
    cuts.append(len(text))
    out = None
    for lo, hi in zip(cuts, cuts[1:]):
        x = parse_element(text[lo:hi], g)
        out = x if out is None else multiply(out, x)
    return out


def cmd_multiply(args) -> int:
    g = _graph(args)
    out = None
    for arg in args.elements:
        x = _parse_product(arg, g)
        out = x if out is None else multiply(out, x, max_len=args.max_len)
    text = format_element(out, basis=args.basis)
    _emit(
        args,
        {"gens": args.gens, "basis": args.basis, "terms": element_to_json(out)},
        text,
    )
    return 0


def cmd_reduce(args) -> int:
    g = _graph(args)
    letters = parse_word(g, args.word)
    loops, word = reduce_letters(g, letters, max_len=args.max_len)
    w = FcWord(g, _cartier_foata_letters(g, word))
    scalar = delta_pow(loops)
    text = str(w) if scalar.is_one() else f"{scalar} * {w}"
    _emit(
        args,
        {"input": args.word, "scalar": str(scalar), "word": [g.letter_name(s) for s in w.letters]},
        text,
    )
    return 0


def cmd_enumerate(args) -> int:
    g = _graph(args)
    words = enumerate_fc(g, args.max_len)
    if args.format == "json":
        print(json.dumps([[g.letter_name(s) for s in w.letters] for w in words]))
    else:
        for w in words:
            print(w)
    return 0


def cmd_verify(args) -> int:
    results = verify_mod.run_suite(args.suite, args.seed, args.gens, args.kmax)
    ok = all(r.ok for r in results)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "suite": args.suite,
                    "seed": args.seed,
                    "ok": ok,
                    "checks": [
                        {"name": r.name, "ok": r.ok, **({"detail": r.detail} if r.detail else {})}
                        for r in results
                    ],
                }
            )
        )
    else:
        for r in results:
            mark = "PASS" if r.ok else "FAIL"
            extra = f"  {r.detail}" if r.detail else ""
            print(f"{mark} {r.name}{extra}")
        print(f"{'PASS' if ok else 'FAIL'} {args.suite}: {sum(r.ok for r in results)}/{len(results)} checks")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="affinetl")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, typed=True):
        p.add_argument("--gens", type=int, default=2, help="generator count")
        if typed:
            p.add_argument("--type", choices=("affine", "classical"), default="affine")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)

    p = sub.add_parser("invariant", help="link invariant of braid-word closures")
    common(p, typed=False)
    p.add_argument("words", nargs="*", help="braid words, e.g. 's1 s1 s1'")
    p.add_argument("--file", help="newline-delimited braid words")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_invariant)

    p = sub.add_parser("trace", help="Markov trace of an element")
    common(p)
    p.add_argument("element")
    p.set_defaults(fn=cmd_trace)

    p = sub.add_parser("multiply", help="product of elements")
    common(p)
    p.add_argument("elements", nargs="+")
    p.add_argument("--basis", choices=("f", "g"), default="f")
    p.set_defaults(fn=cmd_multiply)

    p = sub.add_parser("reduce", help="normal form of a raw basis word")
    common(p)
    p.add_argument("word", help="letters without brackets, e.g. 's1 s2 s1'")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("enumerate-fc", help="canonical FC words up to a length")
    common(p)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("verify", help="run a named check battery")
    common(p, typed=False)
    p.add_argument("--suite", choices=("all",) + verify_mod.SUITES, default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmax", type=int, default=3)
    p.set_defaults(fn=cmd_verify, gens=4)
    return top


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
