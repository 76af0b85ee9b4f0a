"""Command-line front end: ``analyze``, ``moduli``, ``examples``, ``eikonal``.

Exit codes: 0 success, 2 malformed input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import gallery, tabfile
from .eikonal import closure_probe, parse_generators
from .moduli import EXPORT_FORMATS, export_ideal, involutivity_ideal, parametric_endovolutive
from .report import analyze

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT = 0, 2, 3

COMMENT = {"singular": "//", "macaulay2": "--", "sage-text": "#"}


class InputError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _parse_vector(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad vector {text!r}") from exc


def cmd_analyze(args) -> int:
    t, extras = tabfile.load(args.path)
    if t is None:
        raise InputError(f"{args.path} has no tableau")
    phis = [_parse_vector(p) for p in args.phi] if args.phi else extras.get("sample_phi")
    try:
        rep = analyze(t, args.seed, phis)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(rep.render(), args.out)
    if rep.problems:
        print("internal inconsistency: " + "; ".join(rep.problems), file=sys.stderr)
        return EXIT_INCONSISTENT
    return EXIT_OK


def _block_display(pt) -> list[str]:
    lines = [f"parametric endovolutive blocks for r = {pt.r}, n = {pt.n}, characters {pt.characters}"]
    for lam in range(pt.ell):
        for i in range(lam, pt.n):
            rows = ["[" + ", ".join(x.render() for x in row) + "]" for row in pt.block(lam, i)]
            lines.append(f"B^{lam + 1}_{i + 1} = [" + ", ".join(rows) + "]")
    return lines


def cmd_moduli(args) -> int:
    chars = [int(x) for x in _parse_vector(args.chars)] if args.chars else []
    try:
        pt = parametric_endovolutive(args.r, args.n, chars)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    ideal = involutivity_ideal(pt)
    mark = COMMENT[args.format]
    head = [f"{mark} {line}" for line in _block_display(pt)]
    head.append(f"{mark} {len(ideal.generators)} generators")
    for k, g in enumerate(ideal.generators):
        tags = " ".join("(%d,%d,%d,%d,%d,%d)" % tag for tag in g.provenance)
        head.append(f"{mark} g{k + 1} from (lam,mu,l,k,a,b) {tags}")
    _emit("\n".join(head) + "\n" + export_ideal(ideal, args.format), args.out)
    return EXIT_OK


def cmd_examples(args) -> int:
    if not args.name:
        _emit("".join(f"{name}\n" for name in gallery.GALLERY), None)
        return EXIT_OK
    if args.name not in gallery.GALLERY:
        raise InputError(f"unknown example {args.name!r}; choose from {', '.join(gallery.GALLERY)}")
    text = tabfile.dumps(gallery.get(args.name), gallery.extras(args.name))
    target = args.out or f"{args.name}.tab"
    Path(target).write_text(text, encoding="utf-8")
    print(target)
    return EXIT_OK


def cmd_eikonal(args) -> int:
    t, extras = tabfile.load(args.path)
    gens = extras.get("phase_generators")
    n = t.n if t is not None else extras.get("n")
    if not isinstance(gens, list) or not gens or not all(isinstance(g, str) for g in gens):
        raise InputError("phase_generators must be a nonempty list of strings")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError("need a positive integer 'n' for the phase space")
    try:
        polys = parse_generators(gens, n)
        rep = closure_probe(polys, args.bound)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    lines = [f"phase space dimension n = {n}"]
    lines += [f"F{k + 1} = {p.render()}" for k, p in enumerate(polys)]
    _emit("\n".join(lines) + "\n" + rep.render() + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="involute", description="Exact analysis of linear tableaux.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report for a tableau file")
    a.add_argument("path")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--phi", action="append", help="sample covector on the first ell frame coordinates, e.g. 3,1")
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    m = sub.add_parser("moduli", help="ideal of involutive endovolutive blocks")
    m.add_argument("-r", type=int, required=True)
    m.add_argument("-n", type=int, required=True)
    m.add_argument("--chars", required=True, help="comma separated characters, e.g. 3,2,0")
    m.add_argument("--format", choices=EXPORT_FORMATS, default="macaulay2")
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out")
    m.set_defaults(func=cmd_moduli)

    e = sub.add_parser("examples", help="list or write gallery tableaux")
    e.add_argument("name", nargs="?")
    e.add_argument("--out")
    e.set_defaults(func=cmd_examples)

    k = sub.add_parser("eikonal", help="Poisson closure probe for phase generators")
    k.add_argument("path")
    k.add_argument("--bound", type=int, default=3)
    k.add_argument("--out")
    k.set_defaults(func=cmd_eikonal)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, tabfile.TableauFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
