"""Command-line interface.

Exit codes: 0 pass, 1 violation or dependence found, 2 input error, 3 capacity.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .echelon import (echelonmotion, is_echelon_independent_brute, is_echelon_independent_fast)
from .errors import CapacityError, DomainError, EchelonError, InputError, NotALatticeError
from .extensions import count_linear_extensions, first_extension
from .families import generate
from .lattice import (as_lattice, barnard_rowmotion, birkhoff_rowmotion, is_distributive,
                      is_modular, is_semidistributive)
from .macneille import macneille_completion
from .poset import Poset
from .serialize import (dumps_bijection, dumps_extension, dumps_poset, loads_extension, loads_poset)
from .suites import SUITES, verify_suite
from .trim import is_trim, trim_data, trim_rowmotion

EXIT_OK, EXIT_FOUND, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


def _load(spec: str) -> Poset:
    """A poset from a JSON file, ``-`` for stdin, or ``family[:a,b]``."""
    if spec == "-":
        return loads_poset(sys.stdin.read())
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            return loads_poset(fh.read())
    name, _, args = spec.partition(":")
    try:
        params = [int(a) for a in args.split(",")] if args else []
    except ValueError:
        raise InputError(f"not a file or family spec: {spec!r}") from None
    return generate(name, *params)


def _emit(args: argparse.Namespace, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sigma(P: Poset, text: str | None):
    if text is None:
        return first_extension(P)
    sigma = loads_extension(text)
    sigma.check(P)
    return sigma


def cmd_gen(args) -> int:
    _emit(args, dumps_poset(generate(args.family, *args.params)))
    return EXIT_OK


def cmd_ech(args) -> int:
    P = _load(args.poset)
    sigma = _sigma(P, args.sigma)
    mode = "exact" if args.exact_only else args.arithmetic
    _emit(args, dumps_bijection(echelonmotion(P, sigma, mode)))
    return EXIT_OK


def cmd_row(args) -> int:
    L = as_lattice(_load(args.poset))
    if is_distributive(L):
        row = birkhoff_rowmotion(L)
    elif is_semidistributive(L):
        row = barnard_rowmotion(L)
    elif is_trim(L):
        row = trim_rowmotion(trim_data(L))
    else:
        raise DomainError("rowmotion needs a semidistributive or trim lattice")
    _emit(args, dumps_bijection(row))
    return EXIT_OK


def cmd_independent(args) -> int:
    P = _load(args.poset)
    if args.brute:
        rep = is_echelon_independent_brute(P, sample=args.sample, rng=args.seed)
    else:
        rep = is_echelon_independent_fast(P, "exact" if args.exact_only else "prescreen")
    out: dict[str, Any] = {"independent": rep.independent, "method": rep.method,
                           "checks": rep.checks, "exhaustive": rep.exhaustive}
    if rep.independent:
        out["ech"] = dumps_bijection(rep.canonical_map)
    else:
        w = rep.witness
        out["witness"] = {"x": w.x, "sigma": dumps_extension(w.sigma), "y": w.y,
                          "sigma_prime": dumps_extension(w.sigma_prime), "y_prime": w.y_prime,
                          "kind": getattr(w.kind, "value", w.kind)}
    _emit(args, json.dumps(out, sort_keys=True))
    return EXIT_OK if rep.independent else EXIT_FOUND


def cmd_complete(args) -> int:
    comp = macneille_completion(_load(args.poset))
    _emit(args, dumps_poset(comp.lattice.poset))
    return EXIT_OK


def cmd_props(args) -> int:
    P = _load(args.poset)
    props: dict[str, Any] = {"n": P.n, "connected": P.is_connected(), "bounded": P.is_bounded(),
                             "graded": P.is_graded(), "eulerian": P.is_eulerian()}
    try:
        props["linear_extensions"] = count_linear_extensions(P)
    except CapacityError:
        props["linear_extensions"] = None
    try:
        L = as_lattice(P)
    except NotALatticeError:
        props["lattice"] = False
    else:
        props.update(lattice=True, distributive=is_distributive(L), modular=is_modular(L),
                     semidistributive=is_semidistributive(L), trim=is_trim(L))
    _emit(args, json.dumps(props, sort_keys=True))
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_suite(args.suite, args.scope, seed=args.seed, jobs=args.jobs,
                          exact_only=args.exact_only, samples=args.samples)
    _emit(args, report.to_jsonl())
    summary = dict(report.summary(), elapsed=round(report.elapsed, 3))
    print(json.dumps(summary, sort_keys=True), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FOUND


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags without defaults so they do not clobber earlier values
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=d(0))
    common.add_argument("--jobs", type=int, default=d(1))
    common.add_argument("--exact-only", action="store_true", default=d(False),
                        help="skip modular prescreening")
    common.add_argument("--out", default=d(None), help="write output here instead of stdout")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(True)
    parser = argparse.ArgumentParser(prog="echelonmotion", parents=[_global_flags(False)],
                                     description="Echelonmotion and rowmotion on finite posets.")
    sub = parser.add_subparsers(dest="verb", required=True)
    poset_help = "poset-v1 JSON file, '-' for stdin, or family[:params] such as n5 or boolean:3"

    p = sub.add_parser("gen", parents=[common], help="generate a family member")
    p.add_argument("family")
    p.add_argument("params", nargs="*", type=int)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("ech", parents=[common], help="echelonmotion for one extension")
    p.add_argument("poset", help=poset_help)
    p.add_argument("--sigma", help="comma-separated 1-based positions by element")
    p.add_argument("--arithmetic", choices=["exact", "prescreen"], default="exact")
    p.set_defaults(func=cmd_ech)

    p = sub.add_parser("row", parents=[common], help="rowmotion of a lattice")
    p.add_argument("poset", help=poset_help)
    p.set_defaults(func=cmd_row)

    p = sub.add_parser("independent", parents=[common], help="decide echelon-independence")
    p.add_argument("poset", help=poset_help)
    p.add_argument("--brute", action="store_true", help="enumerate every linear extension")
    p.add_argument("--sample", type=int, help="with --brute, sample this many extensions")
    p.set_defaults(func=cmd_independent)

    p = sub.add_parser("complete", parents=[common], help="MacNeille completion")
    p.add_argument("poset", help=poset_help)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("props", parents=[common], help="structural properties")
    p.add_argument("poset", help=poset_help)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--scope", help="override the default scope")
    p.add_argument("--samples", type=int, help="extensions sampled above the exhaustive cap")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EchelonError as exc:  # pragma: no cover - internal consistency failure
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_FOUND


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
