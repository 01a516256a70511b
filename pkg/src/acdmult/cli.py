"""Command-line front end.

Exit codes: 0 decided true / success, 1 decided false, 2 invalid input,
3 closure cap exceeded. Every command prints one JSON document.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import deciders, generators
from .group_model import InvalidDescriptor, ShapeError, main_decomposition, validate
from .mult_structure import mult_contains, mult_of, ring_iso
from .residue_lattice import CapExceeded
from .serialization import (
    ParseError,
    descriptor_from_dict,
    descriptor_to_dict,
    dumps,
    loads,
    mult_from_dict,
    verdict_to_dict,
)
from .verdict import Verdict

EXIT_TRUE, EXIT_FALSE, EXIT_INVALID, EXIT_CAP = 0, 1, 2, 3


class _Input(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Input(f"cannot read {path}: {exc.strerror}") from None


def _descriptor(path: str):
    return descriptor_from_dict(loads(_read(path)))


def _mult(path: str):
    return mult_from_dict(loads(_read(path)))


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _cap(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("cap must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="acdmult", description=__doc__.splitlines()[0])
    parser.add_argument("--cap", type=_cap, default=None, help="closure cap (default: $ACDMULT_CAP or 10^6)")
    parser.add_argument("--minus-one", choices=("include", "exclude"), default="include",
                        help="whether -1 generates V∞ alongside P∞(τ)")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", help="check a descriptor").add_argument("file")
    sub.add_parser("mult", help="descriptor of Mult G").add_argument("file")
    for name in ("near-iso", "iso"):
        p = sub.add_parser(name)
        p.add_argument("a")
        p.add_argument("b")
    p = sub.add_parser("ring-iso", help="isomorphism of rings (G,U) and (G,V) on rigid G")
    p.add_argument("g")
    p.add_argument("u")
    p.add_argument("v")
    p = sub.add_parser("mult-member", help="membership of U in M_G(E0)")
    p.add_argument("g")
    p.add_argument("u")
    sub.add_parser("self-mult-iso").add_argument("g")
    sub.add_parser("realize").add_argument("m")
    sub.add_parser("realizable").add_argument("m")
    sub.add_parser("main-decompose").add_argument("g")

    p = sub.add_parser("gen-random", help="random valid descriptor")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--max-types", type=int, default=4)
    p.add_argument("--min-types", type=int, default=1)
    p.add_argument("--max-rank", type=int, default=3)
    p.add_argument("--max-p-inf", type=int, default=2)
    p.add_argument("--primes", type=_int_list, default=(2, 3, 5, 7, 11, 13))
    p.add_argument("--moduli", type=_int_list, default=(1, 2, 3, 4, 5, 6, 7, 9))

    p = sub.add_parser("gen-4-9", help="rigid group not isomorphic to its Mult")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    return parser


def _emit(obj, pretty: bool) -> None:
    sys.stdout.write(dumps(obj, pretty) + "\n")


def _verdict(v: Verdict, pretty: bool) -> int:
    _emit(verdict_to_dict(v), pretty)
    return EXIT_TRUE if v.result else EXIT_FALSE


def _run(args) -> int:
    pretty = args.pretty
    minus = args.minus_one == "include"
    cmd = args.command

    if cmd == "validate":
        G = _descriptor(args.file)
        violations = validate(G)
        if violations:
            _emit(verdict_to_dict(Verdict(False, diagnostics=tuple(violations))), pretty)
            return EXIT_INVALID
        return _verdict(Verdict(True), pretty)
    if cmd == "mult":
        _emit(descriptor_to_dict(mult_of(_descriptor(args.file))), pretty)
        return EXIT_TRUE
    if cmd == "near-iso":
        return _verdict(deciders.near_iso(_descriptor(args.a), _descriptor(args.b)), pretty)
    if cmd == "iso":
        return _verdict(deciders.iso(_descriptor(args.a), _descriptor(args.b), args.cap, minus), pretty)
    if cmd == "ring-iso":
        G = _descriptor(args.g)
        return _verdict(ring_iso(G, _mult(args.u), _mult(args.v)), pretty)
    if cmd == "mult-member":
        return _verdict(mult_contains(_descriptor(args.g), _mult(args.u)), pretty)
    if cmd == "self-mult-iso":
        return _verdict(deciders.self_mult_iso(_descriptor(args.g), args.cap, minus), pretty)
    if cmd == "realize":
        _emit(descriptor_to_dict(deciders.realize(_descriptor(args.m))), pretty)
        return EXIT_TRUE
    if cmd == "realizable":
        M = _descriptor(args.m)
        v = deciders.realizable(M)
        if v:
            v = Verdict(True, {"realization": descriptor_to_dict(deciders.realize(M))})
        return _verdict(v, pretty)
    if cmd == "main-decompose":
        G1, C = main_decomposition(_descriptor(args.g))
        _emit({
            "G1": descriptor_to_dict(G1) if G1 is not None else None,
            "C": descriptor_to_dict(C) if C is not None else None,
        }, pretty)
        return EXIT_TRUE
    if cmd == "gen-random":
        cfg = generators.GenConfig(
            seed=args.seed,
            max_types=args.max_types,
            min_types=args.min_types,
            max_rank=args.max_rank,
            max_p_inf=args.max_p_inf,
            prime_pool=args.primes,
            modulus_pool=args.moduli,
        )
        _emit(descriptor_to_dict(generators.random_descriptor(cfg)), pretty)
        return EXIT_TRUE
    if cmd == "gen-4-9":
        _emit(descriptor_to_dict(generators.example_4_9(args.k, args.p, include_minus_one=minus)), pretty)
        return EXIT_TRUE
    raise AssertionError(cmd)


def _error(message: str, pretty: bool, pointer: Optional[str] = None, **extra) -> None:
    out = {"error": message}
    if pointer is not None:
        out["pointer"] = pointer
    out.update(extra)
    _emit(out, pretty)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_TRUE
    try:
        return _run(args)
    except ParseError as exc:
        _error(exc.message, args.pretty, exc.pointer)
    except InvalidDescriptor as exc:
        _error("invalid descriptor", args.pretty, violations=exc.violations)
    except CapExceeded as exc:
        _error(str(exc), args.pretty, partial_size=exc.partial_size)
        return EXIT_CAP
    except (_Input, ShapeError, ValueError, generators.GenerationFailure) as exc:
        _error(str(exc), args.pretty)
    return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
