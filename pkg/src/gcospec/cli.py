"""Command-line front end.

Every subcommand prints one JSON envelope on stdout. Exit codes: 0 when the
requested property holds or a construction succeeded, 1 for a negative
decision, 2 for bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .control import (
    Controllability,
    classify_controllability,
    compute_q0,
    reconstructibility_certificate,
    walk_matrix,
)
from .cospec import charpoly, compare, is_rooted_generalized_cospectral
from .graph import RootedGraph
from .graph6 import Graph6Error, decode_graph6
from .miner import LEVELS, CatalogSource, find_mates, persist_records
from .ortho import CERT_TOL, GramMismatchError, PreconditionError, construct_block_q, construct_q

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def envelope(command: str, inputs: dict, result) -> dict:
    return {"command": command, "inputs": inputs, "result": result, "version": __version__}


def _graph(text: str):
    try:
        return decode_graph6(text)
    except Graph6Error as exc:
        raise UsageError(f"malformed graph6 {text!r}: {exc}") from None


def _bits(text: str, n: int, name: str) -> tuple[int, ...]:
    if len(text) != n or set(text) - {"0", "1"}:
        raise UsageError(f"--{name} must be a 0/1 string of length {n}")
    return tuple(int(ch) for ch in text)


def default_tol() -> float:
    raw = os.environ.get("COSPEC_TOL")
    if raw is None:
        return CERT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"COSPEC_TOL={raw!r} is not a number") from None


def cmd_charpoly(args):
    g = _graph(args.g6)
    return {"g6": args.g6}, {"coeffs": list(charpoly(g).coeffs)}, EXIT_OK


def cmd_cospec(args):
    g, h = _graph(args.g6a), _graph(args.g6b)
    inputs = {"g6a": args.g6a, "g6b": args.g6b, "level": args.level}
    if args.level == "rooted":
        if args.root_a is None or args.root_b is None:
            raise UsageError("--level rooted needs --root-a and --root-b")
        inputs.update(root_a=args.root_a, root_b=args.root_b)
        try:
            rep = is_rooted_generalized_cospectral(RootedGraph(g, args.root_a), RootedGraph(h, args.root_b))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        holds = bool(rep.rooted_generalized)
    else:
        rep = compare(g, h)
        holds = rep.cospectral if args.level == "plain" else rep.generalized
    return inputs, rep.to_dict(), EXIT_OK if holds else EXIT_NEGATIVE


def cmd_construct_q(args):
    g, h = _graph(args.g6a), _graph(args.g6b)
    tol = args.tol if args.tol is not None else default_tol()
    inputs = {"g6a": args.g6a, "g6b": args.g6b, "tol": tol}
    rooted = args.root_a is not None or args.root_b is not None
    if rooted and (args.b is not None or args.c is not None):
        raise UsageError("give either roots or --b/--c, not both")
    try:
        if rooted:
            if args.root_a is None or args.root_b is None:
                raise UsageError("--root-a and --root-b go together")
            inputs.update(root_a=args.root_a, root_b=args.root_b)
            try:
                rg, rh = RootedGraph(g, args.root_a), RootedGraph(h, args.root_b)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            cert = construct_block_q(rg, rh, tol=tol)
        else:
            if (args.b is None) != (args.c is None):
                raise UsageError("--b and --c go together")
            b = _bits(args.b, g.n, "b") if args.b is not None else None
            c = _bits(args.c, h.n, "c") if args.c is not None else None
            inputs.update(b=args.b, c=args.c)
            cert = construct_q(g, h, b, c, tol=tol)
    except (PreconditionError, GramMismatchError) as exc:
        print(f"construct-q: {exc}", file=sys.stderr)
        return inputs, {"verified": False, "reason": str(exc)}, EXIT_NEGATIVE
    return inputs, cert.to_dict(), EXIT_OK if cert.verified else EXIT_NEGATIVE


def cmd_classify(args):
    g = _graph(args.g6)
    if g.n < 1:
        raise UsageError("classify needs at least one vertex")
    wd = walk_matrix(g)
    cls = classify_controllability(g)
    result = {
        "n": g.n,
        "walk_matrix": [list(r) for r in wd.W],
        "rank": wd.rank,
        "main_eigenvalues": wd.rank,
        "class": cls.value,
        "q0": compute_q0(g).to_dict() if cls == Controllability.ALMOST_CONTROLLABLE else None,
    }
    return {"g6": args.g6}, result, EXIT_OK


def cmd_reconstruct_check(args):
    g = _graph(args.g6)
    if g.n < 3:
        raise UsageError("reconstructibility certificates need n >= 3")
    cert = reconstructibility_certificate(g)
    return {"g6": args.g6}, cert.to_dict(), EXIT_OK if cert.certified else EXIT_NEGATIVE


def cmd_mine(args):
    try:
        source = CatalogSource(n=args.n, path=args.catalog)
        records = find_mates(source, args.level)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from None
    if args.out:
        persist_records(records, args.out)
    inputs = {"n": args.n, "level": args.level, "catalog": args.catalog, "out": args.out}
    result = {"count": len(records), "records": [json.loads(r.to_json()) for r in records]}
    return inputs, result, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gcospec", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("charpoly", help="exact characteristic polynomial, ascending coefficients")
    s.add_argument("g6")
    s.set_defaults(func=cmd_charpoly)

    s = sub.add_parser("cospec", help="plain / generalized / rooted cospectrality")
    s.add_argument("g6a")
    s.add_argument("g6b")
    s.add_argument("--level", choices=("plain", "generalized", "rooted"), default="generalized")
    s.add_argument("--root-a", type=int)
    s.add_argument("--root-b", type=int)
    s.set_defaults(func=cmd_cospec)

    s = sub.add_parser("construct-q", help="build and certify a regular orthogonal conjugator")
    s.add_argument("g6a")
    s.add_argument("g6b")
    s.add_argument("--root-a", type=int)
    s.add_argument("--root-b", type=int)
    s.add_argument("--b", help="neighborhood bitstring for G, vertex 0 first")
    s.add_argument("--c", help="neighborhood bitstring for H")
    s.add_argument("--tol", type=float, help="certificate tolerance (default $COSPEC_TOL or 1e-7)")
    s.set_defaults(func=cmd_construct_q)

    s = sub.add_parser("classify", help="walk matrix, controllability and Q0")
    s.add_argument("g6")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("reconstruct-check", help="reconstructibility certificate")
    s.add_argument("g6")
    s.set_defaults(func=cmd_reconstruct_check)

    s = sub.add_parser("mine", help="search a catalog for mates")
    s.add_argument("--n", type=int)
    s.add_argument("--level", choices=LEVELS, required=True)
    s.add_argument("--catalog", help="graph6 file (default: internal enumeration)")
    s.add_argument("--out", help="write JSON-lines records here")
    s.set_defaults(func=cmd_mine)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        inputs, result, code = args.func(args)
    except UsageError as exc:
        print(f"{args.command}: {exc}", file=sys.stderr)
        print(dumps(envelope(args.command, {}, {"error": str(exc)})))
        return EXIT_ERROR
    print(dumps(envelope(args.command, inputs, result)))
    return code


if __name__ == "__main__":
    sys.exit(main())
