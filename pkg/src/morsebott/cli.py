"""Batch command line front end.

Exit codes: 0 when the run succeeds and every checked identity holds, 1 on
usage or parse errors, 2 on mathematical validation failures (broken chain
condition, function not discrete Morse-Bott, or a violated identity).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis, conley, flow, morse
from .complex import Complex, ValidationError, validate
from .homology import Z, Z2, betti, chain_complex, poincare_polynomial
from .io import (
    ParseError,
    ReportDocument,
    parse_complex,
    parse_function,
    serialize_function,
    serialize_report,
)

OK = 0
USAGE_ERROR = 1
INVALID = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); the contract wants 1
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="morsebott", description=__doc__)
    parser.add_argument("--json", action="store_true", help="emit a JSON document")
    parser.add_argument(
        "--no-validate", action="store_true", help="skip complex validation on load"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, function_file=True, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("complex_file", help="complex file")
        if function_file:
            p.add_argument("function_file", help="function file")
        p.set_defaults(handler=handler)
        return p

    add("validate", _cmd_validate, function_file=False, help="check a complex file")
    add("morse-check", _cmd_morse_check, help="check the discrete Morse-Bott conditions")
    add("collections", _cmd_collections, help="list collections and their reductions")
    p = add("homology", _cmd_homology, function_file=False, help="Betti numbers and torsion")
    p.add_argument("--coeff", choices=["z", "z2"], default="z", help="coefficient ring")
    p = add("flow", _cmd_flow, help="vector field, axioms, and closed orbits")
    p.add_argument("--max-orbits", type=int, default=1000, metavar="N")
    p.add_argument("--dot", metavar="PATH", help="write the arrow digraph in DOT format")
    add("inequalities", _cmd_inequalities, help="Morse-Bott inequality report")
    add("conley", _cmd_conley, help="index pairs and Conley index report")
    p = add("perturb", _cmd_perturb, help="print the perturbed function")
    p.add_argument("--epsilon", default="auto", metavar="P/Q|auto")
    p = add("report", _cmd_report, help="run every check and aggregate the verdicts")
    p.add_argument("--max-orbits", type=int, default=1000, metavar="N")
    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except SystemExit as err:  # --help
        return int(err.code or 0)
    try:
        return args.handler(args)
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return USAGE_ERROR
    except ValidationError as err:
        print(f"invalid complex: {err}", file=sys.stderr)
        return INVALID
    except ValueError as err:
        print(f"invalid input: {err}", file=sys.stderr)
        return INVALID


def main() -> None:
    sys.exit(run())


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ParseError(str(err)) from None


def _load_complex(args) -> Complex:
    return parse_complex(_read(args.complex_file), validate=not args.no_validate)


def _load_function(args, X: Complex):
    return parse_function(_read(args.function_file), X)


def _emit(args, payload) -> None:
    document = payload if isinstance(payload, ReportDocument) else serialize_report(payload)
    sys.stdout.write(document.to_json() if args.json else document.to_text() + "\n")


def _cmd_validate(args) -> int:
    X = parse_complex(_read(args.complex_file), validate=False)
    report = validate(X)
    _emit(args, report)
    return OK if report.ok else INVALID


def _cmd_morse_check(args) -> int:
    X = _load_complex(args)
    f = _load_function(args, X)
    verdict = morse.check_morse_bott(X, f)
    _emit(
        args,
        {"morse_bott": verdict, "discrete_morse": morse.check_discrete_morse(X, f)},
    )
    return OK if verdict.ok else INVALID


def _cmd_collections(args) -> int:
    X = _load_complex(args)
    f = _load_function(args, X)
    verdict = morse.check_morse_bott(X, f)
    colls = morse.collections(X, f)
    payload = {"morse_bott_ok": verdict.ok, "collections": colls}
    if verdict.ok:
        reduced = [morse.reduce_collection(X, f, C) for C in colls]
        payload["reduced"] = [
            {
                "parent": R.parent,
                "cells": R.cells,
                "noncritical_pair": morse.is_noncritical_pair(R),
                "classification": R.classification,
            }
            for R in reduced
        ]
    else:
        payload["violations"] = verdict.violations
    _emit(args, payload)
    return OK if verdict.ok else INVALID


def _cmd_homology(args) -> int:
    X = _load_complex(args)
    ring = Z2 if args.coeff == "z2" else Z
    summary = betti(chain_complex(X, ring))
    _emit(
        args,
        {
            "ring": ring,
            "summary": summary,
            "poincare": poincare_polynomial(summary),
            "euler": poincare_polynomial(summary).evaluate(-1),
        },
    )
    return OK


def _cmd_flow(args) -> int:
    X = _load_complex(args)
    f = _load_function(args, X)
    V = flow.vector_field(X, f)
    orbits = flow.closed_orbits(V, X, args.max_orbits)
    cross = flow.cross_collection_orbits(V, X, morse.collections(X, f), args.max_orbits)
    if args.dot:
        Path(args.dot).write_text(flow.to_dot(V, X), encoding="utf-8")
    _emit(
        args,
        {
            "arrows": sorted(V.arrows),
            "combinatorial": flow.is_combinatorial(V, X),
            "closed_orbits": [o.cells for o in orbits],
            "truncated": orbits.truncated,
            "cross_collection_orbits": [
                {"cells": o.cells, "collections": o.collections} for o in cross
            ],
        },
    )
    return OK


def _cmd_inequalities(args) -> int:
    X = _load_complex(args)
    f = _load_function(args, X)
    report = analysis.morse_bott_inequalities(X, f)
    kernel = analysis.kernel_inequality_check(X, f)
    chi_complex, chi_sum, chi_ok = analysis.euler_summary(report)
    _emit(
        args,
        {
            "inequalities": report,
            "kernel_inequalities": kernel,
            "euler": {"complex": chi_complex, "collections": chi_sum, "equal": chi_ok},
        },
    )
    return OK if report.ok and all(kernel.values()) else INVALID


def _cmd_conley(args) -> int:
    X = _load_complex(args)
    f = _load_function(args, X)
    report = conley.conley_theorem_check(X, f)
    pairs = [
        conley.index_pair(X, f, I) for I in conley.isolated_invariant_sets(X, f)
    ]
    _emit(
        args,
        {
            "conley": report,
            "index_pairs": [
                {
                    "invariant": sorted(p.invariant.cells),
                    "neighborhood": p.neighborhood,
                    "exit_set": p.exit_set,
                    "exit_cells": p.exit_cells,
                }
                for p in pairs
            ],
        },
    )
    return OK if report.ok else INVALID


def _cmd_perturb(args) -> int:
    X = _load_complex(args)
    f = _load_function(args, X)
    if args.epsilon != "auto":
        try:
            epsilon = Fraction(args.epsilon)
        except (ValueError, ZeroDivisionError):
            raise _UsageError(f"bad epsilon {args.epsilon!r}") from None
        if epsilon <= 0:
            raise _UsageError("epsilon must be positive")
    else:
        epsilon = "auto"
    verdict = morse.check_morse_bott(X, f)
    if not verdict.ok:
        _emit(args, verdict)
        return INVALID
    perturbed = morse.perturb(X, f, epsilon)
    if args.json:
        _emit(args, {"values": {cid: value for cid, value in perturbed.items()}})
    else:
        sys.stdout.write(serialize_function(perturbed, X))
    return OK


def report(X: Complex, f, arrows=None, max_orbits: int | None = 1000) -> ReportDocument:
    """Aggregate every check into one document with a top-level ``ok``."""
    mb = morse.check_morse_bott(X, f)
    dm = morse.check_discrete_morse(X, f)
    payload: dict = {"morse_bott": mb, "discrete_morse_ok": dm.ok}
    colls = morse.collections(X, f)
    payload["collections"] = [
        {"id": C.id, "value": C.value, "cells": C.cells} for C in colls
    ]
    V = arrows if arrows is not None else flow.vector_field(X, f)
    orbits = flow.closed_orbits(V, X, max_orbits)
    cross = flow.cross_collection_orbits(V, X, colls, max_orbits)
    payload["flow"] = {
        "arrows": len(V.arrows),
        "closed_orbits": len(orbits),
        "truncated": orbits.truncated,
        "cross_collection_orbits": [
            {"cells": o.cells, "collections": o.collections} for o in cross
        ],
    }
    ok = mb.ok and not cross
    if mb.ok:
        ineq = analysis.morse_bott_inequalities(X, f)
        kernel = analysis.kernel_inequality_check(X, f)
        chi_complex, chi_sum, chi_ok = analysis.euler_summary(ineq)
        creport = conley.conley_theorem_check(X, f)
        payload["inequalities"] = ineq
        payload["kernel_inequalities"] = kernel
        payload["euler"] = {
            "complex": chi_complex,
            "collections": chi_sum,
            "equal": chi_ok,
        }
        payload["conley"] = creport
        ok = ok and ineq.ok and all(kernel.values()) and creport.ok
    payload["ok"] = ok
    return serialize_report(payload)


def _cmd_report(args) -> int:
    X = _load_complex(args)
    f = _load_function(args, X)
    document = report(X, f, max_orbits=args.max_orbits)
    _emit(args, document)
    return OK if document.data["ok"] else INVALID


if __name__ == "__main__":
    main()
