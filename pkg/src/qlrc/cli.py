"""Command-line front end.

Exit status: 0 success, 1 verification mismatch, 2 invalid input.
Errors are reported on stderr as a JSON object {"error": ..., "message": ...}.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .codes import LinearCode, dual, min_distance
from .cosets import (
    ExponentSet,
    coset_partition,
    coset_representatives,
    is_complete,
)
from .errors import Infeasible, InvalidInput, QLRCError, VerificationMismatch
from .families import (
    FAMILIES,
    FamilySpec,
    instance_csv_row,
    run_pipeline,
    sweep_specs,
    table_mismatches,
    table_one,
    to_csv,
)
from .locality import LocalityCertificate, classical_singleton_defect, verify_certificate
from .matrix import export_matrix
from .quantum import is_dual_containing, purity_check, quantum_singleton_defect, qudit_dimension

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InvalidInput(message)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _axes(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise InvalidInput(f"--axes expects comma-separated integers, got {text!r}") from None


def _spec_from_args(args) -> FamilySpec:
    return FamilySpec(family=args.family, q=args.q, lam=args.lam, u=args.u, v=args.v, s=args.s,
                      axes=_axes(args.axes), N=args.N)


def cmd_construct(args) -> int:
    inst = run_pipeline(_spec_from_args(args))
    if args.emit == "json":
        text = _dumps(inst.to_json())
    elif args.emit == "csv":
        text = to_csv([instance_csv_row(inst)])
    else:
        text = export_matrix(inst.outer.generator)
    _emit(text, args.out)
    if inst.mismatches:
        raise VerificationMismatch("; ".join(inst.mismatches), inst.mismatches)
    return EXIT_OK


def verify_payload(obj: dict) -> dict:
    """Re-run every check on a construct output (or a bare code object)."""
    code_obj = obj.get("code", obj)
    C = LinearCode.from_json(code_obj)
    mode = code_obj["tower"]["mode"]
    problems: list[str] = []
    report: dict = {"n": C.n, "k": C.k}
    if C.k != int(code_obj["k"]):
        problems.append(f"dimension {C.k} differs from stated {code_obj['k']}")
    d = None
    if code_obj.get("d") is not None and C.k:
        try:
            d = min_distance(C)
            report["d"] = d
            if d != int(code_obj["d"]):
                problems.append(f"distance {d} differs from stated {code_obj['d']}")
        except Infeasible as exc:
            report["d"] = None
            report["d_note"] = str(exc)
    cert = None
    if obj.get("certificate"):
        cert = LocalityCertificate.from_json(obj["certificate"])
        problems += [f"certificate: {p}" for p in verify_certificate(C, cert)]
        if d is not None and cert.classical_defect is not None:
            cdef = classical_singleton_defect(C.n, C.k, d, cert.r, cert.delta)
            report["classical_defect"] = cdef
            if cdef != cert.classical_defect:
                problems.append(f"classical defect {cdef} differs from {cert.classical_defect}")
    rec = obj.get("record")
    if rec:
        dc = is_dual_containing(C, mode)
        report["dual_containing"] = dc
        if not dc:
            problems.append("code does not contain its dual")
        else:
            qk = 2 * C.k - C.n
            if qk != rec["k"] or C.n != rec["n"]:
                problems.append(f"quantum [[{C.n},{qk}]] differs from stated "
                                f"[[{rec['n']},{rec['k']}]]")
            if qudit_dimension(C, mode) != rec["q"]:
                problems.append("qudit dimension differs")
            if cert is not None and d is not None and rec.get("quantum_defect") is not None:
                qdef = quantum_singleton_defect(C.n, qk, d, cert.r, cert.delta)
                report["quantum_defect"] = qdef
                if qdef != rec["quantum_defect"]:
                    problems.append(f"quantum defect {qdef} differs from stated")
            if rec.get("pure") is not None:
                try:
                    pure = purity_check(dual(C, mode), mode, outer=C)
                    report["pure"] = pure
                    if pure != rec["pure"]:
                        problems.append("purity differs from stated")
                except Infeasible as exc:
                    report["pure_note"] = str(exc)
    report["problems"] = problems
    report["ok"] = not problems
    return report


def cmd_verify(args) -> int:
    try:
        text = sys.stdin.read() if args.path == "-" else open(args.path).read()
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {args.path}: {exc}") from None
    if not isinstance(obj, dict) or ("code" not in obj and "generator" not in obj):
        raise InvalidInput("input is neither a construct output nor a code object")
    try:
        report = verify_payload(obj)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, QLRCError):
            raise
        raise InvalidInput(f"malformed input: {exc}") from None
    _emit(_dumps(report), args.out)
    if not report["ok"]:
        raise VerificationMismatch("; ".join(report["problems"]), report["problems"])
    return EXIT_OK


def _search_one(spec: FamilySpec) -> dict:
    inst = run_pipeline(spec)
    row = instance_csv_row(inst)
    rec = inst.record.to_json() if inst.record else None
    return {"spec": spec, "row": row, "record": rec, "mismatches": inst.mismatches}


def cmd_search(args) -> int:
    qs = [args.q] if args.q else [2, 3, 4, 5]
    specs = sweep_specs(qs, args.max_length)
    if args.family:
        specs = [s for s in specs if s.family == args.family]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_search_one, specs))
    else:
        results = [_search_one(s) for s in specs]
    results.sort(key=lambda r: r["spec"].sort_key())
    if args.optimal_only:
        results = [r for r in results if r["record"] and r["record"]["optimal"]]
    if args.emit == "csv":
        text = to_csv([r["row"] for r in results])
    else:
        text = _dumps([dict(r["record"] or {"family": r["spec"].family,
                                            "family_params": r["spec"].params_json()},
                            mismatches=r["mismatches"]) for r in results])
    _emit(text, args.out)
    bad = [r for r in results if r["mismatches"]]
    if bad:
        raise VerificationMismatch(f"{len(bad)} instances disagree with their predictions")
    return EXIT_OK


def cmd_table(args) -> int:
    qs = [args.q] if args.q else [2, 3, 4, 5]
    rows = table_one(qs, args.max_length)
    if args.emit == "csv":
        flat = [dict(i, axes="x".join(map(str, i["axes"]))) for r in rows for i in r["instances"]]
        cols = ("row", "family", "q", "s", "lambda", "u_or_v", "axes", "n", "k", "d", "r",
                "delta", "classical_defect", "quantum_defect", "pure", "verified")
        text = to_csv(flat, cols)
    else:
        text = _dumps(rows)
    _emit(text, args.out)
    bad = table_mismatches(rows)
    if bad:
        raise VerificationMismatch(f"{len(bad)} table instances disagree with the matrix pipeline",
                                   [f"{b['row']} q={b['q']} lambda={b['lambda']} "
                                    f"param={b['u_or_v']}"
                                    + (f" axes={'x'.join(map(str, b['axes']))}" if b["axes"] else "")
                                    + f": {b['problems']}" for b in bad])
    return EXIT_OK


def cmd_cosets(args) -> int:
    if args.N is None or args.z is None:
        raise InvalidInput("cosets needs --N and --z")
    parts = coset_partition(args.N, args.z)
    out = {"N": args.N, "z": args.z, "representatives": coset_representatives(args.N, args.z),
           "cosets": [list(c.elements) for c in parts]}
    if args.set:
        D = ExponentSet.reduced(args.N, _axes(args.set))
        out["set"] = list(D.elements)
        out["complete"] = is_complete(D, args.z)
    _emit(_dumps(out), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qlrc", description="Quantum (r,delta)-LRCs from BCH-type codes")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def family_flags(p, required: bool):
        p.add_argument("--family", choices=FAMILIES, required=required)
        p.add_argument("--q", type=int, required=required)
        p.add_argument("--s", type=int)
        p.add_argument("--lambda", dest="lam", type=int, default=1)
        p.add_argument("--u", type=int)
        p.add_argument("--v", type=int)
        p.add_argument("--axes")
        p.add_argument("--N", type=int, help="ambient modulus (defaults to lambda*n)")

    p = sub.add_parser("construct", help="build and verify one family instance")
    family_flags(p, True)
    p.add_argument("--emit", choices=("json", "csv", "matrix"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="re-check a construct output or code JSON")
    p.add_argument("path", help="JSON file, or - for stdin")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="sweep family windows")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--q", type=int)
    p.add_argument("--max-length", type=int, default=64)
    p.add_argument("--optimal-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("table", help="instantiate and verify the parameter table")
    p.add_argument("--q", type=int)
    p.add_argument("--max-length", type=int, default=64)
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("cosets", help="cyclotomic cosets of Z_N under multiplication by z")
    p.add_argument("--N", type=int)
    p.add_argument("--z", type=int)
    p.add_argument("--set", help="comma-separated exponents to test for completeness")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cosets)
    return parser


def _error(exc: Exception) -> None:
    obj = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, VerificationMismatch) and exc.mismatches:
        obj["mismatches"] = exc.mismatches
    sys.stderr.write(json.dumps(obj) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise InvalidInput("a subcommand is required")
        return args.func(args)
    except VerificationMismatch as exc:
        _error(exc)
        return EXIT_MISMATCH
    except (InvalidInput, Infeasible) as exc:
        _error(exc)
        return EXIT_INVALID
    except QLRCError as exc:
        _error(exc)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
