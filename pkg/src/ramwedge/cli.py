"""Command-line front end: run verification drivers, check user-supplied
chart points, and dump lattice bases.

Exit codes: 0 pass, 1 verification failure, 2 usage or schema error,
3 precision exhaustion.  All artifact files embed the numeric parameters
(p, precision) and are written atomically with deterministic bytes, so
repeated invocations produce identical files.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from .chart import (DEFAULT_PRECISION, chart_point_from_json, full_report)
from .drivers import DEFAULT_P, run_driver
from .errors import PrecisionExhaustedError, SchemaError
from .fields import PrimeField
from .lattices import (annihilators, intersect_with_standard_lattice,
                       reduce_mod_pi, spanning_set)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_PRECISION = 3

RESULT_IDS = ("sign-lemma", "worst-terms", "refined-basis", "spin-structure",
              "counterexample", "x1-zero", "operator-identities", "all")


def _write_json(path: str, obj) -> None:
    data = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_signature(text: str, n: int):
    try:
        r, s = (int(t) for t in text.split(","))
    except ValueError as exc:
        raise SchemaError(f"signature must be 'r,s', got {text!r}") from exc
    if r + s != n or r < 0 or s < 0:
        raise SchemaError(f"signature {r},{s} is not a partition of n={n}")
    return r, s


def _parse_eps(text: str) -> int:
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise SchemaError(f"eps must be +1 or -1, got {text!r}")


def cmd_verify(args) -> int:
    signature = None
    if args.signature:
        if args.n is None:
            raise SchemaError("--signature requires --n")
        signature = _parse_signature(args.signature, args.n)
    certificates = run_driver(args.result_id, n=args.n, p=args.p,
                              precision=args.precision, signature=signature,
                              seed=args.seed)
    invocation = {"p": args.p, "precision": args.precision, "seed": args.seed}
    all_pass = True
    for cert in certificates:
        path = os.path.join(args.out, f"certificate-{cert.result}.json")
        _write_json(path, dict(cert.to_json(), invocation=invocation))
        status = cert.verdict.upper()
        print(f"{cert.result}: {status} ({path})")
        all_pass = all_pass and cert.passed
    return EXIT_PASS if all_pass else EXIT_FAIL


def cmd_check_point(args) -> int:
    try:
        with open(args.input) as handle:
            obj = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {args.input}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON in {args.input}: {exc}") from exc
    pt = chart_point_from_json(obj)
    report = full_report(pt, args.precision)
    field = pt.ring.field
    out_obj = {
        "params": {"n": pt.n, "p": getattr(field, "p", "rationals"),
                   "precision": args.precision,
                   "signature": list(pt.signature)},
        "report": report.to_json(),
    }
    path = os.path.join(args.out, "report.json")
    _write_json(path, out_obj)
    for name, verdict in report.conditions.items():
        print(f"{name}: {verdict.status}")
    print(f"report written to {path}")
    return EXIT_PASS


def cmd_dump_basis(args) -> int:
    field = PrimeField(args.p)
    n = args.n
    if n is None:
        raise SchemaError("basis dumps require --n")
    kwargs = {}
    label = args.kind
    if args.kind == "spin":
        kwargs["eps"] = _parse_eps(args.eps) if args.eps else 1
        label = f"spin{kwargs['eps']:+d}"
    elif args.kind == "refined":
        r, s = _parse_signature(args.signature, n) if args.signature else (n - 1, 1)
        kwargs.update(eps=-1 if s % 2 else 1, r=r, s=s)
        label = f"refined-{r}-{s}"
    elif args.kind == "kl":
        r, s = _parse_signature(args.signature, n) if args.signature else (n - 1, 1)
        l = args.l if args.l is not None else n
        kwargs.update(l=l, r=r, s=s)
        label = f"kl-{l}-{r}-{s}"
    else:
        raise SchemaError(f"unknown basis kind {args.kind!r}")
    generators = spanning_set(args.kind, n, field, **kwargs)
    basis = intersect_with_standard_lattice(generators, args.precision)
    residue = reduce_mod_pi(basis)
    ann = annihilators(residue)
    out_obj = {
        "kind": args.kind,
        "n": n,
        "p": args.p,
        "precision": args.precision,
        "parameters": {k: v for k, v in kwargs.items()},
        "columns": basis.to_json()["columns"],
        "residueBasis": residue.to_json(),
        "annihilatorSummary": {
            "supportSize": len(ann.support),
            "kernelFunctionals": len(ann.functionals),
            "coordinateDimension": ann.coordinate_dim,
            "totalFunctionals": ann.functional_count,
        },
    }
    path = os.path.join(args.out, f"basis-{label}-n{n}.json")
    _write_json(path, out_obj)
    print(f"rank {basis.rank} basis written to {path}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramwedge",
        description="exact wedge-lattice verification for ramified unitary "
                    "moduli conditions")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=DEFAULT_P,
                        help="odd prime modulus of the base field (default 13)")
    common.add_argument("--precision", type=int, default=DEFAULT_PRECISION,
                        help="working pi-adic precision (default 24)")
    common.add_argument("--out", default="results",
                        help="output directory for artifact files")

    p_verify = sub.add_parser("verify", parents=[common],
                              help="run a named verification driver")
    p_verify.add_argument("result_id", choices=RESULT_IDS)
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--signature", default=None, metavar="R,S")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    p_check = sub.add_parser("check-point", parents=[common],
                             help="evaluate every condition on a chart point file")
    p_check.add_argument("--input", required=True, metavar="FILE")
    p_check.set_defaults(func=cmd_check_point)

    p_basis = sub.add_parser("basis", parents=[common],
                             help="dump a lattice basis and its residue basis")
    p_basis.add_argument("kind", choices=("spin", "refined", "kl"))
    p_basis.add_argument("--n", type=int, required=True)
    p_basis.add_argument("--eps", default=None, metavar="+1|-1")
    p_basis.add_argument("--signature", default=None, metavar="R,S")
    p_basis.add_argument("--l", type=int, default=None)
    p_basis.set_defaults(func=cmd_dump_basis)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PrecisionExhaustedError as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
