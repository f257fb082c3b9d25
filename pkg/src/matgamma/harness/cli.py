"""Command-line interface.

Thin client of the library: each subcommand parses files, calls the
corresponding library function, and writes machine output to stdout or
--out. Diagnostics go to stderr; failures map onto documented exit
codes (2 malformed input, 3 pole proximity, 4 convergence failure,
5 precondition violation).
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..analysis import cond_gamma, beta as beta_fn, gamma_norm_bound, tail_bound
from ..errors import MalformedInputError, MatGammaError, PreconditionError, exit_code_for
from ..gamma_core import GammaMethod
from ..schur_parlett import gamma
from .experiment import (
    default_suite,
    records_to_csv,
    records_to_json,
    run_experiment,
    smoke_suite,
)
from .gallery import GALLERY_NAMES, gallery
from .io import MatrixDocument, dumps_csv, dumps_json, read_matrix, write_matrix

_METHOD_FLAGS = tuple(m.value for m in GammaMethod)


def _method_arg(parser) -> None:
    parser.add_argument(
        "--method",
        choices=_METHOD_FLAGS,
        default=GammaMethod.LANCZOS.value,
        help="gamma backend (default: lanczos)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matgamma",
        description="Gamma function of square complex matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate gamma of a matrix file")
    _method_arg(p)
    p.add_argument("--input", required=True, help="matrix file (JSON or CSV)")
    p.add_argument("--output", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), help="output format")

    p = sub.add_parser("beta", help="matrix beta function of two matrix files")
    p.add_argument("--a", required=True, dest="a_file", help="first matrix file")
    p.add_argument("--b", required=True, dest="b_file", help="second matrix file")
    _method_arg(p)
    p.add_argument("--output", help="write the result here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), help="output format")

    p = sub.add_parser("cond", help="relative condition number of gamma at A")
    p.add_argument("--input", required=True, help="matrix file")
    _method_arg(p)

    p = sub.add_parser("bounds", help="tail and norm bound reports for a matrix")
    p.add_argument("--input", required=True, help="matrix file")
    p.add_argument("--r", type=float, default=1.0, help="tail split point (>= 1)")
    p.add_argument(
        "--strict",
        action="store_true",
        help="exit with code 5 when a bound is not evaluable",
    )

    p = sub.add_parser("bench", help="run the benchmark suite")
    p.add_argument("--suite", choices=("default", "smoke"), default="default")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", required=True, help="output file")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("gallery", help="generate a test matrix file")
    p.add_argument("--name", required=True, choices=GALLERY_NAMES)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output file (JSON)")

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _effective_seed(args) -> int:
    env = os.environ.get("MATGAMMA_SEED")
    if env is None:
        return args.seed
    try:
        return int(env)
    except ValueError as exc:
        raise MalformedInputError(
            f"MATGAMMA_SEED must be an integer, got {env!r}"
        ) from exc


def _emit_matrix(doc: MatrixDocument, args) -> None:
    if args.output:
        write_matrix(args.output, doc, fmt=args.format)
    elif args.format == "csv":
        sys.stdout.write(dumps_csv(doc))
    else:
        sys.stdout.write(dumps_json(doc))


def _cmd_compute(args) -> int:
    doc = read_matrix(args.input)
    result = gamma(doc.to_matrix(), GammaMethod(args.method))
    _emit_matrix(MatrixDocument.from_matrix(result, name=doc.name), args)
    return 0


def _cmd_beta(args) -> int:
    doc_a = read_matrix(args.a_file)
    doc_b = read_matrix(args.b_file)
    result = beta_fn(
        doc_a.to_matrix(), doc_b.to_matrix(), GammaMethod(args.method)
    )
    _emit_matrix(MatrixDocument.from_matrix(result), args)
    return 0


def _cmd_cond(args) -> int:
    doc = read_matrix(args.input)
    value = cond_gamma(doc.to_matrix(), GammaMethod(args.method))
    sys.stdout.write(repr(value) + "\n")
    return 0


def _cmd_bounds(args) -> int:
    doc = read_matrix(args.input)
    a = doc.to_matrix()
    tail = tail_bound(a, args.r)
    norm = gamma_norm_bound(a)
    if args.strict:
        for report in (tail, norm):
            if not report.evaluable:
                raise PreconditionError(
                    f"{report.kind} is not evaluable: {report.reason}"
                )
    digest = {"tail": tail.as_dict(), "norm": norm.as_dict()}
    sys.stdout.write(json.dumps(digest, indent=2, sort_keys=True) + "\n")
    return 0


def _cmd_bench(args) -> int:
    seed = _effective_seed(args)
    suite = default_suite(seed) if args.suite == "default" else smoke_suite(seed)
    records = run_experiment(suite)
    text = records_to_csv(records) if args.format == "csv" else records_to_json(records)
    with open(args.out, "w") as fh:
        fh.write(text)
    print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    return 0


def _cmd_gallery(args) -> int:
    seed = _effective_seed(args)
    a = gallery(args.name, args.n, seed=seed)
    doc = MatrixDocument.from_matrix(a, name=f"{args.name}{args.n}")
    write_matrix(args.out, doc, fmt="json")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from ..service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "compute": _cmd_compute,
    "beta": _cmd_beta,
    "cond": _cmd_cond,
    "bounds": _cmd_bounds,
    "bench": _cmd_bench,
    "gallery": _cmd_gallery,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except MatGammaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exit_code_for(exc)


if __name__ == "__main__":
    sys.exit(main())
