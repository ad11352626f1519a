"""Command-line interface: decompose, sample, dims, verify, chart.

All results are JSON on stdout; diagnostics go to stderr.  Exit codes:
0 success, 1 data error, 2 usage error, 3 verification failure.
"""
from __future__ import annotations

import argparse
import sys

from .charts import conjugate_triple_report, curvature_at
from .decomp import a_decompose, singer_thorpe, w_decompose
from .errors import CurvdecError
from .jsonio import (
    decomposition_document,
    dimension_document,
    dumps,
    parse_chart,
    parse_tensor,
    tensor_document,
    triple_report_document,
)
from .linalg import standard_scalar_product
from .sampling import SAMPLE_SPACES, empirical_dimension, sample
from .suite import CHECKS, SuiteConfig, run_invariant_suite

_DECOMPOSERS = {"w": w_decompose, "a": a_decompose, "st": singer_thorpe}


def _signature(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("signature must be P,Q")
    try:
        p, q = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError("signature must be two integers") from exc
    return p, q


def _point(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError("point must be comma-separated numbers") from exc


def _emit(doc, output: str | None) -> None:
    text = dumps(doc)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str):
    with open(path, "rb") as fh:
        return fh.read()


def _cmd_decompose(args) -> int:
    import json

    raw = _read(args.input)
    tensor, g = parse_tensor(raw)
    include_g = "g" in json.loads(raw.decode("utf-8"))
    result = _DECOMPOSERS[args.mode](tensor, g)
    _emit(decomposition_document(result, g, include_g), args.output)
    return 0


def _cmd_sample(args) -> int:
    sig = args.signature or (args.dim, 0)
    if sig[0] + sig[1] != args.dim:
        print(f"error: signature {sig} inconsistent with dim {args.dim}", file=sys.stderr)
        return 2
    tensor = sample(args.space, args.dim, sig, seed=args.seed)
    g = standard_scalar_product(*sig)
    _emit(tensor_document(tensor, g), args.output)
    return 0


def _cmd_dims(args) -> int:
    sig = args.signature or (args.dim, 0)
    if sig[0] + sig[1] != args.dim:
        print(f"error: signature {sig} inconsistent with dim {args.dim}", file=sys.stderr)
        return 2
    out = {}
    for space in SAMPLE_SPACES:
        report = empirical_dimension(
            space, args.dim, sig, samples=args.samples, seed=args.seed, strict=False
        )
        out[space] = dimension_document(report)
    _emit(out, args.output)
    return 0


def _cmd_verify(args) -> int:
    if args.suite is not None and args.suite not in CHECKS:
        print(
            f"error: unknown suite {args.suite!r}; known: {', '.join(sorted(CHECKS))}",
            file=sys.stderr,
        )
        return 2
    dims = (args.dim,) if args.dim is not None else (3, 4)
    signatures = (args.signature,) if args.signature is not None else None
    cfg = SuiteConfig(
        dims=dims,
        signatures=signatures,
        samples=args.samples,
        seed=args.seed,
        tolerance=args.tol,
    )
    report = run_invariant_suite(cfg, only=None if args.suite is None else [args.suite])
    _emit(report, args.output)
    failed = [name for name, entry in report.items() if not entry["pass"]]
    if failed:
        print("failed checks: " + ", ".join(sorted(failed)), file=sys.stderr)
        return 3
    return 0


def _cmd_chart(args) -> int:
    chart = parse_chart(_read(args.input))
    if len(args.point) != chart.dim:
        print(
            f"error: point has {len(args.point)} coordinates, chart dim is {chart.dim}",
            file=sys.stderr,
        )
        return 2
    if args.report == "triple":
        rep = conjugate_triple_report(chart, args.point)
        _emit(triple_report_document(rep), args.output)
        return 0
    g = chart.metric_at(args.point)
    doc = {
        "point": list(args.point),
        "curvatures": {
            which: tensor_document(curvature_at(chart, args.point, which), g, include_g=True)
            for which in ("levi_civita", "nabla", "nabla_star")
        },
    }
    _emit(doc, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvdec",
        description="Curvature tensor decompositions over pseudo-Euclidean scalar products.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="split a tensor document into components")
    p.add_argument("--mode", choices=("w", "a", "st"), required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("sample", help="draw a reproducible subspace sample")
    p.add_argument("--space", choices=SAMPLE_SPACES, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--signature", type=_signature)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("dims", help="empirical dimension reports for all spaces")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--signature", type=_signature)
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_dims)

    p = sub.add_parser("verify", help="run the invariant suite")
    p.add_argument("--suite", help="run a single named check")
    p.add_argument("--dim", type=int)
    p.add_argument("--signature", type=_signature)
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--output")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("chart", help="evaluate a polynomial chart at a point")
    p.add_argument("--input", required=True)
    p.add_argument("--point", type=_point, required=True)
    p.add_argument("--report", choices=("curvature", "triple"), default="curvature")
    p.add_argument("--output")
    p.set_defaults(func=_cmd_chart)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except CurvdecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
