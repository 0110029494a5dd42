"""Command line: poly, form, verify, orbit, render, search.

Exit codes: 0 success / verification pass, 1 verification failure,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from pathlib import Path

from .certify import Certificate, search_witness, verify_certificate
from .exactmath import det
from .hypergeo import NonGaloisStable, ParameterMultiset, parameters_to_polynomial
from .registry import builtin_certificate, builtin_labels, load_certificate, resolve_case

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("hypermono")


def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _pos_int(text):
    v = _nonneg_int(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _pos_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {v}")
    return v


def _floats(n):
    def parse(text):
        try:
            vals = tuple(float(x) for x in text.split(","))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from None
        if n is not None and len(vals) != n:
            raise argparse.ArgumentTypeError(f"expected {n} numbers, got {len(vals)}")
        return vals
    return parse


def _chart(text):
    return "auto" if text == "auto" else _floats(None)(text)


def _add_case_args(p):
    p.add_argument("--case", help=f"builtin case label ({', '.join(builtin_labels())}) or label for a user case")
    p.add_argument("--alpha", help="parameter multiset, e.g. 0,0,1/5,2/5,3/5,4/5")
    p.add_argument("--beta", help="parameter multiset")


def _add_orbit_args(p):
    _add_case_args(p)
    p.add_argument("--depth", type=_nonneg_int, required=True, help="maximal word length N")
    p.add_argument("--chart", type=_chart, default="auto",
                   help="chart functional as comma-separated coefficients, or 'auto'")
    p.add_argument("--cutoff", type=_pos_float, default=1e-3)
    p.add_argument("--threads", type=_pos_int, default=os.cpu_count() or 1)
    p.add_argument("--width", type=_pos_int, default=1024)
    p.add_argument("--height", type=_pos_int, default=1024)
    p.add_argument("--blend", type=_pos_float, default=0.15, help="per-point alpha")
    p.add_argument("--window", type=_floats(4), default=None,
                   help="viewport xmin,xmax,ymin,ymax in principal coordinates (zoom)")
    p.add_argument("--axes", choices=("12", "13", "23"), default="12",
                   help="principal components plotted")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypermono", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poly", help="polynomial of a parameter multiset")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta")

    p = sub.add_parser("form", help="invariant integral symplectic form of a case")
    _add_case_args(p)

    p = sub.add_parser("verify", help="verify an arithmeticity certificate")
    p.add_argument("certificate", nargs="?", help="certificate file (JSON)")
    p.add_argument("--case", help="builtin case label")
    p.add_argument("--json", action="store_true", help="machine-readable per-check output")
    p.add_argument("--report", help="also write the text report to this file")
    p.add_argument("--emit-certificate", metavar="PATH",
                   help="write the certificate being checked (form pinned) to PATH")

    p = sub.add_parser("orbit", help="enumerate a partial orbit and export the projected cloud")
    _add_orbit_args(p)
    p.add_argument("--out", help="point-cloud output file")
    p.add_argument("--format", choices=("text", "binary"), default="text")
    p.add_argument("--render", metavar="PNG", help="also render an image")

    p = sub.add_parser("render", help="render a partial orbit to a PNG image")
    _add_orbit_args(p)
    p.add_argument("--out", required=True, help="PNG output file")

    p = sub.add_parser("search", help="bounded breadth-first witness search")
    _add_case_args(p)
    p.add_argument("--max-len", type=_nonneg_int, default=6)
    p.add_argument("--budget", type=_pos_int, default=None, help="maximal number of words examined")
    return ap


class UsageError(Exception):
    pass


def _case(args):
    return resolve_case(args.case, args.alpha, args.beta)


def cmd_poly(args, out):
    for name in ("alpha", "beta"):
        text = getattr(args, name)
        if text is None:
            continue
        p = parameters_to_polynomial(ParameterMultiset.parse(text))
        print(str(p) if args.beta is None else f"{name}: {p}", file=out)
    return EXIT_OK


def cmd_form(args, out):
    case = _case(args)
    print(f"case: {case.label}", file=out)
    print(f"f: {case.f}", file=out)
    print(f"g: {case.g}", file=out)
    print("omega:", file=out)
    print(case.omega, file=out)
    print(f"det omega: {det(case.omega)}", file=out)
    return EXIT_OK


def cmd_verify(args, out):
    if (args.certificate is None) == (args.case is None):
        raise UsageError("give exactly one of a certificate file or --case")
    if args.case is not None:
        cert = builtin_certificate(args.case, pin_omega=False)
    else:
        cert = load_certificate(args.certificate)
    if args.emit_certificate:
        pinned = cert if cert.omega is not None else cert.with_omega(
            builtin_certificate(args.case).omega if args.case else None)
        Path(args.emit_certificate).write_text(pinned.dumps())
    t0 = time.perf_counter()
    report = verify_certificate(cert)
    log.info("verified %s in %.3f s", cert.label, time.perf_counter() - t0)
    text = report.to_text()
    if args.report:
        Path(args.report).write_text(text)
    out.write(report.to_json() if args.json else text)
    return EXIT_OK if report.verdict else EXIT_FAIL


def _orbit_run(args, cloud_out=None, cloud_format="text", image_out=None, out=sys.stdout):
    from .limitset import Canvas, OrbitConfig, run_pipeline

    case = _case(args)
    config = OrbitConfig(case, args.depth, chart=args.chart, cutoff=args.cutoff, threads=args.threads)
    axes = tuple(int(c) - 1 for c in args.axes)
    canvas = Canvas(args.width, args.height, args.window, args.blend, axes)
    t0 = time.perf_counter()
    res = run_pipeline(config, cloud_out=cloud_out, cloud_format=cloud_format,
                       image_out=image_out, canvas=canvas)
    print(f"case: {case.label}", file=sys.stderr)
    print(f"depth: {args.depth}", file=sys.stderr)
    print(f"points emitted: {res.emitted}", file=sys.stderr)
    print(f"points in chart: {res.kept}", file=sys.stderr)
    print("top variances: " + " ".join(f"{v:.6g}" for v in res.pca.variances), file=sys.stderr)
    if res.window is not None:
        print("window: " + ",".join(f"{v:.6g}" for v in res.window), file=sys.stderr)
    print(f"elapsed: {time.perf_counter() - t0:.2f} s", file=sys.stderr)
    return EXIT_OK


def cmd_orbit(args, out):
    if args.out is None and args.render is None:
        raise UsageError("orbit needs --out and/or --render")
    return _orbit_run(args, args.out, args.format, args.render, out)


def cmd_render(args, out):
    return _orbit_run(args, image_out=args.out, out=out)


def cmd_search(args, out):
    case = _case(args)
    w = search_witness(case, args.max_len, args.budget)
    if w is None:
        print(f"no witness of length <= {args.max_len} found", file=out)
        return EXIT_FAIL
    print(str(w), file=out)
    return EXIT_OK


COMMANDS = {
    "poly": cmd_poly,
    "form": cmd_form,
    "verify": cmd_verify,
    "orbit": cmd_orbit,
    "render": cmd_render,
    "search": cmd_search,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except NonGaloisStable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
