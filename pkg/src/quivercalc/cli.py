"""Command-line interface.

Every subcommand loads a quiver from JSON, computes or verifies, and prints
either human-readable text or canonical JSON (sorted keys, two-space indent,
no timing data) so identical invocations produce byte-identical output.

Exit status: 0 on success / verified pass, 1 on a verified failure (an
identity check with mismatches, or DT extraction that stays unstable after
one automatic window widening), 2 on usage or input errors (missing or
malformed files, unknown vertex labels, empty windows)."""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (component_dimension, functional_dimension,
                      gr_linking_check, homology_check, poincare_check,
                      _loop_weight)
from .dt import dt_extract
from .motivic import (Conventions, DEFAULT_CONVENTIONS, default_window,
                      diagonalize, motivic_series, verify_diagonalization,
                      verify_link_identity, verify_unlink_identity)
from .quiver import Quiver, QuiverFormatError, link, unlink
from .series import TruncationUnderflow


class InputError(Exception):
    """User-facing input problem; maps to exit status 2."""


def _fail(message):
    raise InputError(message)


def _load_quiver(path):
    try:
        return Quiver.load(path)
    except FileNotFoundError:
        _fail(f"{path}: no such file")
    except (QuiverFormatError, ValueError) as exc:
        _fail(f"{path}: {exc}")


def _check_vertices(quiver, *labels):
    for label in labels:
        try:
            quiver.index(label)
        except KeyError:
            _fail(f"unknown vertex {label!r}; quiver has {list(quiver.vertices)}")


def _window(args, quiver, order):
    qmin = getattr(args, "qmin", None)
    qmax = getattr(args, "qmax", None)
    if (qmin is None) != (qmax is None):
        _fail("--qmin and --qmax must be given together")
    if qmin is None:
        return default_window(order, quiver.max_loops()), True
    if qmin > qmax:
        _fail(f"empty window: --qmin {qmin} > --qmax {qmax}")
    return (qmin, qmax), False


def _conventions(args):
    path = getattr(args, "config", None)
    if path is None:
        return DEFAULT_CONVENTIONS
    try:
        return Conventions.load(path)
    except FileNotFoundError:
        _fail(f"{path}: no such file")
    except (ValueError, json.JSONDecodeError) as exc:
        _fail(f"{path}: {exc}")


def _dump(obj):
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _print_json(obj, out):
    out.write(_dump(obj))


def _save_quiver(quiver, path):
    try:
        quiver.save(path)
    except OSError as exc:
        _fail(f"{path}: {exc}")


def _series_text(series, out):
    out.write(f"vertices: {', '.join(series.vertices)}\n")
    out.write(f"degree cap: {series.cap}; window: [{series.window[0]}, {series.window[1]}]\n")
    for d in sorted(series.terms, key=lambda d: (sum(d), d)):
        out.write(f"x^{d}: {series.terms[d].to_q_string()}\n")


def _report_exit(report, args, out):
    if args.output == "json":
        _print_json(report.to_json(), out)
    else:
        out.write(report.summary() + "\n")
        for mm in report.mismatches[:5]:
            out.write(f"  mismatch: {json.dumps(mm, sort_keys=True)}\n")
        if len(report.mismatches) > 5:
            out.write(f"  ... and {len(report.mismatches) - 5} more\n")
    return 0 if report.passed else 1


# -- subcommands ---------------------------------------------------------------

def cmd_info(args, out):
    quiver = _load_quiver(args.quiver)
    data = {
        "vertices": list(quiver.vertices),
        "matrix": [list(r) for r in quiver.matrix],
        "loops": {v: quiver.loops(v) for v in quiver.vertices},
        "max_loops": quiver.max_loops(),
        "symmetric": True,
    }
    if args.output == "json":
        _print_json(data, out)
    else:
        out.write(f"vertices: {', '.join(quiver.vertices)}\n")
        for v, row in zip(quiver.vertices, quiver.matrix):
            out.write(f"  {v}: {list(row)}\n")
    return 0


def cmd_series(args, out):
    quiver = _load_quiver(args.quiver)
    window, _ = _window(args, quiver, args.order)
    series = motivic_series(quiver, args.order, window)
    if args.output == "json":
        _print_json(series.to_json(), out)
    else:
        _series_text(series, out)
    return 0


def cmd_dt(args, out):
    quiver = _load_quiver(args.quiver)
    window, auto = _window(args, quiver, args.order)
    series = motivic_series(quiver, args.order, window)
    result = dt_extract(series, guard=args.guard)
    widened = False
    if not result.all_stable() and auto:
        # one automatic retry on a doubled window
        window = (2 * window[0], 2 * window[1])
        series = motivic_series(quiver, args.order, window)
        result = dt_extract(series, guard=args.guard)
        widened = True
    if args.output == "json":
        payload = result.to_json()
        payload["window_widened"] = widened
        _print_json(payload, out)
    else:
        for entry in result.entries:
            flag = "" if entry.stable else "  UNSTABLE"
            omega = {e: c for e, c in sorted(entry.u_coeffs.items())} or 0
            out.write(f"Omega{entry.degree}: {omega}{flag}\n")
    return 0 if result.all_stable() else 1


def _transform(args, out, op, opname):
    quiver = _load_quiver(args.quiver)
    _check_vertices(quiver, args.a, args.b)
    try:
        transformed = op(quiver, args.a, args.b)
    except ValueError as exc:
        _fail(str(exc))
    if args.outfile:
        _save_quiver(transformed, args.outfile)
    payload = {"operation": opname, "pair": [args.a, args.b],
               "new_vertex": transformed.vertices[-1],
               "quiver": transformed.to_json()}
    if args.output == "json":
        _print_json(payload, out)
    else:
        out.write(f"{opname}({args.a}, {args.b}) added vertex "
                  f"{transformed.vertices[-1]!r}\n")
        for v, row in zip(transformed.vertices, transformed.matrix):
            out.write(f"  {v}: {list(row)}\n")
    return 0


def cmd_link(args, out):
    return _transform(args, out, link, "link")


def cmd_unlink(args, out):
    return _transform(args, out, unlink, "unlink")


def cmd_diagonalize(args, out):
    quiver = _load_quiver(args.quiver)
    conventions = _conventions(args)
    result = diagonalize(quiver, args.order, conventions)
    if args.outfile:
        _save_quiver(result.diagonal_quiver(), args.outfile)
    if args.output == "json":
        _print_json(result.to_json(), out)
    else:
        out.write(f"diagonal factors after {result.rounds} rounds "
                  f"({result.pruned_count} pruned):\n")
        for f in result.factors:
            out.write(f"  {f.label}: loops={f.loop_count} "
                      f"monomial=x^{f.monomial.exponents} qpow={f.monomial.qpow}\n")
    return 0


def cmd_algebra_dims(args, out):
    quiver = _load_quiver(args.quiver)
    try:
        degree = tuple(int(part) for part in args.degree.split(","))
    except ValueError:
        _fail(f"--degree must be comma-separated integers, got {args.degree!r}")
    if len(degree) != len(quiver) or any(x < 0 for x in degree):
        _fail(f"--degree needs {len(quiver)} nonnegative entries, got {args.degree!r}")
    rows = []
    base = _loop_weight(quiver, degree)
    for s in range(args.smax + 1):
        h = -base - 2 * s
        rows.append({"hdeg": h, "k_weight": s,
                     "dimension": component_dimension(quiver, degree, h),
                     "functional_dimension": functional_dimension(quiver, degree, h)})
    payload = {"quiver": quiver.to_json(), "degree": list(degree), "components": rows}
    if args.output == "json":
        _print_json(payload, out)
    else:
        out.write(f"degree {degree}:\n")
        for r in rows:
            out.write(f"  h={r['hdeg']}: dim={r['dimension']} "
                      f"functional={r['functional_dimension']}\n")
    return 0


def cmd_verify(args, out):
    quiver = _load_quiver(args.quiver)
    needs_pair = args.target in ("linking", "unlinking", "gr", "homology")
    if needs_pair:
        if args.a is None or args.b is None:
            _fail(f"verify {args.target} needs two vertex labels")
        _check_vertices(quiver, args.a, args.b)
        if args.a == args.b:
            _fail("vertex pair must be distinct")
    conventions = _conventions(args)
    try:
        if args.target == "linking":
            window, _ = _window(args, quiver, args.order)
            report = verify_link_identity(quiver, args.a, args.b, args.order,
                                          window, conventions, args.calibrate)
        elif args.target == "unlinking":
            window, _ = _window(args, quiver, args.order)
            report = verify_unlink_identity(quiver, args.a, args.b, args.order,
                                            window, conventions, args.calibrate)
        elif args.target == "diagonalization":
            window = None
            if getattr(args, "qmin", None) is not None:
                window, _ = _window(args, quiver, args.order)
            report = verify_diagonalization(quiver, args.order, window, conventions)
        elif args.target == "poincare":
            window, _ = _window(args, quiver, args.order)
            report = poincare_check(quiver, args.order, window)
        elif args.target == "gr":
            report = gr_linking_check(quiver, args.a, args.b, args.order,
                                      s_max=args.smax)
        elif args.target == "homology":
            report = homology_check(quiver, args.a, args.b, args.order,
                                    s_max=args.smax)
        else:
            _fail(f"unknown verify target {args.target!r}")
    except ValueError as exc:
        _fail(str(exc))
    return _report_exit(report, args, out)


# -- parser ---------------------------------------------------------------------

def _add_common(sub, order=True, window=True, config=False):
    sub.add_argument("quiver", help="path to a quiver JSON file")
    if order:
        sub.add_argument("--order", type=int, default=3,
                         help="total x-degree truncation (default 3)")
    if window:
        sub.add_argument("--qmin", type=int, default=None,
                         help="window lower bound, in half-integer q powers")
        sub.add_argument("--qmax", type=int, default=None,
                         help="window upper bound, in half-integer q powers")
    sub.add_argument("--output", choices=("text", "json"), default="text",
                     help="output format (default text)")
    if config:
        sub.add_argument("--config", default=None,
                         help="JSON file overriding substitution conventions")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quivercalc",
        description="Exact motivic series, DT invariants, and quadratic-algebra "
                    "computations for symmetric quivers.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("info", help="describe a quiver file")
    _add_common(sub, order=False, window=False)
    sub.set_defaults(handler=cmd_info)

    sub = subs.add_parser("series", help="print the motivic generating series")
    _add_common(sub)
    sub.set_defaults(handler=cmd_series)

    sub = subs.add_parser("dt", help="extract motivic DT invariants")
    _add_common(sub)
    sub.add_argument("--guard", type=int, default=5,
                     help="stabilization guard band (default 5)")
    sub.set_defaults(handler=cmd_dt)

    for name, handler in (("link", cmd_link), ("unlink", cmd_unlink)):
        sub = subs.add_parser(name, help=f"{name} a vertex pair")
        sub.add_argument("quiver", help="path to a quiver JSON file")
        sub.add_argument("a", help="first vertex label")
        sub.add_argument("b", help="second vertex label")
        sub.add_argument("-o", "--outfile", default=None,
                         help="write the transformed quiver JSON here")
        sub.add_argument("--output", choices=("text", "json"), default="text")
        sub.set_defaults(handler=handler)

    sub = subs.add_parser("diagonalize",
                          help="unlink repeatedly and report diagonal factors")
    _add_common(sub, window=False, config=True)
    sub.add_argument("-o", "--outfile", default=None,
                     help="write the diagonal quiver JSON here")
    sub.set_defaults(handler=cmd_diagonalize)

    sub = subs.add_parser("algebra-dims",
                          help="exact component dimensions of the quadratic algebra")
    _add_common(sub, order=False, window=False)
    sub.add_argument("--degree", required=True,
                     help="dimension vector, comma separated (e.g. 1,1)")
    sub.add_argument("--smax", type=int, default=8,
                     help="largest total level weight to tabulate (default 8)")
    sub.set_defaults(handler=cmd_algebra_dims)

    sub = subs.add_parser("verify", help="run an exact identity check")
    sub.add_argument("target", choices=("linking", "unlinking", "diagonalization",
                                        "poincare", "gr", "homology"))
    sub.add_argument("quiver", help="path to a quiver JSON file")
    sub.add_argument("a", nargs="?", default=None, help="first vertex label")
    sub.add_argument("b", nargs="?", default=None, help="second vertex label")
    sub.add_argument("--order", type=int, default=3,
                     help="truncation order / dimension bound (default 3)")
    sub.add_argument("--qmin", type=int, default=None)
    sub.add_argument("--qmax", type=int, default=None)
    sub.add_argument("--smax", type=int, default=8,
                     help="level-weight bound for gr/homology (default 8)")
    sub.add_argument("--calibrate", action="store_true",
                     help="also scan substitution constants q^(k/2), k=-2..2")
    sub.add_argument("--output", choices=("text", "json"), default="text")
    sub.add_argument("--config", default=None,
                     help="JSON file overriding substitution conventions")
    sub.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, out)
    except InputError as exc:
        err.write(f"error: {exc}\n")
        return 2
    except TruncationUnderflow as exc:
        err.write(f"error: {exc}\n")
        return 2


def run():
    raise SystemExit(main())


if __name__ == "__main__":
    run()
