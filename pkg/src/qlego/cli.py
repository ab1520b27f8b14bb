"""Command line interface: ``qlego <command> ...``.

Exit codes: 0 success, 1 usage or parse error, 2 mathematical inconsistency
(a contraction failed its rank check, or an operator does not commute),
3 an enumeration budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import builders, io
from .analysis import BudgetExceeded, DEFAULT_BUDGET, distance, is_correctable_erasure
from .decoder import depolarizing, export_tl, monte_carlo, write_csv
from .duality import CodeReport, DualityError, describe, extract, gauge_fix
from .network import NetworkError, TensorNetwork, leg_name, parse_leg
from .pushing import SymbolicError, find_representation, flow_decomposition, flow_to_dot, symbolic_flow, verify_symbolic
from .symplectic import CommutationError, format_pauli, parse_pauli
from .trace import TraceError

EXIT_OK, EXIT_USAGE, EXIT_MATH, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _report(net: TensorNetwork, keep_pairs: Sequence[str] = ()) -> CodeReport:
    report = extract(net.build())
    if keep_pairs:
        ops = []
        for item in keep_pairs:
            x_text, sep, z_text = item.partition(":")
            if not sep:
                raise UsageError(f"--keep-pair expects XPAULI:ZPAULI, got {item!r}")
            ops.append((parse_pauli(x_text, net.d), parse_pauli(z_text, net.d)))
        report = gauge_fix(report, ops)
    return report


# -- demos ----------------------------------------------------------------------

DEMOS = (
    "toric",
    "surface",
    "xzzx",
    "twist",
    "bacon-shor",
    "chain",
    "1d-dual",
    "3d",
    "rm-pair",
    "flat-perfect",
    "cz-check",
    "steane-from-422",
    "double-trace",
)


def demo_network(args) -> TensorNetwork:
    name = args.name
    if name == "toric":
        return builders.toric(args.L)
    if name == "surface":
        return builders.surface(args.M, args.N, args.boundary, args.r)
    if name == "xzzx":
        return builders.xzzx(args.M, args.N)
    if name == "twist":
        return builders.triangle_twist(args.R)
    if name == "bacon-shor":
        return builders.bacon_shor(args.M, args.N)
    if name == "chain":
        return builders.chain(args.m)
    if name == "1d-dual":
        return builders.one_d_dual(args.M, args.N)
    if name == "3d":
        return builders.three_d_steane(args.L, args.L, args.L, args.boundary3d)
    if name == "rm-pair":
        return builders.rm_pair(args.x_variant)
    if name == "flat-perfect":
        return builders.flat_perfect(args.L)
    if name == "cz-check":
        return builders.cz_network(args.d)
    if name == "steane-from-422":
        return builders.steane_from_422()
    if name == "double-trace":
        return builders.double_trace()
    raise UsageError(f"unknown demo {name!r}")


def cmd_demo(args) -> int:
    defaults = {"toric": 3, "flat-perfect": 3, "3d": 2}
    if args.L is None:
        args.L = defaults.get(args.name, 3)
    try:
        net = demo_network(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.name == "cz-check":
        ok = builders.verify_cz_synthesis(args.d)
        if args.out:
            io.dump(net, args.out)
        print("PASS" if ok else "FAIL")
        return EXIT_OK if ok else EXIT_MATH
    if args.out:
        io.dump(net, args.out)
    elif not args.build:
        sys.stdout.write(io.dumps(net))
    if args.build:
        built = net.build()
        report = extract(built)
        if args.name == "bacon-shor":
            report = gauge_fix(report, [builders.bacon_shor_logicals(args.M, args.N, built)])
        print(_describe(report, _quick_distance(report)))
    return EXIT_OK


# -- other commands ------------------------------------------------------------------


# build reports a distance only when one of these cheap searches settles it
BUILD_SPAN_BUDGET = 2**20
BUILD_CAP, BUILD_CAP_BUDGET = 3, 2**18


def _quick_distance(report: CodeReport) -> int | None:
    if report.true_k == 0:
        return None
    try:
        res = distance(report, budget=BUILD_SPAN_BUDGET)
    except BudgetExceeded:
        try:
            res = distance(report, BUILD_CAP, budget=BUILD_CAP_BUDGET, method="capped")
        except BudgetExceeded:
            return None
    return None if res.lower_bound else res.distance


def _describe(report: CodeReport, dist: int | None) -> str:
    text = describe(report)
    if dist is None:
        return text
    short = f"[[{report.n},{report.true_k}]]"
    return text.replace(short, f"[[{report.n},{report.true_k},{dist}]]", 1)


def cmd_build(args) -> int:
    net = io.load(args.network)
    report = _report(net, args.keep_pair)
    dist = _quick_distance(report)
    print(_describe(report, dist))
    if args.report:
        data = report.to_dict()
        data["distance"] = dist
        _write(args.report, _json(data))
    return EXIT_OK


def _parse_legs(text: str, report: CodeReport) -> list[int]:
    out = []
    for tok in filter(None, (t.strip() for t in text.split(","))):
        if tok.isdigit():
            out.append(int(tok))
            continue
        leg = parse_leg(tok)
        if leg not in report.physical_legs:
            raise UsageError(f"{tok} is not a physical leg")
        out.append(report.physical_legs.index(leg))
    return out


def cmd_analyze(args) -> int:
    net = io.load(args.network)
    report = _report(net, args.keep_pair)
    print(f"[[{report.n},{report.true_k}]] over GF({report.d})")
    if args.css:
        print(f"css: {str(report.css).lower()}")
        print(f"self-dual: {str(report.self_dual).lower()}")
    if args.erasure is not None:
        legs = _parse_legs(args.erasure, report)
        verdict = "correctable" if is_correctable_erasure(report, legs) else "not correctable"
        print(f"erasure {{{', '.join(map(str, legs))}}}: {verdict}")
    if args.distance:
        if report.true_k == 0:
            print("distance: no logical qudits")
            return EXIT_OK
        try:
            res = distance(report, weight_cap=args.max_weight, budget=args.budget, dressed=not args.bare)
            print(f"distance: {res}")
        except BudgetExceeded as exc:
            print(f"distance: d >= {exc.lower_bound or 1} (budget exceeded)")
    return EXIT_OK


def cmd_push(args) -> int:
    net = io.load(args.network)
    assignment = json.loads(Path(args.assign).read_text())
    ok, dangling = verify_symbolic(net, assignment)
    print(f"ok: {str(ok).lower()}")
    for leg in sorted(dangling):
        print(f"{leg_name(leg)} {dangling[leg]}")
    if args.dot:
        _write(args.dot, flow_to_dot(symbolic_flow(net, assignment)))
    return EXIT_OK


def _xz_of(text: str, d: int) -> tuple[int, int]:
    p = parse_pauli(text, d)
    if p.n != 1:
        raise UsageError(f"prescription {text!r} must act on a single leg")
    return int(p.x[0]), int(p.z[0])


def cmd_represent(args) -> int:
    net = io.load(args.network)
    built = net.build()
    raw = json.loads(Path(args.prescribe).read_text())
    try:
        partial = {parse_leg(k): _xz_of(v, net.d) for k, v in raw.items()}
        rep = find_representation(built, partial)
    except NetworkError as exc:
        raise UsageError(str(exc)) from None
    if rep is None:
        print("no representation")
        return EXIT_OK
    print(f"representation: {rep}")
    for j, leg in enumerate(built.legs):
        x, z = rep.leg(j)
        if x or z:
            print(f"{leg_name(leg)} {format_pauli([x, z], net.d)}")
    if args.dot:
        _write(args.dot, flow_to_dot(flow_decomposition(built, rep)))
    return EXIT_OK


def cmd_decode(args) -> int:
    net = io.load(args.network)
    report = _report(net, args.keep_pair)
    noise = depolarizing(args.p, report.n, report.d)
    res = monte_carlo(report, noise, args.trials, args.seed, budget=args.budget)
    _write(args.csv, write_csv([res]))
    return EXIT_OK


def cmd_export_tl(args) -> int:
    net = io.load(args.network)
    report = _report(net, args.keep_pair)
    tl = export_tl(report, args.logical, budget=args.budget)
    _write(args.out, tl.to_text())
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qlego", description="Build and analyse stabilizer codes from lego networks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_keep(sp):
        sp.add_argument("--keep-pair", action="append", default=[], metavar="X:Z",
                        help="gauge-fix, keeping this logical pair (physical Paulis); repeatable")

    b = sub.add_parser("build", help="contract a network file and print its code")
    b.add_argument("network")
    b.add_argument("--report", help="also write the structured report (JSON) here")
    with_keep(b)
    b.set_defaults(func=cmd_build)

    dm = sub.add_parser("demo", help="write the network file of a known construction")
    dm.add_argument("name", choices=DEMOS)
    dm.add_argument("--L", type=int, default=None)
    dm.add_argument("--M", type=int, default=3)
    dm.add_argument("--N", type=int, default=3)
    dm.add_argument("--R", type=int, default=2, help="twist: quadrant size")
    dm.add_argument("--m", type=int, default=4, help="chain length")
    dm.add_argument("--r", type=int, default=2, help="repetition boundary chunk")
    dm.add_argument("--d", type=int, default=2, help="cz-check qudit dimension")
    dm.add_argument("--boundary", default="stoppers", choices=["stoppers", "bare", "repetition"])
    dm.add_argument("--boundary3d", default="corner", choices=["open", "corner"])
    dm.add_argument("--x-variant", action="store_true", help="rm-pair: second tile carries the extra X")
    dm.add_argument("--out", help="network file to write (default: stdout)")
    dm.add_argument("--build", action="store_true", help="build and print the code")
    dm.set_defaults(func=cmd_demo)

    a = sub.add_parser("analyze", help="distance, erasure and CSS checks")
    a.add_argument("network")
    a.add_argument("--distance", action="store_true")
    a.add_argument("--max-weight", type=int, default=None)
    a.add_argument("--bare", action="store_true", help="bare instead of dressed distance")
    a.add_argument("--erasure", default=None, help="comma separated physical legs")
    a.add_argument("--css", action="store_true")
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    with_keep(a)
    a.set_defaults(func=cmd_analyze)

    pu = sub.add_parser("push", help="verify a symbolic operator assignment")
    pu.add_argument("network")
    pu.add_argument("--assign", required=True)
    pu.add_argument("--dot")
    pu.set_defaults(func=cmd_push)

    rp = sub.add_parser("represent", help="find a stabilizer matching a prescription")
    rp.add_argument("network")
    rp.add_argument("--prescribe", required=True)
    rp.add_argument("--dot")
    rp.set_defaults(func=cmd_represent)

    dc = sub.add_parser("decode", help="Monte Carlo ML decoding under depolarizing noise")
    dc.add_argument("network")
    dc.add_argument("--p", type=float, required=True)
    dc.add_argument("--trials", type=int, required=True)
    dc.add_argument("--seed", type=int, required=True)
    dc.add_argument("--csv", default=None)
    dc.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    with_keep(dc)
    dc.set_defaults(func=cmd_decode)

    t = sub.add_parser("export-tl", help="write the sparse T(L) tensor")
    t.add_argument("network")
    t.add_argument("--logical", default=None, help="Pauli on the logical qubits; omit for all classes")
    t.add_argument("--out", default=None)
    t.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    with_keep(t)
    t.set_defaults(func=cmd_export_tl)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (io.NetworkFileError, UsageError, SymbolicError, NetworkError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (TraceError, CommutationError, DualityError) as exc:
        print(f"inconsistent: {exc}", file=sys.stderr)
        return EXIT_MATH
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
