"""
Command-line front end.

    quditroute route CIRCUIT TOPOLOGY --method ladder --out routed.qc
    quditroute verify CIRCUIT TOPOLOGY --method swap-balanced
    quditroute table --n-min 3 --n-max 10 --csv table1.csv
    quditroute simulate CIRCUIT --input 100

Exit codes: 0 ok, 1 verification failed, 2 bad input, 3 no path,
4 gate unsupported by the ladder, 5 simulation too large.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

import numpy as np

from .errors import (
    NoPathError,
    OutOfSubspaceError,
    QuditRouteError,
    TooLargeError,
    UnsupportedGateError,
)
from .formats import parse_circuit, parse_topology, print_circuit, read_metadata
from .ir import Circuit
from .router import RouteMethod, RoutedResult, Strategy, cost_table, route_circuit
from .simulator import (
    DEFAULT_CAP,
    basis_state,
    check_cap,
    equivalence_on_base_subspace,
    random_base_state,
    run,
)
from .topology import Mapping

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NO_PATH, EXIT_UNSUPPORTED, EXIT_TOO_LARGE = range(6)

CSV_HEADER = ["n", "proposed_gates", "proposed_depth", "conventional_gates", "conventional_depth"]


class _Exit(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _Exit(EXIT_INPUT, f"{path}: {exc.strerror}") from None


def _load_circuit(path: str) -> Circuit:
    text = _read(path)
    try:
        return parse_circuit(text)
    except QuditRouteError as exc:
        raise _Exit(EXIT_INPUT, f"{path}: {exc}") from None


def _parse_mapping(spec: str | None, n: int) -> Mapping:
    if spec is None:
        return Mapping.identity(n)
    try:
        m = Mapping(tuple(int(x) for x in spec.split(",")))
    except (ValueError, QuditRouteError) as exc:
        raise _Exit(EXIT_INPUT, f"bad mapping {spec!r}: {exc}") from None
    if len(m) != n:
        raise _Exit(EXIT_INPUT, f"mapping {spec!r} covers {len(m)} wires, circuit has {n}")
    return m


def _route(args) -> tuple[Circuit, RoutedResult, Mapping]:
    circuit = _load_circuit(args.circuit)
    text = _read(args.topology)
    try:
        graph = parse_topology(text)
    except QuditRouteError as exc:
        raise _Exit(EXIT_INPUT, f"{args.topology}: {exc}") from None
    if graph.node_count != circuit.n_wires:
        raise _Exit(EXIT_INPUT, f"circuit has {circuit.n_wires} wires but topology has "
                                f"{graph.node_count} nodes")
    initial = _parse_mapping(args.initial, circuit.n_wires)
    method = RouteMethod(Strategy(args.method), args.restore == "on", args.fallback)
    try:
        result = route_circuit(circuit, graph, initial, method)
    except NoPathError as exc:
        raise _Exit(EXIT_NO_PATH, str(exc)) from None
    except UnsupportedGateError as exc:
        raise _Exit(EXIT_UNSUPPORTED, str(exc)) from None
    return circuit, result, initial


def routed_text(result: RoutedResult, method: str, restore: bool) -> str:
    comments = [
        f"gate_count={result.section_gate_count}",
        f"depth={result.section_depth}",
        f"total_gate_count={result.gate_count}",
        f"total_depth={result.depth}",
        "final_mapping=" + ",".join(str(p) for p in result.final_mapping.logical_to_physical),
        f"method={method}",
        f"restore={'on' if restore else 'off'}",
    ]
    return print_circuit(result.circuit, comments)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def cmd_route(args) -> int:
    _, result, _ = _route(args)
    _emit(routed_text(result, args.method, args.restore == "on"), args.out)
    return EXIT_OK


def _fmt(x: float) -> str:
    s = f"{x:.6g}"
    return "0" if s in ("-0", "0") else s


def cmd_verify(args) -> int:
    circuit = _load_circuit(args.circuit)
    try:
        check_cap(circuit.spec.dims, args.cap)
    except TooLargeError as exc:
        raise _Exit(EXIT_TOO_LARGE, str(exc)) from None

    if args.routed is None:
        _, result, _ = _route(args)
        checks = [(Circuit(result.circuit.spec, result.section_gates(s)), s.ideal, s.wire_perm)
                  for s in result.sections]
        if not checks:
            print("nothing to verify: no long-range gates", file=sys.stderr)
    else:
        text = _read(args.routed)
        try:
            routed = parse_circuit(text)
        except QuditRouteError as exc:
            raise _Exit(EXIT_INPUT, f"{args.routed}: {exc}") from None
        if routed.spec != circuit.spec:
            raise _Exit(EXIT_INPUT, "routed file radix/wires differ from the circuit")
        initial = _parse_mapping(args.initial, circuit.n_wires)
        final = _parse_mapping(read_metadata(text).get("final_mapping"), circuit.n_wires)
        ideal = Circuit(circuit.spec, tuple(g.on(*(initial[w] for w in g.wires)) for g in circuit))
        checks = [(routed, ideal, final.moved_by(initial))]

    ok = True
    for routed, ideal, perm in checks:
        try:
            rep = equivalence_on_base_subspace(routed, ideal, mapping_perm=perm, tol=args.tol,
                                               cap=args.cap)
        except OutOfSubspaceError as exc:
            raise _Exit(EXIT_INPUT, f"ideal circuit leaves the base subspace: {exc}") from None
        verdict = "PASS" if rep.passed else "FAIL"
        print(f"{verdict} max_dev={_fmt(rep.max_deviation)} leakage={_fmt(rep.leakage)}")
        ok &= rep.passed
    return EXIT_OK if ok else EXIT_FAIL


def table_csv(n_min: int, n_max: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_NONE)
    writer.writerow(CSV_HEADER)
    for row in cost_table(n_min, n_max):
        writer.writerow(row.astuple())
    return buf.getvalue()


def cmd_table(args) -> int:
    if args.n_min < 3 or args.n_max < args.n_min:
        raise _Exit(EXIT_INPUT, f"need 3 <= n-min <= n-max, got {args.n_min}..{args.n_max}")
    _emit(table_csv(args.n_min, args.n_max), args.csv)
    return EXIT_OK


def _parse_digits(s: str, n: int, dim: int) -> tuple[int, ...]:
    tokens = s.split(",") if "," in s else list(s)
    try:
        values = tuple(int(t) for t in tokens)
    except ValueError:
        raise _Exit(EXIT_INPUT, f"bad input digits {s!r}") from None
    if len(values) != n:
        raise _Exit(EXIT_INPUT, f"input has {len(values)} digits, circuit has {n} wires")
    for v in values:
        if not 0 <= v < dim:
            raise _Exit(EXIT_INPUT, f"digit {v} outside [0, {dim})")
    return values


def _digits_str(values: tuple[int, ...]) -> str:
    return "".join(map(str, values)) if max(values, default=0) < 10 else ",".join(map(str, values))


def cmd_simulate(args) -> int:
    circuit = _load_circuit(args.circuit)
    dims = circuit.spec.dims
    try:
        check_cap(dims, args.cap)
    except TooLargeError as exc:
        raise _Exit(EXIT_TOO_LARGE, str(exc)) from None
    if args.input is not None:
        state = basis_state(dims, _parse_digits(args.input, circuit.n_wires, circuit.spec.working_dim))
    else:
        state = random_base_state(dims, circuit.base_dim, np.random.default_rng(args.random))
    try:
        out = run(circuit, state)
    except OutOfSubspaceError as exc:
        raise _Exit(EXIT_INPUT, str(exc)) from None
    for digits, amp in out.nonzero(atol=1e-12):
        print(f"{_digits_str(digits)}: {_fmt(amp.real)},{_fmt(amp.imag)}")
    return EXIT_OK


def _add_routing_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("circuit")
    p.add_argument("topology")
    p.add_argument("--method", choices=[s.value for s in Strategy], default="ladder")
    p.add_argument("--restore", choices=["on", "off"], default="on",
                   help="mirror SWAPs so the final mapping equals the initial one")
    p.add_argument("--initial", help="initial logical->physical mapping, e.g. 0,1,2")
    p.add_argument("--fallback", action="store_true",
                   help="route gates the ladder cannot handle with balanced SWAPs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quditroute", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("route", help="route a circuit onto a topology")
    _add_routing_args(p)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=cmd_route)

    p = sub.add_parser("verify", help="check routed circuits against the ideal gates")
    _add_routing_args(p)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="max state dimension")
    p.add_argument("--routed", help="verify this routed file instead of routing afresh")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="gate count / depth comparison as CSV")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--csv", help="output path (default stdout)")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simulate", help="run a circuit on a basis or random input")
    p.add_argument("circuit")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--input", help="basis digits, e.g. 100 or 1,0,0")
    group.add_argument("--random", type=int, metavar="SEED")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
