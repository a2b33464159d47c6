"""
Line-oriented text formats for circuits and topologies.

Circuit file::

    # comment
    radix 2
    wires 3
    block 0 1 2
    cx 0 2 1

Gate opcodes (d = radix):

    cx c t a       target += a mod d when control == d-1
    cxt c t        target <- (-control - target) mod d
    x w k          target += k mod d
    block w...     opaque block
    cdx c t        target += d mod 2d when control == d-1   (cdx-: -d)
    cdxc c t       target += d mod 2d when control > d-1    (cdxc-: -d)
    caxc c t a     target += a mod d when control > d-1

Topology file::

    nodes 3
    edge 0 1
    edge 1 2
"""
from __future__ import annotations

from typing import Iterator

from .errors import ParseError, QuditRouteError
from .ir import (
    Circuit,
    ConditionalIncrement,
    ControlledIncrement,
    Gate,
    LocalIncrement,
    NegatedSum,
    OpaqueBlock,
    WireSpec,
    block,
    caxc,
    cdx,
    cdxc,
    cx,
    cxt,
    shift,
)
from .topology import CouplingGraph

# opcode -> (number of wire operands, takes an amount operand)
_OPCODES = {
    "cx": (2, True),
    "cxt": (2, False),
    "x": (1, True),
    "cdx": (2, False),
    "cdx-": (2, False),
    "cdxc": (2, False),
    "cdxc-": (2, False),
    "caxc": (2, True),
}


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield lineno, tokens


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected integer {what}, got {tok!r}", lineno) from None


def _build_gate(op: str, args: list[int], d: int) -> Gate:
    if op == "block":
        return block(*args)
    if op == "cx":
        return cx(args[0], args[1], d, args[2])
    if op == "cxt":
        return cxt(args[0], args[1], d)
    if op == "x":
        return shift(args[0], d, args[1])
    if op == "caxc":
        return caxc(args[0], args[1], d, args[2])
    sign = -1 if op.endswith("-") else 1
    if op.startswith("cdxc"):
        return cdxc(args[0], args[1], d, sign)
    return cdx(args[0], args[1], d, sign)


def parse_circuit(text: str) -> Circuit:
    radix = wires = None
    gates: list[Gate] = []
    spec = None
    for lineno, (op, *rest) in _lines(text):
        if op in ("radix", "wires"):
            if gates:
                raise ParseError(f"header '{op}' after the first gate", lineno)
            if len(rest) != 1:
                raise ParseError(f"'{op}' takes exactly one integer", lineno)
            value = _int(rest[0], lineno, op)
            if op == "radix":
                radix = value
            else:
                wires = value
            continue
        if radix is None or wires is None:
            raise ParseError("gate before 'radix' and 'wires' headers", lineno)
        if spec is None:
            try:
                spec = WireSpec(wires, radix)
            except QuditRouteError as exc:
                raise ParseError(str(exc), lineno) from None
        args = [_int(t, lineno, "operand") for t in rest]
        if op == "block":
            if not args:
                raise ParseError("block needs at least one wire", lineno)
        elif op in _OPCODES:
            n_wires, has_amount = _OPCODES[op]
            expected = n_wires + has_amount
            if len(args) != expected:
                raise ParseError(f"'{op}' takes {expected} operands, got {len(args)}", lineno)
            if has_amount and not 1 <= abs(args[-1]) < radix:
                raise ParseError(f"amount {args[-1]} must satisfy 1 <= |a| < {radix}", lineno)
        else:
            raise ParseError(f"unknown opcode {op!r}", lineno)
        gate = _build_gate(op, args, radix)
        try:
            gate.validate(spec)
        except QuditRouteError as exc:
            raise ParseError(str(exc), lineno) from None
        gates.append(gate)

    if radix is None or wires is None:
        raise ParseError("missing 'radix' or 'wires' header")
    if spec is None:
        try:
            spec = WireSpec(wires, radix)
        except QuditRouteError as exc:
            raise ParseError(str(exc)) from None
    return Circuit(spec, tuple(gates))


def gate_line(gate: Gate, d: int) -> str:
    kind = gate.kind
    w = " ".join(str(x) for x in gate.wires)
    if isinstance(kind, OpaqueBlock):
        return f"block {w}"
    if isinstance(kind, NegatedSum) and kind.modulus == d:
        return f"cxt {w}"
    if isinstance(kind, LocalIncrement) and kind.modulus == d:
        return f"x {w} {kind.increment}"
    if isinstance(kind, ControlledIncrement) and kind.activation == d - 1:
        if kind.modulus == d:
            return f"cx {w} {kind.increment}"
        if kind.modulus == 2 * d and abs(kind.increment) == d:
            return f"cdx {w}" if kind.increment > 0 else f"cdx- {w}"
    if isinstance(kind, ConditionalIncrement) and kind.threshold == d - 1:
        if kind.modulus == d:
            return f"caxc {w} {kind.increment}"
        if kind.modulus == 2 * d and abs(kind.increment) == d:
            return f"cdxc {w}" if kind.increment > 0 else f"cdxc- {w}"
    raise ValueError(f"{gate} has no circuit-file opcode at radix {d}")


def print_circuit(circuit: Circuit, comments: list[str] | None = None) -> str:
    lines = [f"# {c}" for c in comments or []]
    lines += [f"radix {circuit.base_dim}", f"wires {circuit.n_wires}"]
    lines += [gate_line(g, circuit.base_dim) for g in circuit]
    return "\n".join(lines) + "\n"


def read_metadata(text: str) -> dict[str, str]:
    """``key=value`` pairs from ``# key=value`` comment lines."""
    meta = {}
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("#") and "=" in s:
            key, _, value = s[1:].strip().partition("=")
            if key and " " not in key:
                meta[key] = value.strip()
    return meta


def parse_topology(text: str) -> CouplingGraph:
    nodes = None
    edges = []
    for lineno, (op, *rest) in _lines(text):
        if op == "nodes":
            if nodes is not None or edges:
                raise ParseError("'nodes' must appear once, before any edge", lineno)
            if len(rest) != 1:
                raise ParseError("'nodes' takes exactly one integer", lineno)
            nodes = _int(rest[0], lineno, "node count")
            if nodes < 1:
                raise ParseError(f"node count must be >= 1, got {nodes}", lineno)
        elif op == "edge":
            if nodes is None:
                raise ParseError("edge before 'nodes'", lineno)
            if len(rest) != 2:
                raise ParseError("'edge' takes two node indices", lineno)
            u, v = (_int(t, lineno, "node") for t in rest)
            if u == v:
                raise ParseError(f"self-loop on node {u}", lineno)
            for x in (u, v):
                if not 0 <= x < nodes:
                    raise ParseError(f"node {x} out of range [0, {nodes})", lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown directive {op!r}", lineno)
    if nodes is None:
        raise ParseError("missing 'nodes' line")
    return CouplingGraph(nodes, edges)


def print_topology(graph: CouplingGraph) -> str:
    lines = [f"nodes {graph.node_count}"] + [f"edge {u} {v}" for u, v in sorted(graph.edges)]
    return "\n".join(lines) + "\n"
