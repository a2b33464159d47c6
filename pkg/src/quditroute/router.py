"""
Routing of long-range two-wire gates onto a coupling graph.

Three strategies:

- ``SWAP_NAIVE``: walk the control along the path with SWAPs.
- ``SWAP_BALANCED``: walk both endpoints inward at once so the two SWAP
  chains share layers.
- ``LADDER``: no SWAPs. The control condition is parked in the promoted
  levels (d..2d-1) of each intermediate wire, the last intermediate wire
  delivers the increment, and the promotions are undone in mirror order.
  Every wire returns to its input value, so the mapping never changes.

A SWAP of two wires is three two-wire gates: CNOTs for qubits, NegatedSum
gates for d > 2.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Literal

from .errors import InvalidSpecError, RoutingContractError, UnsupportedGateError
from .ir import (
    Circuit,
    ControlledIncrement,
    Gate,
    WireSpec,
    caxc,
    cdx,
    cdxc,
    cx,
    cxt,
    depth,
    gate_count,
)
from .topology import CouplingGraph, Mapping, adjacent, line_graph, shortest_path

log = logging.getLogger(__name__)


class Strategy(enum.Enum):
    SWAP_NAIVE = "swap-naive"
    SWAP_BALANCED = "swap-balanced"
    LADDER = "ladder"


@dataclass(frozen=True)
class RouteMethod:
    strategy: Strategy
    restore_mapping: bool = True
    # route unsupported gates with balanced SWAPs instead of failing (ladder only)
    fallback: bool = False


@dataclass(frozen=True)
class RoutedSection:
    """Gates ``[start, stop)`` of the routed circuit that realize one long-range gate.

    ``ideal`` is the original gate on the physical wires it occupied before
    routing; ``wire_perm[p]`` is where the state on physical wire p ends up.
    """

    start: int
    stop: int
    ideal: Gate
    wire_perm: tuple[int, ...]


@dataclass(frozen=True)
class RoutedResult:
    circuit: Circuit
    final_mapping: Mapping
    sections: tuple[RoutedSection, ...] = field(default=())

    @property
    def gate_count(self) -> int:
        return gate_count(self.circuit)

    @property
    def depth(self) -> int:
        return depth(self.circuit)

    def section_gates(self, section: RoutedSection | None = None) -> list[Gate]:
        """Gates of one section, or of every section concatenated."""
        chosen = [section] if section is not None else self.sections
        return [g for s in chosen for g in self.circuit.gates[s.start:s.stop]]

    @property
    def section_gate_count(self) -> int:
        return gate_count(self.section_gates())

    @property
    def section_depth(self) -> int:
        return depth(self.section_gates())


def swap_as_primitives(u: int, v: int, d: int, config: Literal["A", "B"] = "A") -> list[Gate]:
    """Three-gate SWAP of wires u and v.

    Config A is (v->u, u->v, v->u); config B mirrors it. With d=2 the gates
    are CNOTs, otherwise NegatedSum gates.
    """
    if u == v:
        raise RoutingContractError("SWAP needs two distinct wires")
    if config not in ("A", "B"):
        raise ValueError(f"unknown SWAP configuration {config!r}")
    pairs = [(v, u), (u, v), (v, u)] if config == "A" else [(u, v), (v, u), (u, v)]
    if d == 2:
        return [cx(c, t, 2) for c, t in pairs]
    return [cxt(c, t, d) for c, t in pairs]


def _oriented(path: list[int], gate: Gate) -> list[int]:
    if len(path) < 2:
        raise RoutingContractError(f"path {path} is shorter than two wires")
    if not gate.is_two_wire:
        raise RoutingContractError(f"{gate} is not a two-wire gate")
    if (gate.control, gate.target) == (path[0], path[-1]):
        return list(path)
    if (gate.control, gate.target) == (path[-1], path[0]):
        return list(path[::-1])
    raise RoutingContractError(f"gate wires {gate.wires} are not the endpoints of path {path}")


def _swap_plan(path: list[int], strategy: Strategy) -> tuple[list[tuple[int, int]], tuple[int, int]]:
    """Forward SWAPs in emission order, and the adjacent pair the gate lands on.

    ``path[0]`` holds the control and ``path[-1]`` the target.
    """
    n = len(path)
    hops = n - 2
    if strategy is Strategy.SWAP_NAIVE:
        swaps = [(path[i], path[i + 1]) for i in range(hops)]
        return swaps, (path[n - 2], path[n - 1])
    if strategy is Strategy.SWAP_BALANCED:
        ctl_steps = (hops + 1) // 2
        tgt_steps = hops // 2
        swaps = []
        for i in range(ctl_steps):
            swaps.append((path[i], path[i + 1]))
            if i < tgt_steps:
                swaps.append((path[n - 1 - i], path[n - 2 - i]))
        return swaps, (path[ctl_steps], path[n - 1 - tgt_steps])
    raise ValueError(f"{strategy} is not a SWAP strategy")


def route_gate_swap(path: list[int], gate: Gate, strategy: Strategy, restore: bool,
                    base_dim: int, config: Literal["A", "B"] = "A") -> list[Gate]:
    path = _oriented(path, gate)
    swaps, (c, t) = _swap_plan(path, strategy)
    forward = [g for u, v in swaps for g in swap_as_primitives(u, v, base_dim, config)]
    out = forward + [gate.on(c, t)]
    if restore:
        out += [g.inverse() for g in reversed(forward)]
    return out


def ladder_supports(gate: Gate, base_dim: int) -> bool:
    kind = gate.kind
    return (isinstance(kind, ControlledIncrement)
            and kind.activation == base_dim - 1
            and kind.modulus == base_dim)


def route_gate_ladder(path: list[int], gate: Gate, base_dim: int) -> list[Gate]:
    """Promote along the path, deliver the increment, then uncompute.

    Emits ``2 * (len(path) - 2) + 1`` gates; consecutive gates always share
    a wire, so depth equals gate count.
    """
    d = base_dim
    if not ladder_supports(gate, d):
        raise UnsupportedGateError(
            f"ladder routes controlled increments firing on {d - 1} mod {d}; got {gate}")
    path = _oriented(path, gate)
    n = len(path)
    if n == 2:
        return [gate]
    compute = [cdx(path[0], path[1], d)]
    compute += [cdxc(path[i], path[i + 1], d) for i in range(1, n - 2)]
    deliver = caxc(path[n - 2], path[n - 1], d, gate.kind.increment)
    return compute + [deliver] + [g.inverse() for g in reversed(compute)]


def route_circuit(circuit: Circuit, graph: CouplingGraph, initial: Mapping | None = None,
                  method: RouteMethod = RouteMethod(Strategy.LADDER)) -> RoutedResult:
    """Route ``circuit`` one gate at a time in program order."""
    n = circuit.n_wires
    d = circuit.base_dim
    if graph.node_count != n:
        raise InvalidSpecError(f"circuit has {n} wires but graph has {graph.node_count} nodes")
    mapping = initial if initial is not None else Mapping.identity(n)
    if len(mapping) != n:
        raise InvalidSpecError(f"mapping covers {len(mapping)} wires, circuit has {n}")

    out: list[Gate] = []
    sections: list[RoutedSection] = []
    for gate in circuit:
        phys = gate.on(*(mapping[w] for w in gate.wires))
        if not phys.is_two_wire or adjacent(graph, phys.control, phys.target):
            out.append(phys)
            continue

        path = shortest_path(graph, phys.control, phys.target)
        strategy, restore = method.strategy, method.restore_mapping
        if strategy is Strategy.LADDER:
            if ladder_supports(phys, d):
                restore = True
            elif method.fallback:
                log.warning("ladder cannot route %s; falling back to balanced SWAPs", gate)
                strategy, restore = Strategy.SWAP_BALANCED, True
            else:
                raise UnsupportedGateError(
                    f"ladder routes controlled increments firing on {d - 1} mod {d}; got {gate}")

        start = len(out)
        before = mapping
        if strategy is Strategy.LADDER:
            out += route_gate_ladder(path, phys, d)
        else:
            out += route_gate_swap(path, phys, strategy, restore, d)
            if not restore:
                swaps, _ = _swap_plan(_oriented(path, phys), strategy)
                for u, v in swaps:
                    mapping = mapping.swapped(u, v)
        sections.append(RoutedSection(start, len(out), phys, mapping.moved_by(before)))

    routed = Circuit(WireSpec(n, d), tuple(out))
    return RoutedResult(routed, mapping, tuple(sections))


@dataclass(frozen=True)
class CostRow:
    n: int
    proposed_gates: int
    proposed_depth: int
    conventional_gates: int
    conventional_depth: int

    def astuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.proposed_gates, self.proposed_depth,
                self.conventional_gates, self.conventional_depth)


def cost_table(n_min: int, n_max: int, base_dim: int = 2) -> list[CostRow]:
    """Measured cost of one end-to-end gate on a line of n wires, per n.

    Proposed = ladder; conventional = balanced SWAPs with restore.
    """
    if n_min < 3 or n_max < n_min:
        raise InvalidSpecError(f"need 3 <= n_min <= n_max, got {n_min}..{n_max}")
    rows = []
    for n in range(n_min, n_max + 1):
        circ = Circuit(WireSpec(n, base_dim), (cx(0, n - 1, base_dim),))
        graph = line_graph(n)
        ladder = route_circuit(circ, graph, method=RouteMethod(Strategy.LADDER))
        swap = route_circuit(circ, graph, method=RouteMethod(Strategy.SWAP_BALANCED, True))
        rows.append(CostRow(n, ladder.gate_count, ladder.depth, swap.gate_count, swap.depth))
    return rows
