"""
Circuit IR: wire specs, the gate vocabulary, and structural metrics.

Gates carry no matrices. Their action on basis states lives in
``quditroute.semantics``; this module only knows which wires a gate touches
and how to invert it.

Gate kinds:
    - ControlledIncrement: target += k (mod m) when control == activation
    - ConditionalIncrement: target += k (mod m) when control > threshold
    - NegatedSum: target <- (-control - target) mod d
    - LocalIncrement: single-wire target += k (mod m)
    - OpaqueBlock: placeholder for an unexpanded block of gates
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .errors import GateValidationError, InvalidSpecError, NonInvertibleError


@dataclass(frozen=True)
class WireSpec:
    count: int
    base_dim: int

    def __post_init__(self):
        if self.base_dim < 2:
            raise InvalidSpecError(f"base_dim must be >= 2, got {self.base_dim}")
        if self.count < 1:
            raise InvalidSpecError(f"wire count must be >= 1, got {self.count}")

    @property
    def working_dim(self) -> int:
        return 2 * self.base_dim

    @property
    def dims(self) -> tuple[int, ...]:
        return (self.working_dim,) * self.count


@dataclass(frozen=True)
class ControlledIncrement:
    activation: int
    increment: int
    modulus: int


@dataclass(frozen=True)
class ConditionalIncrement:
    threshold: int
    increment: int
    modulus: int


@dataclass(frozen=True)
class NegatedSum:
    modulus: int


@dataclass(frozen=True)
class LocalIncrement:
    increment: int
    modulus: int


@dataclass(frozen=True)
class OpaqueBlock:
    pass


GateKind = Union[ControlledIncrement, ConditionalIncrement, NegatedSum, LocalIncrement, OpaqueBlock]

_TWO_WIRE = (ControlledIncrement, ConditionalIncrement, NegatedSum)
_INCREMENTS = (ControlledIncrement, ConditionalIncrement, LocalIncrement)


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    wires: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))

    @property
    def is_two_wire(self) -> bool:
        return isinstance(self.kind, _TWO_WIRE)

    @property
    def control(self) -> int:
        return self.wires[0]

    @property
    def target(self) -> int:
        return self.wires[-1]

    def on(self, *wires: int) -> Gate:
        """Same gate kind acting on different wires."""
        return Gate(self.kind, tuple(wires))

    def inverse(self) -> Gate:
        kind = self.kind
        if isinstance(kind, OpaqueBlock):
            raise NonInvertibleError("opaque blocks have no inverse")
        if isinstance(kind, NegatedSum):
            return self
        return Gate(_negated(kind), self.wires)

    def validate(self, spec: WireSpec) -> None:
        kind = self.kind
        if isinstance(kind, _TWO_WIRE):
            if len(self.wires) != 2:
                raise GateValidationError(f"{type(kind).__name__} needs 2 wires, got {self.wires}")
        elif isinstance(kind, LocalIncrement):
            if len(self.wires) != 1:
                raise GateValidationError(f"LocalIncrement needs 1 wire, got {self.wires}")
        elif not self.wires:
            raise GateValidationError("OpaqueBlock needs at least one wire")
        for w in self.wires:
            if not 0 <= w < spec.count:
                raise GateValidationError(f"wire {w} out of range [0, {spec.count})")
        if len(set(self.wires)) != len(self.wires):
            raise GateValidationError(f"duplicate wires {self.wires}")

        wd = spec.working_dim
        if isinstance(kind, (NegatedSum, *_INCREMENTS)):
            if not 2 <= kind.modulus <= wd:
                raise GateValidationError(f"modulus {kind.modulus} outside [2, {wd}]")
        if isinstance(kind, _INCREMENTS):
            if not 1 <= abs(kind.increment) < kind.modulus:
                raise GateValidationError(
                    f"increment {kind.increment} must satisfy 1 <= |k| < {kind.modulus}")
        if isinstance(kind, ControlledIncrement) and not 0 <= kind.activation < wd:
            raise GateValidationError(f"activation {kind.activation} outside [0, {wd})")
        if isinstance(kind, ConditionalIncrement) and not 0 <= kind.threshold < wd - 1:
            raise GateValidationError(f"threshold {kind.threshold} outside [0, {wd - 1})")


def _negated(kind: GateKind) -> GateKind:
    if isinstance(kind, ControlledIncrement):
        return ControlledIncrement(kind.activation, -kind.increment, kind.modulus)
    if isinstance(kind, ConditionalIncrement):
        return ConditionalIncrement(kind.threshold, -kind.increment, kind.modulus)
    return LocalIncrement(-kind.increment, kind.modulus)


# -- gate constructors named after the circuit-file opcodes -------------------

def cx(control: int, target: int, d: int, a: int = 1) -> Gate:
    """Qudit CNOT: target += a (mod d) when control == d-1. For d=2, a=1 this is CNOT."""
    return Gate(ControlledIncrement(d - 1, a, d), (control, target))


def cdx(control: int, target: int, d: int, sign: int = 1) -> Gate:
    """Promote: target += d (mod 2d) when control == d-1."""
    return Gate(ControlledIncrement(d - 1, sign * d, 2 * d), (control, target))


def cdxc(control: int, target: int, d: int, sign: int = 1) -> Gate:
    """Propagate: target += d (mod 2d) when control > d-1."""
    return Gate(ConditionalIncrement(d - 1, sign * d, 2 * d), (control, target))


def caxc(control: int, target: int, d: int, a: int = 1) -> Gate:
    """Deliver: target += a (mod d) when control > d-1."""
    return Gate(ConditionalIncrement(d - 1, a, d), (control, target))


def cxt(control: int, target: int, d: int) -> Gate:
    return Gate(NegatedSum(d), (control, target))


def shift(wire: int, d: int, k: int = 1) -> Gate:
    return Gate(LocalIncrement(k, d), (wire,))


def block(*wires: int) -> Gate:
    return Gate(OpaqueBlock(), tuple(wires))


# -- circuits ------------------------------------------------------------------

@dataclass(frozen=True)
class Circuit:
    spec: WireSpec
    gates: tuple[Gate, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            g.validate(self.spec)

    @property
    def base_dim(self) -> int:
        return self.spec.base_dim

    @property
    def n_wires(self) -> int:
        return self.spec.count

    def append(self, gate: Gate) -> Circuit:
        gate.validate(self.spec)
        return Circuit(self.spec, self.gates + (gate,))

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.spec, self.gates + tuple(gates))

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def new_circuit(base_dim: int, wire_count: int) -> Circuit:
    return Circuit(WireSpec(wire_count, base_dim))


def append_gate(circuit: Circuit, gate: Gate) -> Circuit:
    return circuit.append(gate)


def gate_count(circuit: Circuit | Iterable[Gate]) -> int:
    return sum(1 for _ in circuit)


def depth(circuit: Circuit | Iterable[Gate]) -> int:
    """ASAP layer count; only shared wires create dependencies."""
    free: dict[int, int] = {}
    for g in circuit:
        layer = max((free.get(w, 0) for w in g.wires), default=0) + 1
        for w in g.wires:
            free[w] = layer
    return max(free.values(), default=0)


def inverse(circuit: Circuit) -> Circuit:
    return Circuit(circuit.spec, tuple(g.inverse() for g in reversed(circuit.gates)))
