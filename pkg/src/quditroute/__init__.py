"""Qudit-aware routing: SWAP insertion versus intermediate-qudit ladders."""
from .errors import (
    GateValidationError,
    InvalidSpecError,
    NoPathError,
    NonInvertibleError,
    OutOfSubspaceError,
    ParseError,
    QuditRouteError,
    RoutingContractError,
    TooLargeError,
    UnsupportedGateError,
)
from .ir import (
    Circuit,
    ConditionalIncrement,
    ControlledIncrement,
    Gate,
    LocalIncrement,
    NegatedSum,
    OpaqueBlock,
    WireSpec,
    append_gate,
    block,
    caxc,
    cdx,
    cdxc,
    cx,
    cxt,
    depth,
    gate_count,
    inverse,
    new_circuit,
    shift,
)
from .router import (
    CostRow,
    RoutedResult,
    RoutedSection,
    RouteMethod,
    Strategy,
    cost_table,
    route_circuit,
    route_gate_ladder,
    route_gate_swap,
    swap_as_primitives,
)
from .semantics import apply_to_basis, gate_matrix, is_permutation
from .simulator import (
    EquivalenceReport,
    StateVector,
    apply_gate,
    base_subspace_leakage,
    basis_state,
    circuit_unitary,
    equivalence_on_base_subspace,
    random_base_state,
    run,
)
from .topology import CouplingGraph, Mapping, adjacent, line_graph, shortest_path

__version__ = "0.1.0"
