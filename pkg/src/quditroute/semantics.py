"""
Exact permutation semantics for every gate kind.

All gates here are classical-reversible: they send basis states to basis
states. Matrices are only materialized on request, with the control digit
most significant in the local index (``index = control * target_dim + target``).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .errors import GateValidationError, OutOfSubspaceError
from .ir import (
    ConditionalIncrement,
    ControlledIncrement,
    Gate,
    LocalIncrement,
    NegatedSum,
    OpaqueBlock,
    WireSpec,
)


def _bump(value: int, k: int, m: int) -> int:
    # increments only act inside [0, m); higher levels pass through untouched
    return (value + k) % m if value < m else value


def map_values(gate: Gate, values: Sequence[int]) -> tuple[int, ...]:
    """Apply ``gate`` to the values held on its own wires (in ``gate.wires`` order)."""
    kind = gate.kind
    if isinstance(kind, OpaqueBlock):
        return tuple(values)
    if isinstance(kind, LocalIncrement):
        (t,) = values
        return (_bump(t, kind.increment, kind.modulus),)
    c, t = values
    if isinstance(kind, ControlledIncrement):
        if c == kind.activation:
            t = _bump(t, kind.increment, kind.modulus)
        return c, t
    if isinstance(kind, ConditionalIncrement):
        if c > kind.threshold:
            t = _bump(t, kind.increment, kind.modulus)
        return c, t
    if isinstance(kind, NegatedSum):
        d = kind.modulus
        if c >= d or t >= d:
            raise OutOfSubspaceError(f"NegatedSum mod {d} is undefined on values ({c}, {t})")
        return c, (-c - t) % d
    raise TypeError(f"unknown gate kind {kind!r}")


def apply_to_basis(gate: Gate, spec: WireSpec, basis: Sequence[int]) -> tuple[int, ...]:
    gate.validate(spec)
    if len(basis) != spec.count:
        raise GateValidationError(f"basis has {len(basis)} entries, expected {spec.count}")
    for v in basis:
        if not 0 <= v < spec.working_dim:
            raise GateValidationError(f"basis value {v} outside [0, {spec.working_dim})")
    out = list(basis)
    for w, v in zip(gate.wires, map_values(gate, [basis[w] for w in gate.wires])):
        out[w] = v
    return tuple(out)


def label_dims(gate: Gate, spec: WireSpec) -> tuple[int, ...]:
    """Local level counts used for a gate's printed matrix.

    A plain control only needs the base levels (it fires at a base value);
    a conditional control needs the full working range. Targets span the
    increment modulus.
    """
    kind = gate.kind
    if isinstance(kind, ControlledIncrement):
        ctl = spec.base_dim if kind.activation < spec.base_dim else spec.working_dim
        return ctl, kind.modulus
    if isinstance(kind, ConditionalIncrement):
        return spec.working_dim, kind.modulus
    if isinstance(kind, NegatedSum):
        return kind.modulus, kind.modulus
    if isinstance(kind, LocalIncrement):
        return (kind.modulus,)
    return (spec.working_dim,) * len(gate.wires)


@lru_cache(maxsize=4096)
def transition_table(gate: Gate, dims: tuple[int, ...]) -> np.ndarray:
    """Flat local index -> flat local output index, or -1 where undefined.

    Undefined covers NegatedSum on promoted levels and any output that falls
    outside ``dims``.
    """
    size = int(np.prod(dims))
    table = np.empty(size, dtype=np.int64)
    for i, vals in enumerate(product(*(range(d) for d in dims))):
        try:
            out = map_values(gate, vals)
        except OutOfSubspaceError:
            table[i] = -1
            continue
        if any(o >= d for o, d in zip(out, dims)):
            table[i] = -1
        else:
            table[i] = np.ravel_multi_index(out, dims)
    table.setflags(write=False)
    return table


def local_matrix(gate: Gate, dims: Sequence[int]) -> np.ndarray:
    """Permutation matrix of ``gate`` over the given local level counts."""
    dims = tuple(dims)
    table = transition_table(gate, dims)
    if (table < 0).any():
        raise OutOfSubspaceError(f"{gate} does not close over local dims {dims}")
    size = table.size
    mat = np.zeros((size, size), dtype=complex)
    mat[table, np.arange(size)] = 1.0
    return mat


def gate_matrix(gate: Gate, spec: WireSpec) -> np.ndarray:
    gate.validate(spec)
    return local_matrix(gate, label_dims(gate, spec))


def is_permutation(matrix: np.ndarray, atol: float = 1e-12) -> bool:
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    rounded = np.round(m.real)
    if np.abs(m - rounded).max(initial=0.0) > atol:
        return False
    if not np.isin(rounded, (0.0, 1.0)).all():
        return False
    return bool((rounded.sum(axis=0) == 1).all() and (rounded.sum(axis=1) == 1).all())
