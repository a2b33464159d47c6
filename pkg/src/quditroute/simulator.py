"""
Dense mixed-radix statevector simulation.

Index convention: wire 0 is the most significant digit, so for dims
(4, 4) the basis state |1, 0> sits at index 4. Every gate in the IR is a
permutation of basis states, so applying one only relocates amplitudes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .errors import GateValidationError, OutOfSubspaceError, TooLargeError
from .ir import Circuit, Gate, WireSpec
from .semantics import local_matrix, transition_table

DEFAULT_CAP = 2**16


@dataclass(frozen=True)
class StateVector:
    dims: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape[0] != int(np.prod(self.dims)):
            raise ValueError(f"{amps.shape[0]} amplitudes for dims {self.dims}")
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, values: Sequence[int]) -> complex:
        return complex(self.amplitudes[encode(self.dims, values)])

    def nonzero(self, atol: float = 1e-12) -> list[tuple[tuple[int, ...], complex]]:
        """(digits, amplitude) for every basis state with probability >= atol, by index."""
        probs = np.abs(self.amplitudes) ** 2
        idx = np.flatnonzero(probs >= atol)
        return [(tuple(int(x) for x in np.unravel_index(i, self.dims)), complex(self.amplitudes[i]))
                for i in idx]


def encode(dims: Sequence[int], values: Sequence[int]) -> int:
    if len(values) != len(dims):
        raise GateValidationError(f"{len(values)} values for {len(dims)} wires")
    for v, d in zip(values, dims):
        if not 0 <= v < d:
            raise GateValidationError(f"value {v} outside [0, {d})")
    return int(np.ravel_multi_index(tuple(values), tuple(dims)))


def basis_state(dims: Sequence[int], values: Sequence[int]) -> StateVector:
    dims = tuple(dims)
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    amps[encode(dims, values)] = 1.0
    return StateVector(dims, amps)


def random_base_state(dims: Sequence[int], base_dim: int, rng: np.random.Generator) -> StateVector:
    """Normalized random superposition supported on wire values < base_dim."""
    dims = tuple(dims)
    amps = np.zeros(int(np.prod(dims)), dtype=complex)
    idx = base_indices(dims, base_dim)
    amps[idx] = rng.normal(size=idx.size) + 1j * rng.normal(size=idx.size)
    amps /= np.linalg.norm(amps)
    return StateVector(dims, amps)


def base_indices(dims: Sequence[int], base_dim: int) -> np.ndarray:
    """Flat indices of basis states with every wire value < base_dim, in lexicographic order."""
    dims = tuple(dims)
    digits = list(product(range(base_dim), repeat=len(dims)))
    return np.ravel_multi_index(np.array(digits).T, dims) if digits else np.zeros(0, int)


@lru_cache(maxsize=1024)
def _index_map(gate: Gate, dims: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """Full-space destination index per source index, plus the undefined-entry mask."""
    for w in gate.wires:
        if not 0 <= w < len(dims):
            raise GateValidationError(f"gate wire {w} outside a {len(dims)}-wire state")
    local_dims = tuple(dims[w] for w in gate.wires)
    table = transition_table(gate, local_dims)
    size = int(np.prod(dims))
    digits = np.indices(dims).reshape(len(dims), size)
    strides = np.array([int(np.prod(dims[i + 1:])) for i in range(len(dims))])

    local_in = np.ravel_multi_index(tuple(digits[w] for w in gate.wires), local_dims)
    local_out = table[local_in]
    undefined = local_out < 0
    local_out = np.where(undefined, local_in, local_out)
    out_digits = np.unravel_index(local_out, local_dims)

    dest = np.arange(size)
    for w, new in zip(gate.wires, out_digits):
        dest = dest + (new - digits[w]) * strides[w]
    dest.setflags(write=False)
    undefined.setflags(write=False)
    return dest, undefined


def _permute(amps: np.ndarray, gate: Gate, dims: tuple[int, ...]) -> np.ndarray:
    dest, undefined = _index_map(gate, dims)
    if undefined.any() and np.abs(amps[undefined]).max() > 0:
        raise OutOfSubspaceError(f"{gate} met amplitude on levels it is not defined for")
    out = np.empty_like(amps)
    out[dest] = amps
    return out


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    return StateVector(state.dims, _permute(state.amplitudes, gate, state.dims))


def _check_dims(circuit: Circuit, dims: tuple[int, ...]) -> None:
    if len(dims) != circuit.n_wires:
        raise GateValidationError(f"state has {len(dims)} wires, circuit has {circuit.n_wires}")


def run(circuit: Circuit, state: StateVector) -> StateVector:
    _check_dims(circuit, state.dims)
    amps = state.amplitudes
    for g in circuit:
        amps = _permute(amps, g, state.dims)
    return StateVector(state.dims, amps)


def check_cap(dims: Sequence[int], cap: int) -> int:
    size = int(np.prod([int(d) for d in dims], dtype=object))
    if size > cap:
        raise TooLargeError(f"state dimension {size} exceeds cap {cap}")
    return size


def circuit_unitary(circuit: Circuit, dims: Sequence[int] | None = None,
                    cap: int = DEFAULT_CAP) -> np.ndarray:
    """Column j is the circuit applied to basis state j.

    ``dims`` defaults to the working dimension on every wire; pass the base
    dimension to get the matrix of a circuit that never leaves it.
    """
    dims = tuple(dims) if dims is not None else circuit.spec.dims
    _check_dims(circuit, dims)
    size = check_cap(dims, cap)
    mat = np.eye(size, dtype=complex)
    for g in circuit:
        mat = _permute(mat, g, dims)
    return mat


def base_subspace_leakage(state: StateVector, base_dim: int) -> float:
    mask = np.ones(state.amplitudes.shape[0], dtype=bool)
    mask[base_indices(state.dims, base_dim)] = False
    return float(np.sum(np.abs(state.amplitudes[mask]) ** 2))


@dataclass(frozen=True)
class EquivalenceReport:
    max_deviation: float
    leakage: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance and self.leakage <= self.tolerance


def _apply_local(tensor: np.ndarray, mat: np.ndarray, wires: Sequence[int], d: int) -> np.ndarray:
    k = len(wires)
    op = mat.reshape((d,) * (2 * k))
    moved = np.tensordot(op, tensor, axes=(list(range(k, 2 * k)), list(wires)))
    return np.moveaxis(moved, list(range(k)), list(wires))


def ideal_base_matrix(ideal: Gate | Circuit, n_wires: int, base_dim: int) -> np.ndarray:
    """Matrix of ``ideal`` on the base subspace, built by tensor contraction of local matrices."""
    d = base_dim
    gates = [ideal] if isinstance(ideal, Gate) else list(ideal)
    size = d**n_wires
    tensor = np.eye(size, dtype=complex).reshape((d,) * n_wires + (size,))
    for g in gates:
        tensor = _apply_local(tensor, local_matrix(g, (d,) * len(g.wires)), g.wires, d)
    return tensor.reshape(size, size)


def equivalence_on_base_subspace(routed: Circuit, ideal: Gate | Circuit, spec: WireSpec | None = None,
                                 mapping_perm: Sequence[int] | None = None, tol: float = 1e-10,
                                 cap: int = DEFAULT_CAP) -> EquivalenceReport:
    """Compare ``routed`` with ``ideal`` on every base-subspace input.

    With ``mapping_perm`` the expected output is the ideal output with the
    state of wire p relocated to wire ``mapping_perm[p]``.
    """
    spec = spec or routed.spec
    n, d = spec.count, spec.base_dim
    if routed.n_wires != n:
        raise GateValidationError(f"routed circuit has {routed.n_wires} wires, spec has {n}")
    if isinstance(ideal, Circuit) and ideal.n_wires != n:
        raise GateValidationError(f"ideal circuit has {ideal.n_wires} wires, spec has {n}")
    dims = spec.dims
    size = check_cap(dims, cap)

    cols = base_indices(dims, d)
    inputs = np.zeros((size, cols.size), dtype=complex)
    inputs[cols, np.arange(cols.size)] = 1.0
    got = inputs
    for g in routed:
        got = _permute(got, g, dims)

    expected_base = ideal_base_matrix(ideal, n, d)
    if mapping_perm is not None:
        perm = [int(p) for p in mapping_perm]
        if sorted(perm) != list(range(n)):
            raise GateValidationError(f"mapping_perm {perm} is not a permutation of {n} wires")
        t = expected_base.reshape((d,) * n + (cols.size,))
        expected_base = np.moveaxis(t, list(range(n)), perm).reshape(cols.size, cols.size)
    expected = np.zeros_like(got)
    expected[cols, :] = expected_base

    deviation = float(np.abs(got - expected).max(initial=0.0))
    outside = np.ones(size, dtype=bool)
    outside[cols] = False
    leakage = float((np.abs(got[outside]) ** 2).sum(axis=0).max(initial=0.0))
    return EquivalenceReport(deviation, leakage, tol)
