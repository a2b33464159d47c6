from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import (
    dense,
    ladder3_closed_form,
    ladder_closed_form,
    long_range_increment,
    random_alpha,
    swap_permutation,
)
from quditroute import (
    Circuit,
    GateValidationError,
    OutOfSubspaceError,
    StateVector,
    TooLargeError,
    WireSpec,
    apply_gate,
    base_subspace_leakage,
    basis_state,
    cdx,
    circuit_unitary,
    cx,
    cxt,
    equivalence_on_base_subspace,
    random_base_state,
    route_gate_ladder,
    run,
    swap_as_primitives,
)


def test_basis_state_index():
    s = basis_state((4, 4), (1, 0))
    assert np.flatnonzero(s.amplitudes).tolist() == [4]
    assert s.amplitude((1, 0)) == 1
    with pytest.raises(GateValidationError):
        basis_state((4, 4), (4, 0))


def test_apply_gate_examples():
    s = apply_gate(basis_state((4, 4), (1, 0)), cdx(0, 1, 2))
    assert s.amplitude((1, 2)) == 1
    s = apply_gate(basis_state((4, 4), (0, 1)), cdx(0, 1, 2))
    assert s.amplitude((0, 1)) == 1


def _ladder(n, d, a):
    return Circuit(WireSpec(n, d), tuple(route_gate_ladder(list(range(n)), cx(0, n - 1, d, a), d)))


@pytest.mark.parametrize("d,a", [(2, 1), (3, 1), (3, 2), (4, 3)])
def test_ladder_prefixes_match_closed_form(d, a):
    rng = np.random.default_rng(7 + d + a)
    for n, closed in ((3, ladder3_closed_form), (4, ladder_closed_form)):
        circ = _ladder(n, d, a)
        dims = circ.spec.dims
        for _ in range(50):
            alpha = random_alpha(n, d, rng)
            state = StateVector(dims, dense(alpha, dims))
            for step, g in enumerate(circ, start=1):
                state = apply_gate(state, g)
                np.testing.assert_allclose(state.amplitudes, dense(closed(alpha, d, a, step), dims),
                                           atol=1e-10)


def test_swap_unitary_at_base_dims():
    c = Circuit(WireSpec(2, 2), swap_as_primitives(0, 1, 2))
    np.testing.assert_array_equal(circuit_unitary(c, dims=(2, 2)), swap_permutation(2))
    c = Circuit(WireSpec(2, 3), swap_as_primitives(0, 1, 3, "B"))
    np.testing.assert_array_equal(circuit_unitary(c, dims=(3, 3)), swap_permutation(3))


def test_empty_circuit_unitary_is_identity():
    np.testing.assert_array_equal(circuit_unitary(Circuit(WireSpec(1, 2))), np.eye(4))


def test_leakage_examples():
    assert base_subspace_leakage(basis_state((4, 4), (1, 1)), 2) == 0
    assert base_subspace_leakage(basis_state((4, 4), (1, 2)), 2) == 1
    amps = np.zeros(16, complex)
    amps[[0, 2]] = np.sqrt(0.5)
    assert base_subspace_leakage(StateVector((4, 4), amps), 2) == pytest.approx(0.5)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_ladder_leaves_no_leakage(n):
    rng = np.random.default_rng(n)
    circ = _ladder(n, 2, 1)
    for _ in range(100):
        out = run(circ, random_base_state(circ.spec.dims, 2, rng))
        assert base_subspace_leakage(out, 2) <= 1e-12


def test_equivalence_report_examples():
    rep = equivalence_on_base_subspace(_ladder(3, 3, 2), cx(0, 2, 3, 2))
    assert rep.passed and rep.max_deviation == 0 and rep.leakage == 0
    # dropping the uncompute step leaves the middle wire promoted
    broken = Circuit(WireSpec(3, 2), _ladder(3, 2, 1).gates[:2])
    rep = equivalence_on_base_subspace(broken, cx(0, 2, 2))
    assert not rep.passed and rep.leakage == pytest.approx(1.0)


def test_equivalence_with_wire_permutation():
    swap = Circuit(WireSpec(2, 2), swap_as_primitives(0, 1, 2))
    assert equivalence_on_base_subspace(swap, Circuit(WireSpec(2, 2)), mapping_perm=(1, 0)).passed
    assert not equivalence_on_base_subspace(swap, Circuit(WireSpec(2, 2))).passed


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3), st.integers(3, 5), st.integers(0, 2**32 - 1))
def test_run_preserves_norm_and_is_linear(d, n, seed):
    rng = np.random.default_rng(seed)
    circ = _ladder(n, d, 1)
    dims = circ.spec.dims
    s1, s2 = random_base_state(dims, d, rng), random_base_state(dims, d, rng)
    c1, c2 = 0.6, 0.8j
    mixed = StateVector(dims, c1 * s1.amplitudes + c2 * s2.amplitudes)
    out = run(circ, mixed)
    assert out.norm() == pytest.approx(mixed.norm(), abs=1e-12)
    assert run(circ, s1).norm() == pytest.approx(1.0, abs=1e-12)
    expected = c1 * run(circ, s1).amplitudes + c2 * run(circ, s2).amplitudes
    np.testing.assert_allclose(out.amplitudes, expected, atol=1e-12)


@pytest.mark.parametrize("d", [2, 3])
@pytest.mark.parametrize("n", [3, 4, 5])
def test_ladder_fires_only_on_activation(n, d):
    circ = _ladder(n, d, 1)
    for values in product(range(d), repeat=n):
        out = run(circ, basis_state(circ.spec.dims, values))
        assert out.amplitude(long_range_increment(values, 0, n - 1, d, 1)) == 1


def test_negated_sum_on_promoted_mass_raises():
    state = basis_state((6, 6), (4, 0))
    with pytest.raises(OutOfSubspaceError):
        apply_gate(state, cxt(0, 1, 3))
    # zero amplitude on the undefined levels is fine
    assert apply_gate(basis_state((6, 6), (1, 0)), cxt(0, 1, 3)).amplitude((1, 2)) == 1


def test_cap_is_enforced():
    circ = _ladder(7, 4, 1)    # 8**7 states
    with pytest.raises(TooLargeError):
        equivalence_on_base_subspace(circ, cx(0, 6, 4))
    with pytest.raises(TooLargeError):
        circuit_unitary(_ladder(3, 2, 1), cap=63)
