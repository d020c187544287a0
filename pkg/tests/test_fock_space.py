import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nuentangle.fock import space as fs


def test_two_mode_jordan_wigner_matrices():
    sp = fs.build_space([("alpha", 1), ("alpha", 2)])
    lower = np.array([[0, 1], [0, 0]])
    z = np.diag([1, -1])
    assert np.array_equal(sp.annihilator(0), np.kron(lower, np.eye(2)))
    assert np.array_equal(sp.annihilator(1), np.kron(z, lower))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_car(n):
    sp = fs.FockSpace([fs.ModeLabel("alpha", j) for j in range(n)])
    assert fs.car_residual(sp.annihilators) == 0.0


def test_number_operators_diagonal_in_occupation_basis():
    sp = fs.FockSpace([fs.ModeLabel("alpha", j) for j in range(3)])
    for j in range(3):
        diag = np.diag(sp.number(j)).real
        # mode 0 is the most significant bit
        expected = [(i >> (2 - j)) & 1 for i in range(8)]
        assert np.array_equal(diag, expected)


def test_basis_state_sign_follows_creator_order():
    sp = fs.FockSpace([("alpha", 1), ("alpha", 2)])
    a = sp.basis_state([0, 1])
    b = sp.basis_state([1, 0])
    assert np.allclose(a, -b)
    assert np.linalg.norm(a) == 1.0


def test_labels_and_lookup():
    sp = fs.FockSpace([fs.ModeLabel("alpha", 1, 1), fs.ModeLabel("beta", 1, 1)])
    assert sp.index(fs.ModeLabel("beta", 1, 1)) == 1
    assert sp.index(("alpha", 1, 1)) == 0
    with pytest.raises(KeyError):
        sp.index(("beta", 2, 1))
    with pytest.raises(IndexError):
        sp.index(2)
    assert str(fs.ModeLabel("beta", 2, 1)) == "b2^1"


def test_space_validation():
    with pytest.raises(ValueError):
        fs.FockSpace([])
    with pytest.raises(ValueError):
        fs.FockSpace([("alpha", 1), ("alpha", 1)])
    with pytest.raises(ValueError):
        fs.FockSpace([("alpha", j) for j in range(fs.MAX_MODES + 1)])


def test_cached_operators_are_read_only():
    sp = fs.FockSpace([("alpha", 1)])
    with pytest.raises(ValueError):
        sp.annihilator(0)[0, 0] = 1.0


def test_state_must_be_normalized():
    with pytest.raises(ValueError):
        fs.FockState(np.array([1.0, 1.0]))
    assert fs.FockState(np.array([0.6, 0.8])).dim == 2


def test_operator_helpers():
    op = fs.FockOperator(np.array([[0, 1j], [-1j, 0]]))
    assert op.hermiticity_residual() == 0.0
    assert np.array_equal(op.H.matrix, op.matrix)
    assert op.dim == 2


def test_expectation_and_variance():
    sz = np.diag([1.0, -1.0])
    psi = np.array([np.sqrt(0.3), np.sqrt(0.7)])
    assert fs.expectation(psi, sz) == pytest.approx(-0.4)
    assert fs.variance(psi, sz) == pytest.approx(1 - 0.16)
    with pytest.raises(ValueError):
        fs.expectation(psi, np.eye(3))
    with pytest.raises(ValueError):
        fs.variance(psi, np.eye(4))


@given(st.lists(st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False), min_size=4, max_size=4))
def test_partial_trace_matches_einsum(amps):
    psi = np.array(amps, dtype=complex)
    norm = np.linalg.norm(psi)
    if norm < 1e-6:
        return
    psi = psi / norm
    t = psi.reshape(2, 2)
    rho0 = np.einsum("ij,kj->ik", t, t.conj())
    rho1 = np.einsum("ji,jk->ik", t, t.conj())
    assert np.allclose(fs.partial_trace_two_modes(psi, 0), rho0, atol=1e-12)
    assert np.allclose(fs.partial_trace_two_modes(psi, 1), rho1, atol=1e-12)
    assert np.trace(fs.partial_trace_two_modes(psi, 0)).real == pytest.approx(1.0)


def test_partial_trace_requires_two_modes():
    with pytest.raises(ValueError):
        fs.partial_trace_two_modes(np.ones(8) / np.sqrt(8), 0)


def test_commutator_helpers():
    a = np.array([[0, 1], [0, 0]])
    assert np.array_equal(fs.anticommutator(a, a.T), np.eye(2))
    assert np.array_equal(fs.commutator(a, a.T), np.diag([1, -1]))
