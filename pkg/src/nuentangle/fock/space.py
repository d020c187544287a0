"""Dense fermionic Fock spaces via the Jordan-Wigner construction."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

MAX_MODES = 12

_I2 = np.eye(2)
_Z = np.diag([1.0, -1.0])
_LOWER = np.array([[0.0, 1.0], [0.0, 0.0]])  # |1> -> |0> with |0> = (1, 0)


class ModeLabel(NamedTuple):
    """Tag for one fermionic mode: species ('alpha' particle, 'beta' antiparticle), mass index, helicity."""

    species: str
    mass: int
    helicity: int | None = None

    def __str__(self):
        name = {"alpha": "a", "beta": "b"}.get(self.species, self.species)
        r = "" if self.helicity is None else f"^{self.helicity}"
        return f"{name}{self.mass}{r}"


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def anticommutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b + b @ a


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


@dataclass(frozen=True)
class FockOperator:
    matrix: np.ndarray
    label: str = ""

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def H(self) -> FockOperator:
        return FockOperator(dagger(self.matrix), f"({self.label})^+")

    def hermiticity_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - dagger(self.matrix))))


@dataclass(frozen=True)
class FockState:
    vector: np.ndarray
    label: str = ""
    normalize_tol: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        norm = np.linalg.norm(self.vector)
        if abs(norm - 1.0) > self.normalize_tol:
            raise ValueError(f"state {self.label!r} has norm {norm!r}, expected 1")

    @property
    def dim(self) -> int:
        return self.vector.shape[0]


class FockSpace:
    """Fermionic Fock space over ``mode_labels`` in a fixed Jordan-Wigner order.

    Mode j is the j-th tensor factor (most significant bit first) and carries
    a string of Z's on all earlier modes. Annihilators are built lazily so
    that large spaces only pay for the operators actually used.
    """

    def __init__(self, mode_labels: Sequence):
        labels = tuple(ModeLabel(*lab) if isinstance(lab, tuple) else lab for lab in mode_labels)
        n = len(labels)
        if not 1 <= n <= MAX_MODES:
            raise ValueError(f"number of modes must be in [1, {MAX_MODES}], got {n}")
        if len(set(labels)) != n:
            raise ValueError("mode labels must be distinct")
        self.mode_labels = labels
        self.n_modes = n
        self.dim = 2**n
        self._cache: dict[int, np.ndarray] = {}

    def __repr__(self):
        return f"FockSpace({[str(lab) for lab in self.mode_labels]})"

    def index(self, mode) -> int:
        if isinstance(mode, (int, np.integer)):
            if not 0 <= mode < self.n_modes:
                raise IndexError(f"mode index {mode} out of range")
            return int(mode)
        lab = ModeLabel(*mode) if isinstance(mode, tuple) else mode
        try:
            return self.mode_labels.index(lab)
        except ValueError:
            raise KeyError(f"no mode labelled {mode!r}") from None

    def annihilator(self, mode) -> np.ndarray:
        j = self.index(mode)
        if j not in self._cache:
            op = np.ones((1, 1))
            for i in range(self.n_modes):
                op = np.kron(op, _Z if i < j else (_LOWER if i == j else _I2))
            op = op.astype(complex)
            op.setflags(write=False)
            self._cache[j] = op
        return self._cache[j]

    def creator(self, mode) -> np.ndarray:
        return dagger(self.annihilator(mode))

    def number(self, mode) -> np.ndarray:
        a = self.annihilator(mode)
        return dagger(a) @ a

    @property
    def annihilators(self) -> tuple[np.ndarray, ...]:
        return tuple(self.annihilator(j) for j in range(self.n_modes))

    @cached_property
    def identity(self) -> np.ndarray:
        return np.eye(self.dim, dtype=complex)

    def vacuum(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=complex)
        v[0] = 1.0
        return v

    def basis_state(self, occupied: Sequence) -> np.ndarray:
        """Apply creators in the given order (leftmost acts last) to the vacuum."""
        v = self.vacuum()
        for mode in reversed(list(occupied)):
            v = self.creator(mode) @ v
        return v


def build_space(mode_labels: Sequence) -> FockSpace:
    return FockSpace(mode_labels)


def car_residual(ops: Sequence[np.ndarray]) -> float:
    """Largest entrywise violation of {a_i, a_j^+} = delta_ij and {a_i, a_j} = 0."""
    dim = ops[0].shape[0]
    eye = np.eye(dim)
    worst = 0.0
    for (i, a), (j, b) in product(enumerate(ops), repeat=2):
        target = eye if i == j else 0.0
        worst = max(worst, float(np.max(np.abs(anticommutator(a, dagger(b)) - target))))
        worst = max(worst, float(np.max(np.abs(anticommutator(a, b)))))
    return worst


def expectation(state, operator) -> complex:
    """<psi|A|psi> for a state vector / FockState and a matrix / FockOperator."""
    psi = state.vector if isinstance(state, FockState) else np.asarray(state)
    a = operator.matrix if isinstance(operator, FockOperator) else np.asarray(operator)
    if a.shape != (psi.shape[0], psi.shape[0]):
        raise ValueError(f"dimension mismatch: state {psi.shape}, operator {a.shape}")
    return complex(np.vdot(psi, a @ psi))


def variance(state, operator) -> float:
    """<A^2> - <A>^2 (real part); non-negative up to rounding for Hermitian A."""
    psi = state.vector if isinstance(state, FockState) else np.asarray(state)
    a = operator.matrix if isinstance(operator, FockOperator) else np.asarray(operator)
    if a.shape != (psi.shape[0], psi.shape[0]):
        raise ValueError(f"dimension mismatch: state {psi.shape}, operator {a.shape}")
    a_psi = a @ psi
    mean = np.vdot(psi, a_psi)
    return float((np.vdot(psi, a @ a_psi) - mean * mean).real)


def partial_trace_two_modes(psi: np.ndarray, keep: int) -> np.ndarray:
    """Reduced 2x2 density matrix of mode ``keep`` (0 or 1) for a 2-mode state vector.

    Occupation basis ordering is (|0>, |1>) per mode. For states of fixed
    fermion parity the Jordan-Wigner signs do not affect this reduction.
    """
    if psi.shape != (4,):
        raise ValueError("partial_trace_two_modes expects a 2-mode (dimension 4) state")
    m = psi.reshape(2, 2)
    rho = m @ dagger(m) if keep == 0 else m.T @ m.conj()
    return rho
