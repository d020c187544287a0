"""Two-mode Fock-space model of quantum-mechanical flavor mixing.

Mass modes (alpha_1, alpha_2) are the Jordan-Wigner modes; flavor
annihilators are rotations of the time-evolved mass annihilators,
alpha_i(t) = alpha_i exp(-i omega_i t). States are taken at t = 0 and
operators carry the time dependence (Heisenberg picture), except where a
Schroedinger-picture state is built explicitly with the matrix exponential
of the Hamiltonian.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import expm

from nuentangle.fock.space import (
    FockOperator,
    FockState,
    ModeLabel,
    build_space,
    dagger,
    partial_trace_two_modes,
)
from nuentangle.qm import QmSpectrum, as_angle, hamiltonian_coefficients

QM_KINDS = (
    "mass-1",
    "mass-2",
    "flavor-e",
    "flavor-mu",
    "su2-j1",
    "su2-j2",
    "su2-j3",
    "mass-j1",
    "mass-j2",
    "mass-j3",
    "casimir",
)


def _su2(a: np.ndarray, b: np.ndarray):
    """(J_+, J_-, J_3, C) built from two annihilators a, b with J_+ = a^+ b."""
    jp = dagger(a) @ b
    jm = dagger(b) @ a
    na, nb = dagger(a) @ a, dagger(b) @ b
    return jp, jm, 0.5 * (na - nb), 0.5 * (na + nb)


def su2_cartesian(jp: np.ndarray, jm: np.ndarray, j3: np.ndarray):
    """J_1 = (J_+ + J_-)/2, J_2 = (J_+ - J_-)/(2i), J_3."""
    return 0.5 * (jp + jm), (jp - jm) / 2j, j3


class QmModes:
    """Mass and flavor operators for one neutrino on the two-mode space."""

    def __init__(self, theta, spectrum: QmSpectrum):
        self.angle = as_angle(theta)
        if np.ndim(self.angle.theta) or np.ndim(spectrum.omega1) or np.ndim(spectrum.omega2):
            raise ValueError("the Fock-space model takes scalar parameters")
        self.spectrum = spectrum
        self.space = build_space([ModeLabel("alpha", 1), ModeLabel("alpha", 2)])

    def mass_ops(self, t: float = 0.0):
        a1, a2 = self.space.annihilators
        return (
            a1 * np.exp(-1j * self.spectrum.omega1 * t),
            a2 * np.exp(-1j * self.spectrum.omega2 * t),
        )

    def flavor_ops(self, t: float = 0.0):
        c, s = self.angle.cos, self.angle.sin
        a1, a2 = self.mass_ops(t)
        return c * a1 + s * a2, -s * a1 + c * a2

    def flavor_state(self, flavor: str = "e") -> FockState:
        ae, am = self.flavor_ops(0.0)
        op = {"e": ae, "mu": am}[flavor]
        return FockState(dagger(op) @ self.space.vacuum(), f"nu_{flavor}")

    def hamiltonian(self) -> np.ndarray:
        return self.spectrum.omega1 * self.space.number(0) + self.spectrum.omega2 * self.space.number(1)

    def flavor_hamiltonian(self, t: float = 0.0) -> np.ndarray:
        """omega_ee N_e(t) + omega_mumu N_mu(t) + omega_emu (J_+^f(t) + J_-^f(t))."""
        w_ee, w_mm, w_em = hamiltonian_coefficients(self.angle, self.spectrum)
        ae, am = self.flavor_ops(t)
        jp, jm, _, _ = _su2(ae, am)
        return w_ee * dagger(ae) @ ae + w_mm * dagger(am) @ am + w_em * (jp + jm)

    def evolve(self, psi: np.ndarray, t: float) -> np.ndarray:
        """Schroedinger evolution exp(-i H t) psi."""
        return expm(-1j * self.hamiltonian() * t) @ psi

    def charge(self, kind: str, t: float = 0.0) -> FockOperator:
        """Hermitian number/su(2) operator; flavor-basis kinds are taken at time t."""
        if kind not in QM_KINDS:
            raise ValueError(f"unknown charge kind {kind!r}; expected one of {QM_KINDS}")
        if kind in ("mass-1", "mass-2"):
            i = int(kind[-1]) - 1
            return FockOperator(self.space.number(i), f"N_{i + 1}")
        if kind == "flavor-e":
            ae, _ = self.flavor_ops(t)
            return FockOperator(dagger(ae) @ ae, f"N_e({t})")
        if kind == "flavor-mu":
            _, am = self.flavor_ops(t)
            return FockOperator(dagger(am) @ am, f"N_mu({t})")
        if kind == "casimir":
            return FockOperator(_su2(*self.space.annihilators)[3], "C")
        basis, comp = kind.split("-")
        ops = self.space.annihilators if basis == "mass" else self.flavor_ops(t)
        jp, jm, j3, _ = _su2(*ops)
        j = su2_cartesian(jp, jm, j3)[int(comp[1]) - 1]
        return FockOperator(j, f"J{comp[1]}^{'m' if basis == 'mass' else 'f'}({t})")

    def su2_raising(self, basis: str = "flavor", t: float = 0.0):
        """(J_+, J_-, J_3) in the mass or flavor basis."""
        ops = self.space.annihilators if basis == "mass" else self.flavor_ops(t)
        return _su2(*ops)[:3]

    def flavor_basis(self) -> np.ndarray:
        """Columns are flavor-mode occupation states |n_e n_mu> in Jordan-Wigner index order."""
        ae, am = self.flavor_ops(0.0)
        vac = self.space.vacuum()
        cols = [vac, dagger(am) @ vac, dagger(ae) @ vac, dagger(ae) @ dagger(am) @ vac]
        return np.stack(cols, axis=1)

    def reduced_density(self, psi: np.ndarray, mode: int, basis: str = "mass") -> np.ndarray:
        """2x2 reduced density matrix of mass mode or flavor mode ``mode`` (0 or 1)."""
        if basis == "flavor":
            psi = dagger(self.flavor_basis()) @ psi
        elif basis != "mass":
            raise ValueError(f"basis must be 'mass' or 'flavor', got {basis!r}")
        return partial_trace_two_modes(psi, mode)


def linear_entropy(rho: np.ndarray) -> float:
    """2 (1 - Tr rho^2) for a 2x2 density matrix."""
    return float(2.0 * (1.0 - np.trace(rho @ rho).real))


def qm_flavor_ops(theta, omega1: float, omega2: float, t: float):
    """(alpha_e(t), alpha_mu(t)) as 4x4 matrices on the two-mode space."""
    return QmModes(theta, QmSpectrum(omega1, omega2)).flavor_ops(t)
