"""Two-flavor neutrino mixing in quantum mechanics.

Closed-form mixing matrix, flavor amplitudes, transition probabilities and
the entanglement measures of a single-particle flavor state: linear entropies
of the reduced mode density matrices and variances of mass/flavor number and
su(2) operators.

All functions broadcast over numpy arrays for ``t`` and for the fields of
:class:`MixingAngle` / :class:`QmSpectrum`. Natural units (hbar = c = 1):
energies share one unit and ``t`` is in inverse energy.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "MixingAngle",
    "QmSpectrum",
    "FlavorAmplitudes",
    "ReducedDensity",
    "QmEntanglementReport",
    "Su2Variances",
    "Su2Comparison",
    "as_angle",
    "mixing_matrix",
    "oscillation_phase",
    "evolve_amplitudes",
    "transition_probabilities",
    "reduced_densities_static",
    "reduced_density_dynamic",
    "linear_entropy_static",
    "linear_entropy_dynamic",
    "variance_mass_number_static",
    "variance_flavor_number_dynamic",
    "variance_su2_flavor",
    "hamiltonian_coefficients",
    "entanglement_report",
]


@dataclass(frozen=True)
class MixingAngle:
    """Two-flavor mixing angle, restricted to the first quadrant [0, pi/2]."""

    theta: float | np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if not np.all(np.isfinite(theta)):
            raise ValueError("mixing angle must be finite")
        if np.any(theta < 0.0) or np.any(theta > np.pi / 2):
            raise ValueError(f"mixing angle must lie in [0, pi/2], got {self.theta!r}")
        if theta.ndim == 0:
            object.__setattr__(self, "theta", float(theta))
        else:
            object.__setattr__(self, "theta", theta)

    @classmethod
    def from_sin2(cls, sin2_theta) -> MixingAngle:
        """Build from sin^2(theta) in [0, 1]."""
        x = np.asarray(sin2_theta, dtype=float)
        if not np.all(np.isfinite(x)) or np.any(x < 0.0) or np.any(x > 1.0):
            raise ValueError(f"sin^2(theta) must lie in [0, 1], got {sin2_theta!r}")
        return cls(np.arcsin(np.sqrt(x)))

    @property
    def sin(self):
        return np.sin(self.theta)

    @property
    def cos(self):
        return np.cos(self.theta)

    @property
    def sin_sq(self):
        return np.sin(self.theta) ** 2

    @property
    def cos_sq(self):
        return np.cos(self.theta) ** 2

    @property
    def sin_sq_2theta(self):
        # 4 s^2 (1 - s^2) rather than sin(2 theta)^2 so the identity is exact
        s2 = self.sin_sq
        return 4.0 * s2 * (1.0 - s2)


def as_angle(theta) -> MixingAngle:
    """Accept a :class:`MixingAngle` or a raw angle in radians."""
    return theta if isinstance(theta, MixingAngle) else MixingAngle(theta)


@dataclass(frozen=True)
class QmSpectrum:
    """Energies of the two mass eigenstates (plane-wave treatment)."""

    omega1: float | np.ndarray
    omega2: float | np.ndarray

    def __post_init__(self):
        for name in ("omega1", "omega2"):
            value = np.asarray(getattr(self, name), dtype=float)
            if not np.all(np.isfinite(value)):
                raise ValueError(f"{name} must be finite, got {getattr(self, name)!r}")

    @property
    def delta(self):
        return np.subtract(self.omega2, self.omega1)


@dataclass(frozen=True)
class FlavorAmplitudes:
    """Flavor-transition amplitudes U~(t) = U(theta) U0(t) U(theta)^-1."""

    u_ee: complex | np.ndarray
    u_emu: complex | np.ndarray
    u_mue: complex | np.ndarray
    u_mumu: complex | np.ndarray
    t: float | np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes as a (..., 2, 2) complex array, rows = initial flavor."""
        return np.stack(
            [
                np.stack(np.broadcast_arrays(self.u_ee, self.u_emu), axis=-1),
                np.stack(np.broadcast_arrays(self.u_mue, self.u_mumu), axis=-1),
            ],
            axis=-2,
        )


@dataclass(frozen=True)
class ReducedDensity:
    """Eigenvalues of a 2x2 reduced density matrix."""

    lambda1: float | np.ndarray
    lambda2: float | np.ndarray

    def __post_init__(self):
        l1 = np.asarray(self.lambda1, dtype=float)
        l2 = np.asarray(self.lambda2, dtype=float)
        tol = 1e-12
        if np.any(l1 < -tol) or np.any(l2 < -tol) or np.any(np.abs(l1 + l2 - 1.0) > tol):
            raise ValueError("reduced density eigenvalues must be non-negative and sum to 1")

    @property
    def linear_entropy(self):
        """S_L = 2 (1 - Tr rho^2) = 4 lambda1 lambda2."""
        return 4.0 * np.multiply(self.lambda1, self.lambda2)


class QmEntanglementReport(NamedTuple):
    s_linear: float | np.ndarray
    var_n: float | np.ndarray
    var_j1: float | np.ndarray
    var_j2: float | np.ndarray
    var_j3: float | np.ndarray
    var_c: float | np.ndarray


class Su2Variances(NamedTuple):
    j1: float | np.ndarray
    j2: float | np.ndarray
    j3: float | np.ndarray
    c: float | np.ndarray


class Su2Comparison(NamedTuple):
    """Flavor su(2) variances from the state amplitudes vs. the printed closed forms."""

    derived: Su2Variances
    printed: Su2Variances

    @property
    def discrepancy(self) -> Su2Variances:
        return Su2Variances(
            *(np.subtract(p, d) for d, p in zip(self.derived, self.printed))
        )


def mixing_matrix(theta) -> np.ndarray:
    """Pontecorvo rotation [[cos, sin], [-sin, cos]]; shape (..., 2, 2) for array angles."""
    ang = as_angle(theta)
    c, s = ang.cos, ang.sin
    return np.stack([np.stack([c, s], axis=-1), np.stack([-s, c], axis=-1)], axis=-2)


def oscillation_phase(spec: QmSpectrum, t):
    """Dimensionless phase (omega2 - omega1) t / 2."""
    return 0.5 * spec.delta * np.asarray(t, dtype=float)


def evolve_amplitudes(theta, spec: QmSpectrum, t) -> FlavorAmplitudes:
    ang = as_angle(theta)
    t = np.asarray(t, dtype=float)
    c2, s2 = ang.cos_sq, ang.sin_sq
    sc = ang.sin * ang.cos
    e1 = np.exp(-1j * np.multiply(spec.omega1, t))
    e2 = np.exp(-1j * np.multiply(spec.omega2, t))
    u_ee = c2 * e1 + s2 * e2
    u_emu = sc * (e2 - e1)
    u_mumu = s2 * e1 + c2 * e2
    return FlavorAmplitudes(u_ee=u_ee, u_emu=u_emu, u_mue=u_emu, u_mumu=u_mumu, t=t)


def transition_probabilities(theta, spec: QmSpectrum, t):
    """Return (P_ee, P_emu) for an initial electron neutrino."""
    ang = as_angle(theta)
    p_emu = ang.sin_sq_2theta * np.sin(oscillation_phase(spec, t)) ** 2
    return 1.0 - p_emu, p_emu


def reduced_densities_static(theta) -> tuple[ReducedDensity, ReducedDensity]:
    """Reductions of |nu_e> onto mass mode 1 and mass mode 2.

    Mode 1 is occupied with probability cos^2, mode 2 with sin^2; both
    reductions share the spectrum (cos^2, sin^2).
    """
    ang = as_angle(theta)
    c2, s2 = ang.cos_sq, 1.0 - ang.cos_sq
    return ReducedDensity(c2, s2), ReducedDensity(c2, s2)


def reduced_density_dynamic(theta, spec: QmSpectrum, t) -> ReducedDensity:
    """Reduction of |nu_e(t)> onto the electron flavor mode: eigenvalues (P_ee, P_emu)."""
    p_ee, p_emu = transition_probabilities(theta, spec, t)
    return ReducedDensity(p_ee, p_emu)


def linear_entropy_static(theta):
    return as_angle(theta).sin_sq_2theta


def variance_flavor_number_dynamic(theta, spec: QmSpectrum, t):
    """Variance of N_e(t) (equivalently N_mu(t)) on |nu_e>: P_ee * P_emu."""
    p_ee, p_emu = transition_probabilities(theta, spec, t)
    return p_ee * p_emu


def linear_entropy_dynamic(theta, spec: QmSpectrum, t):
    """Flavor-mode linear entropy of |nu_e(t)>, 4 |U~_ee|^2 (1 - |U~_ee|^2)."""
    return 4.0 * variance_flavor_number_dynamic(theta, spec, t)


def variance_mass_number_static(theta):
    """Variance of N_1 (= that of N_2) on |nu_e(t)>: sin^2(2 theta) / 4."""
    return 0.25 * as_angle(theta).sin_sq_2theta


def variance_su2_flavor(theta, spec: QmSpectrum, t) -> Su2Comparison:
    """Variances of the flavor su(2) generators and Casimir on |nu_e>.

    ``derived`` uses the one-particle identity Var(J_i) = 1/4 - <J_i>^2 with
    <J_+> = conj(U~_ee) U~_emu, J_1 = (J_+ + J_-)/2, J_2 = (J_+ - J_-)/(2i).
    ``printed`` evaluates the closed forms as they are usually quoted; its
    J_2 entry goes negative once sin^2(2 theta) sin^2(dw t) > 1/4.
    """
    ang = as_angle(theta)
    amp = evolve_amplitudes(ang, spec, t)
    j_plus = np.conj(amp.u_ee) * amp.u_emu
    p_ee = np.abs(amp.u_ee) ** 2
    p_emu = np.abs(amp.u_emu) ** 2
    j3 = 0.5 * (p_ee - p_emu)
    zero = np.zeros_like(p_ee)
    derived = Su2Variances(
        j1=0.25 - j_plus.real**2,
        j2=0.25 - j_plus.imag**2,
        j3=0.25 - j3**2,
        c=zero,
    )

    dwt = spec.delta * np.asarray(t, dtype=float)
    s22 = ang.sin_sq_2theta
    half = np.sin(0.5 * dwt) ** 2
    quoted = Su2Variances(
        j1=0.25 * (1.0 - np.sin(4.0 * ang.theta) ** 2 * half**2),
        j2=0.25 - s22 * np.sin(dwt) ** 2,
        j3=s22 * half * (1.0 - s22 * half),
        c=zero,
    )
    return Su2Comparison(derived, quoted)


def hamiltonian_coefficients(theta, spec: QmSpectrum):
    """Flavor-basis Hamiltonian entries (omega_ee, omega_mumu, omega_emu)."""
    ang = as_angle(theta)
    c2, s2 = ang.cos_sq, ang.sin_sq
    w1, w2 = spec.omega1, spec.omega2
    return (
        np.multiply(w1, c2) + np.multiply(w2, s2),
        np.multiply(w1, s2) + np.multiply(w2, c2),
        np.subtract(w2, w1) * ang.sin * ang.cos,
    )


def entanglement_report(theta, spec: QmSpectrum, t) -> QmEntanglementReport:
    var_n = variance_flavor_number_dynamic(theta, spec, t)
    su2 = variance_su2_flavor(theta, spec, t).derived
    return QmEntanglementReport(
        s_linear=4.0 * var_n,
        var_n=var_n,
        var_j1=su2.j1,
        var_j2=su2.j2,
        var_j3=su2.j3,
        var_c=su2.c,
    )
