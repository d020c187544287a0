"""Two-flavor neutrino mixing in quantum field theory, single momentum sector.

The flavor vacuum is a condensate of mass-basis particle/antiparticle pairs;
its weight in one sector is set by the Bogoliubov coefficient |V_k|. Everything
here is closed form and broadcasts over numpy arrays. The frame is fixed with
k along the z axis, where the spinor overlaps reduce to |U_k|, |V_k| and a
helicity sign; the observables below do not depend on that sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from nuentangle.qm import QmSpectrum, as_angle, transition_probabilities

__all__ = [
    "KinematicSector",
    "QftOscillation",
    "QftEntanglementReport",
    "ChargeDecomposition",
    "dispersion",
    "bogoliubov",
    "qft_oscillation",
    "relativistic_limit_gap",
    "condensation_density",
    "charge_variance_static",
    "charge_variance_dynamic",
    "flavor_charge_decomposition",
    "entanglement_report",
]


def dispersion(m, k):
    """Relativistic energy sqrt(k^2 + m^2)."""
    m = np.asarray(m, dtype=float)
    k = np.asarray(k, dtype=float)
    if np.any(m <= 0.0) or not np.all(np.isfinite(m)):
        raise ValueError(f"mass must be positive and finite, got {m!r}")
    if np.any(k < 0.0) or not np.all(np.isfinite(k)):
        raise ValueError(f"momentum magnitude must be non-negative and finite, got {k!r}")
    out = np.hypot(k, m)
    return float(out) if out.ndim == 0 else out


def bogoliubov(m1, m2, k):
    """Return (|U_k|, |V_k|) for masses m1, m2 at momentum |k|.

    |V_k| is returned as a magnitude (the printed numerator changes sign with
    m2 - m1). The mass difference is factored out of the numerator so that
    |V_k| is exactly zero for m1 == m2.
    """
    w1 = np.asarray(dispersion(m1, k))
    w2 = np.asarray(dispersion(m2, k))
    m1 = np.asarray(m1, dtype=float)
    m2 = np.asarray(m2, dtype=float)
    k = np.asarray(k, dtype=float)
    p1 = w1 + m1
    p2 = w2 + m2
    denom = 2.0 * np.sqrt(w1 * w2 * p1 * p2)
    u = (k * k + p1 * p2) / denom
    # (w1 + m1) - (w2 + m2) = (m1 - m2) [1 + (m1 + m2) / (w1 + w2)]
    diff = (m1 - m2) * (1.0 + (m1 + m2) / (w1 + w2))
    v = np.abs(diff) * k / denom
    if u.ndim == 0:
        return float(u), float(v)
    return u, v


@dataclass(frozen=True)
class KinematicSector:
    """Masses and momentum of one (k, -k) sector with derived energies and |U_k|, |V_k|."""

    m1: float | np.ndarray
    m2: float | np.ndarray
    k: float | np.ndarray
    omega_k1: float | np.ndarray = field(init=False, repr=False)
    omega_k2: float | np.ndarray = field(init=False, repr=False)
    u_k: float | np.ndarray = field(init=False, repr=False)
    v_k: float | np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "omega_k1", dispersion(self.m1, self.k))
        object.__setattr__(self, "omega_k2", dispersion(self.m2, self.k))
        u, v = bogoliubov(self.m1, self.m2, self.k)
        object.__setattr__(self, "u_k", u)
        object.__setattr__(self, "v_k", v)

    @property
    def spectrum(self) -> QmSpectrum:
        """QM spectrum with omega_i = omega_{k,i}, used for the Pontecorvo comparison."""
        return QmSpectrum(self.omega_k1, self.omega_k2)

    @property
    def delta(self):
        return np.subtract(self.omega_k2, self.omega_k1)

    @property
    def total(self):
        return np.add(self.omega_k2, self.omega_k1)


class QftOscillation(NamedTuple):
    q_ee: float | np.ndarray
    q_emu: float | np.ndarray
    t: float | np.ndarray


class QftEntanglementReport(NamedTuple):
    var_q_static: float | np.ndarray
    var_q_e_dynamic: float | np.ndarray
    condensation: float | np.ndarray


class ChargeDecomposition(NamedTuple):
    """Coefficients of Q_1, Q_2 and of the mass-mixing term (nu1^+ nu2 + h.c.)."""

    q1: float | np.ndarray
    q2: float | np.ndarray
    cross: float | np.ndarray


def qft_oscillation(theta, sector: KinematicSector, t) -> QftOscillation:
    """Flavor-charge oscillation on an electron-neutrino state.

    Compared with the Pontecorvo result the slow term is weighted by |U_k|^2
    and a fast term at (omega_k1 + omega_k2) / 2 appears with weight |V_k|^2.
    """
    ang = as_angle(theta)
    t = np.asarray(t, dtype=float)
    slow = np.sin(0.5 * sector.delta * t) ** 2
    fast = np.sin(0.5 * sector.total * t) ** 2
    u2 = np.square(sector.u_k)
    v2 = np.square(sector.v_k)
    q_emu = ang.sin_sq_2theta * (u2 * slow + v2 * fast)
    return QftOscillation(q_ee=1.0 - q_emu, q_emu=q_emu, t=t)


def relativistic_limit_gap(theta, m1, m2, k, t):
    """|Q_ee(QFT) - P_ee(QM)| with the QM energies set to omega_{k,i}.

    Bounded above by sin^2(2 theta) |V_k|^2, which vanishes as k grows.
    """
    if np.any(np.asarray(k) <= 0.0):
        raise ValueError("relativistic limit gap needs k > 0")
    sector = KinematicSector(m1, m2, k)
    q = qft_oscillation(theta, sector, t)
    p_ee, _ = transition_probabilities(theta, sector.spectrum, t)
    return np.abs(q.q_ee - p_ee)


def condensation_density(theta, sector: KinematicSector):
    """Mass-mode occupation in the flavor vacuum: sin^2(theta) |V_k|^2.

    The same for both mass indices and for particles and antiparticles.
    """
    return as_angle(theta).sin_sq * np.square(sector.v_k)


def charge_variance_static(theta):
    """Variance of the Noether charge Q_i (i = 1, 2) on a flavor state; k and t independent."""
    return 0.25 * as_angle(theta).sin_sq_2theta


def charge_variance_dynamic(theta, sector: KinematicSector, t):
    q = qft_oscillation(theta, sector, t)
    return q.q_ee * q.q_emu


def flavor_charge_decomposition(theta, flavor: str = "e") -> ChargeDecomposition:
    """Coefficients expressing Q_e(t) or Q_mu(t) through Q_1, Q_2 and the mixing term."""
    ang = as_angle(theta)
    sc = ang.sin * ang.cos
    if flavor == "e":
        return ChargeDecomposition(ang.cos_sq, ang.sin_sq, sc)
    if flavor == "mu":
        return ChargeDecomposition(ang.sin_sq, ang.cos_sq, -sc)
    raise ValueError(f"flavor must be 'e' or 'mu', got {flavor!r}")


def entanglement_report(theta, sector: KinematicSector, t) -> QftEntanglementReport:
    return QftEntanglementReport(
        var_q_static=charge_variance_static(theta),
        var_q_e_dynamic=charge_variance_dynamic(theta, sector, t),
        condensation=condensation_density(theta, sector),
    )

