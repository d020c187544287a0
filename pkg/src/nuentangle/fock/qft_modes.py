"""Four-mode Fock-space model of one (k, r) sector of the mixed Dirac fields.

Modes are ordered (alpha_1, alpha_2, beta_1, beta_2): particles of mass m_i
at momentum k and antiparticles at -k, all with helicity r. In the frame
k = (0, 0, |k|) the four-component spinors of this sector span a
two-dimensional space. Writing field components in the basis (u_{k,1}, v_{-k,1})
gives

    psi_1 = (alpha_1,                 beta_1^+)
    psi_2 = (U alpha_2 + eps V beta_2^+, -eps V alpha_2 + U beta_2^+)

with U = |U_k|, V = |V_k|, eps = (-1)^r, which reproduces the overlaps
u_1^+ u_2 = v_1^+ v_2 = U and u_1^+ v_2 = eps V. Charges are spinor
bilinears of these components. The flavor annihilators are built directly
from their Bogoliubov form, so the field route and the operator route check
each other.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm, null_space

from nuentangle.fock.space import (
    FockOperator,
    FockState,
    ModeLabel,
    anticommutator,
    build_space,
    dagger,
)
from nuentangle.qft import KinematicSector
from nuentangle.qm import as_angle

QFT_KINDS = (
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

NORMAL_ORDERINGS = ("none", "mass", "flavor")


def _bilinear(a, b) -> np.ndarray:
    """Sum over spinor components of a_c^+ b_c."""
    return sum(dagger(x) @ y for x, y in zip(a, b))


@dataclass(frozen=True)
class GeneratorDiagnostic:
    """Outcome of building the sector mixing generator and testing it against the direct construction."""

    generator: FockOperator
    unitarity_residual: float
    operator_residual: float
    vacuum_residual: float
    vacuum_overlap: float
    tolerance: float = 1e-8

    @property
    def passed(self) -> bool:
        return (
            max(self.unitarity_residual, self.operator_residual, self.vacuum_residual) <= self.tolerance
            and self.vacuum_overlap >= 1.0 - self.tolerance
        )


class QftSectorModes:
    """Mass, flavor and field operators on the 16-dimensional sector space."""

    def __init__(self, theta, sector: KinematicSector, r: int = 1):
        if r not in (1, 2):
            raise ValueError(f"helicity label r must be 1 or 2, got {r!r}")
        self.angle = as_angle(theta)
        if np.ndim(self.angle.theta) or np.ndim(sector.m1) or np.ndim(sector.m2) or np.ndim(sector.k):
            raise ValueError("the Fock-space model takes scalar parameters")
        self.sector = sector
        self.r = r
        self.eps = (-1) ** r
        self.space = build_space(
            [
                ModeLabel("alpha", 1, r),
                ModeLabel("alpha", 2, r),
                ModeLabel("beta", 1, r),
                ModeLabel("beta", 2, r),
            ]
        )
        self._vacuum = None

    # -- operators -----------------------------------------------------

    def mass_ops(self, t: float = 0.0):
        """(alpha_1(t), alpha_2(t), beta_1(t), beta_2(t))."""
        a1, a2, b1, b2 = self.space.annihilators
        p1 = np.exp(-1j * self.sector.omega_k1 * t)
        p2 = np.exp(-1j * self.sector.omega_k2 * t)
        return a1 * p1, a2 * p2, b1 * p1, b2 * p2

    def flavor_ops(self, t: float = 0.0):
        """(alpha_e(t), alpha_mu(t), beta_e(t), beta_mu(t)) from the Bogoliubov form."""
        c, s = self.angle.cos, self.angle.sin
        u, v, eps = self.sector.u_k, self.sector.v_k, self.eps
        a1, a2, b1, b2 = self.mass_ops(t)
        a_e = c * a1 + s * (u * a2 + eps * v * dagger(b2))
        a_mu = c * a2 - s * (u * a1 - eps * v * dagger(b1))
        b_e = c * b1 + s * (u * b2 - eps * v * dagger(a2))
        b_mu = c * b2 - s * (u * b1 + eps * v * dagger(a1))
        return a_e, a_mu, b_e, b_mu

    def mass_fields(self, t: float = 0.0):
        """Spinor components of nu_1, nu_2 in the (u_{k,1}, v_{-k,1}) basis."""
        u, v, eps = self.sector.u_k, self.sector.v_k, self.eps
        a1, a2, b1, b2 = self.mass_ops(t)
        psi1 = (a1, dagger(b1))
        psi2 = (u * a2 + eps * v * dagger(b2), -eps * v * a2 + u * dagger(b2))
        return psi1, psi2

    def flavor_fields(self, t: float = 0.0):
        """Spinor components of nu_e, nu_mu from the field rotation."""
        c, s = self.angle.cos, self.angle.sin
        psi1, psi2 = self.mass_fields(t)
        nu_e = tuple(c * x + s * y for x, y in zip(psi1, psi2))
        nu_mu = tuple(-s * x + c * y for x, y in zip(psi1, psi2))
        return nu_e, nu_mu

    def field_component_residual(self, t: float = 0.0) -> float:
        """Mismatch between the flavor-field components and the flavor annihilators.

        nu_e must read (alpha_e, beta_e^+) and nu_mu must read
        (U alpha_mu + eps V beta_mu^+, -eps V alpha_mu + U beta_mu^+).
        """
        u, v, eps = self.sector.u_k, self.sector.v_k, self.eps
        a_e, a_mu, b_e, b_mu = self.flavor_ops(t)
        nu_e, nu_mu = self.flavor_fields(t)
        expected = [
            (nu_e[0], a_e),
            (nu_e[1], dagger(b_e)),
            (nu_mu[0], u * a_mu + eps * v * dagger(b_mu)),
            (nu_mu[1], -eps * v * a_mu + u * dagger(b_mu)),
        ]
        return max(float(np.max(np.abs(x - y))) for x, y in expected)

    def free_hamiltonian(self) -> np.ndarray:
        n = self.space.number
        w1, w2 = self.sector.omega_k1, self.sector.omega_k2
        return w1 * (n(0) + n(2)) + w2 * (n(1) + n(3))

    # -- states --------------------------------------------------------

    def flavor_vacuum(self) -> FockState:
        """Flavor vacuum of this sector, written out as a pair condensate on |0>_{1,2}."""
        if self._vacuum is None:
            c, s = self.angle.cos, self.angle.sin
            u, v, eps = self.sector.u_k, self.sector.v_k, self.eps
            ca1, ca2, cb1, cb2 = (dagger(a) for a in self.space.annihilators)
            bracket = (
                (1.0 - s**2 * v**2) * self.space.identity
                - eps * s * c * v * (ca1 @ cb2 + ca2 @ cb1)
                + eps * s**2 * v * u * (ca1 @ cb1 - ca2 @ cb2)
                + s**2 * v**2 * ca1 @ cb2 @ ca2 @ cb1
            )
            self._vacuum = FockState(bracket @ self.space.vacuum(), "|0>_{e,mu}")
        return self._vacuum

    def vacuum_from_annihilators(self) -> np.ndarray:
        """Common kernel of the four flavor annihilators at t = 0, phased so <0_12|.> > 0."""
        stacked = np.vstack(self.flavor_ops(0.0))
        kernel = null_space(stacked, rcond=1e-10)
        if kernel.shape[1] != 1:
            raise RuntimeError(f"flavor annihilators have a {kernel.shape[1]}-dimensional common kernel")
        vec = kernel[:, 0]
        lead = vec[0]
        if abs(lead) > 1e-14:
            vec = vec * (abs(lead) / lead)
        return vec / np.linalg.norm(vec)

    def flavor_states(self) -> tuple[FockState, FockState]:
        """(alpha_e^+(0)|0>_{e,mu}, alpha_mu^+(0)|0>_{e,mu})."""
        vac = self.flavor_vacuum().vector
        a_e, a_mu, _, _ = self.flavor_ops(0.0)
        return (
            FockState(dagger(a_e) @ vac, "nu_e"),
            FockState(dagger(a_mu) @ vac, "nu_mu"),
        )

    def flavor_states_explicit(self) -> tuple[np.ndarray, np.ndarray]:
        """Three-term expansions of the flavor states on the mass vacuum of the sector."""
        c, s = self.angle.cos, self.angle.sin
        u, v, eps = self.sector.u_k, self.sector.v_k, self.eps
        ca1, ca2, cb1, cb2 = (dagger(a) for a in self.space.annihilators)
        vac = self.space.vacuum()
        nu_e = (c * ca1 + u * s * ca2 - eps * v * s * ca1 @ ca2 @ cb1) @ vac
        nu_mu = (c * ca2 - u * s * ca1 + eps * v * s * ca1 @ ca2 @ cb2) @ vac
        return nu_e, nu_mu

    # -- charges -------------------------------------------------------

    def charge(self, kind: str, t: float = 0.0, normal_order: str | None = None) -> FockOperator:
        """Charge operator of this sector as a spinor bilinear of the fields.

        ``normal_order`` is 'none' (plain bilinear), 'mass' (subtract the
        mass-vacuum expectation) or 'flavor' (subtract the flavor-vacuum
        expectation). Defaults: 'mass' for mass-i, 'flavor' for flavor-sigma,
        'none' for the su(2) generators and the Casimir.
        """
        if kind not in QFT_KINDS:
            raise ValueError(f"unknown charge kind {kind!r}; expected one of {QFT_KINDS}")
        if normal_order is None:
            normal_order = {"mass": "mass", "flavor": "flavor"}.get(kind.split("-")[0], "none")
            if kind.startswith("mass-j"):
                normal_order = "none"
        if normal_order not in NORMAL_ORDERINGS:
            raise ValueError(f"normal_order must be one of {NORMAL_ORDERINGS}, got {normal_order!r}")

        psi1, psi2 = self.mass_fields(t)
        nu_e, nu_mu = self.flavor_fields(t)
        if kind == "mass-1":
            op = _bilinear(psi1, psi1)
        elif kind == "mass-2":
            op = _bilinear(psi2, psi2)
        elif kind == "flavor-e":
            op = _bilinear(nu_e, nu_e)
        elif kind == "flavor-mu":
            op = _bilinear(nu_mu, nu_mu)
        elif kind == "casimir":
            op = 0.5 * (_bilinear(psi1, psi1) + _bilinear(psi2, psi2))
        else:
            basis, comp = kind.split("-")
            x, y = (psi1, psi2) if basis == "mass" else (nu_e, nu_mu)
            jp, jm = _bilinear(x, y), _bilinear(y, x)
            j3 = 0.5 * (_bilinear(x, x) - _bilinear(y, y))
            op = {"j1": 0.5 * (jp + jm), "j2": (jp - jm) / 2j, "j3": j3}[comp]

        if normal_order == "mass":
            vac = self.space.vacuum()
            op = op - np.vdot(vac, op @ vac) * self.space.identity
        elif normal_order == "flavor":
            vac = self.flavor_vacuum().vector
            op = op - np.vdot(vac, op @ vac) * self.space.identity
        return FockOperator(op, f"{kind}({t}) [{normal_order}]")

    def mixing_cross_term(self, t: float = 0.0) -> np.ndarray:
        """Sector restriction of the integral of nu_1^+ nu_2 + nu_2^+ nu_1."""
        psi1, psi2 = self.mass_fields(t)
        x = _bilinear(psi1, psi2)
        return x + dagger(x)

    # -- diagnostics ---------------------------------------------------

    def transition_amplitudes(self, t: float):
        """Scalars {alpha_sigma(t), alpha_e^+(0)} and {beta_sigma^+(t), alpha_e^+(0)} for sigma = e, mu.

        Each anticommutator is a multiple of the identity; the scalar is read
        off the trace and the off-identity remainder is returned as a residual.
        """
        a_e0 = self.flavor_ops(0.0)[0]
        a_e, a_mu, b_e, b_mu = self.flavor_ops(t)
        out = {}
        worst = 0.0
        eye = self.space.identity
        for name, op in (("alpha_e", a_e), ("alpha_mu", a_mu), ("beta_e", dagger(b_e)), ("beta_mu", dagger(b_mu))):
            ac = anticommutator(op, dagger(a_e0))
            scalar = np.trace(ac) / self.space.dim
            worst = max(worst, float(np.max(np.abs(ac - scalar * eye))))
            out[name] = complex(scalar)
        return out, worst

    def mixing_generator(self, t: float = 0.0, tolerance: float = 1e-8) -> GeneratorDiagnostic:
        """Sector generator G = exp[theta (X - X^+)], X the sector part of the integral of nu_1^+ nu_2.

        Checks G^-1 alpha_i G against the flavor annihilators and
        G^-1 |0>_{1,2} against the explicit flavor vacuum (t = 0 only).
        """
        psi1, psi2 = self.mass_fields(t)
        x = _bilinear(psi1, psi2)
        g = expm(self.angle.theta * (x - dagger(x)))
        g_inv = dagger(g)
        unitarity = float(np.max(np.abs(g_inv @ g - self.space.identity)))
        mapped = [g_inv @ a @ g for a in self.mass_ops(t)]
        op_res = max(float(np.max(np.abs(m - f))) for m, f in zip(mapped, self.flavor_ops(t)))
        vac_g = g_inv @ self.space.vacuum()
        vac = self.flavor_vacuum().vector
        if t == 0.0:
            vac_res = float(np.linalg.norm(vac_g - vac))
            overlap = float(abs(np.vdot(vac, vac_g)))
        else:
            vac_res, overlap = 0.0, 1.0
        return GeneratorDiagnostic(
            generator=FockOperator(g, f"G_theta({t})"),
            unitarity_residual=unitarity,
            operator_residual=op_res,
            vacuum_residual=vac_res,
            vacuum_overlap=overlap,
            tolerance=tolerance,
        )


def qft_flavor_ops(theta, sector: KinematicSector, r: int = 1, t: float = 0.0):
    return QftSectorModes(theta, sector, r).flavor_ops(t)


def flavor_vacuum(theta, sector: KinematicSector, r: int = 1) -> FockState:
    return QftSectorModes(theta, sector, r).flavor_vacuum()


def flavor_states(theta, sector: KinematicSector, r: int = 1) -> tuple[FockState, FockState]:
    return QftSectorModes(theta, sector, r).flavor_states()


def mixing_generator(theta, sector: KinematicSector, r: int = 1, tolerance: float = 1e-8) -> GeneratorDiagnostic:
    return QftSectorModes(theta, sector, r).mixing_generator(tolerance=tolerance)


@dataclass(frozen=True)
class FourPointReport:
    """<N_alpha N_beta> = <N_beta> on |nu_e> and the assembled flavor-charge variance."""

    four_point: complex
    beta_number: complex
    variance_assembled: float
    variance_closed_form: float

    @property
    def identity_residual(self) -> float:
        return abs(self.four_point - self.beta_number)

    @property
    def variance_residual(self) -> float:
        return abs(self.variance_assembled - self.variance_closed_form)

    @property
    def max_residual(self) -> float:
        return max(self.identity_residual, self.variance_residual)


def verify_four_point_identity(theta, sector: KinematicSector, r: int = 1, t: float = 0.0) -> FourPointReport:
    """Check <nu_e|N_ae(t) N_be(t)|nu_e> = <nu_e|N_be(t)|nu_e> and the variance it implies.

    The variance is assembled as <N_a> + <N_b> - 2 <N_a N_b> - <N_a - N_b>^2
    from matrix elements and compared with Q_ee(t) Q_emu(t) in closed form.
    """
    from nuentangle.qft import charge_variance_dynamic

    model = QftSectorModes(theta, sector, r)
    nu_e = model.flavor_states()[0].vector
    a_e, _, b_e, _ = model.flavor_ops(t)
    n_a = dagger(a_e) @ a_e
    n_b = dagger(b_e) @ b_e

    def ev(op):
        return complex(np.vdot(nu_e, op @ nu_e))

    four = ev(n_a @ n_b)
    nb = ev(n_b)
    na = ev(n_a)
    assembled = (na + nb - 2.0 * four - (na - nb) ** 2).real
    closed = float(charge_variance_dynamic(model.angle, sector, t))
    return FourPointReport(four, nb, float(assembled), closed)


def charge_operator(model, kind: str, t: float = 0.0, normal_order: str | None = None) -> FockOperator:
    """Charge of ``kind`` from a :class:`QftSectorModes` or a two-mode QM model."""
    if isinstance(model, QftSectorModes):
        return model.charge(kind, t, normal_order)
    if normal_order not in (None, "none"):
        raise ValueError("normal ordering is trivial on the two-mode space; pass normal_order=None")
    return model.charge(kind, t)
