"""Brute-force verification of the closed forms against the Fock-space models.

Each check compares a matrix computation with the corresponding closed-form
value and records the worst residual over a randomized parameter grid.
Tolerances are tiered: algebraic identities 1e-12 (CAR 1e-13), constructed
states and expectation values 1e-10, matrix-exponential diagnostics 1e-8.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from nuentangle import qft, qm
from nuentangle.fock.qft_modes import QftSectorModes, verify_four_point_identity
from nuentangle.fock.qm_modes import QmModes, linear_entropy, su2_cartesian
from nuentangle.fock.space import anticommutator, car_residual, commutator, dagger, expectation, variance

TOL_CAR = 1e-13
TOL_ALGEBRA = 1e-12
TOL_STATE = 1e-10
TOL_EXPM = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.tolerance


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    n_points: int = 0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    @property
    def max_residual(self) -> float:
        return max((c.residual for c in self.checks), default=0.0)

    def rows(self) -> list[dict]:
        return [
            {"check": c.name, "residual": c.residual, "tolerance": c.tolerance, "passed": c.passed}
            for c in self.checks
        ]

    def to_text(self) -> str:
        lines = [
            f"{'PASS' if c.passed else 'FAIL'}  {c.name:<40s} residual={c.residual:.3e}  tol={c.tolerance:.0e}"
            for c in self.checks
        ]
        status = "all checks passed" if self.passed else f"{len(self.failures)} check(s) failed"
        lines.append(f"{len(self.checks)} checks over {self.n_points} grid points: {status}")
        return "\n".join(lines)


class _Collector:
    """Keeps the worst residual per check name, in first-seen order."""

    def __init__(self):
        self._worst: dict[str, float] = {}
        self._tol: dict[str, float] = {}

    def add(self, name: str, residual, tolerance: float):
        residual = float(np.max(np.abs(residual)))
        if name in self._tol and self._tol[name] != tolerance:
            raise ValueError(f"check {name!r} registered with two tolerances")
        self._tol[name] = tolerance
        prev = self._worst.get(name, 0.0)
        # NaN must stick
        self._worst[name] = residual if (residual > prev or math.isnan(residual)) else prev

    def extend(self, checks):
        for c in checks:
            self.add(c.name, c.residual, c.tolerance)

    def checks(self) -> list[Check]:
        return [Check(n, self._worst[n], self._tol[n]) for n in self._worst]


def _max_abs(a) -> float:
    return float(np.max(np.abs(a)))


def _su2_closure(j1, j2, j3) -> float:
    return max(
        _max_abs(commutator(j1, j2) - 1j * j3),
        _max_abs(commutator(j2, j3) - 1j * j1),
        _max_abs(commutator(j3, j1) - 1j * j2),
    )


def check_qm_point(theta: float, omega1: float, omega2: float, t: float) -> list[Check]:
    """Every quantum-mechanical closed form against the two-mode model at one point."""
    out = _Collector()
    spec = qm.QmSpectrum(omega1, omega2)
    ang = qm.MixingAngle(theta)
    model = QmModes(ang, spec)

    out.add("qm.car_mass_to_flavor", car_residual(model.flavor_ops(t)), TOL_CAR)

    # amplitudes {alpha_sigma(t), alpha_rho^+(0)} = U~_{rho sigma}(t) 1
    amp = qm.evolve_amplitudes(ang, spec, t)
    f0 = model.flavor_ops(0.0)
    ft = model.flavor_ops(t)
    expected = {(0, 0): amp.u_ee, (0, 1): amp.u_emu, (1, 0): amp.u_mue, (1, 1): amp.u_mumu}
    eye = model.space.identity
    for (rho, sigma), u in expected.items():
        ac = anticommutator(ft[sigma], dagger(f0[rho]))
        out.add("qm.amplitudes_vs_anticommutators", ac - u * eye, TOL_STATE)

    nu_e = model.flavor_state("e").vector
    n_e = model.charge("flavor-e", t).matrix
    n_mu = model.charge("flavor-mu", t).matrix
    p_ee, p_emu = qm.transition_probabilities(ang, spec, t)
    out.add("qm.p_ee", expectation(nu_e, n_e) - p_ee, TOL_STATE)
    out.add("qm.p_emu", expectation(nu_e, n_mu) - p_emu, TOL_STATE)
    out.add("qm.p_ee_overlap", abs(np.vdot(nu_e, model.evolve(nu_e, t))) ** 2 - p_ee, TOL_STATE)

    psi_t = model.evolve(nu_e, t)
    s_dyn = qm.linear_entropy_dynamic(ang, spec, t)
    for mode in (0, 1):
        rho_f = model.reduced_density(psi_t, mode, basis="flavor")
        out.add("qm.linear_entropy_dynamic", linear_entropy(rho_f) - s_dyn, TOL_STATE)
        lam = np.sort(np.linalg.eigvalsh(rho_f))
        out.add("qm.reduced_dynamic_spectrum", lam - np.sort([p_ee, p_emu]), TOL_STATE)
        rho_m = model.reduced_density(psi_t, mode, basis="mass")
        out.add("qm.linear_entropy_static", linear_entropy(rho_m) - qm.linear_entropy_static(ang), TOL_STATE)
        lam = np.sort(np.linalg.eigvalsh(rho_m))
        out.add("qm.reduced_static_spectrum", lam - np.sort([ang.cos_sq, ang.sin_sq]), TOL_STATE)

    for kind in ("mass-1", "mass-2"):
        op = model.charge(kind).matrix
        out.add("qm.variance_mass_number", variance(psi_t, op) - qm.variance_mass_number_static(ang), TOL_STATE)
    var_ne = qm.variance_flavor_number_dynamic(ang, spec, t)
    out.add("qm.variance_flavor_number", variance(nu_e, n_e) - var_ne, TOL_STATE)
    out.add("qm.variance_flavor_number", variance(nu_e, n_mu) - var_ne, TOL_STATE)

    derived = qm.variance_su2_flavor(ang, spec, t).derived
    for name, val in zip(("su2-j1", "su2-j2", "su2-j3"), derived[:3]):
        out.add(f"qm.variance_{name[-2:]}", variance(nu_e, model.charge(name, t).matrix) - val, TOL_STATE)
    out.add("qm.variance_casimir", variance(nu_e, model.charge("casimir").matrix) - derived.c, TOL_STATE)
    out.add("qm.variance_j3_equals_p_product", derived.j3 - p_ee * p_emu, TOL_ALGEBRA)

    out.add("qm.hamiltonian_identity", model.hamiltonian() - model.flavor_hamiltonian(t), TOL_ALGEBRA)
    for basis in ("mass", "flavor"):
        jp, jm, j3 = model.su2_raising(basis, t)
        out.add("qm.su2_closure", _su2_closure(*su2_cartesian(jp, jm, j3)), TOL_ALGEBRA)
        out.add("qm.su2_ladder", commutator(jp, jm) - 2 * j3, TOL_ALGEBRA)
    return out.checks()


def check_qft_point(theta: float, m1: float, m2: float, k: float, t: float, r: int = 1) -> list[Check]:
    """Every field-theoretic closed form against the four-mode sector model at one point."""
    out = _Collector()
    ang = qm.MixingAngle(theta)
    sector = qft.KinematicSector(m1, m2, k)
    model = QftSectorModes(ang, sector, r)
    s2v2 = ang.sin_sq * sector.v_k**2

    out.add("qft.car_flavor_t0", car_residual(model.flavor_ops(0.0)), TOL_CAR)
    out.add("qft.car_flavor_t", car_residual(model.flavor_ops(t)), TOL_CAR)
    out.add("qft.field_components", model.field_component_residual(t), TOL_ALGEBRA)

    vac = model.flavor_vacuum().vector
    vac12 = model.space.vacuum()
    out.add("qft.vacuum_norm", np.linalg.norm(vac) - 1.0, TOL_ALGEBRA)
    for op in model.flavor_ops(0.0):
        out.add("qft.vacuum_annihilated", np.linalg.norm(op @ vac), TOL_STATE)
    out.add("qft.vacuum_overlap_with_mass_vacuum", np.vdot(vac12, vac) - (1.0 - s2v2), TOL_STATE)
    out.add("qft.vacuum_vs_common_kernel", model.vacuum_from_annihilators() - vac, TOL_STATE)

    cond = qft.condensation_density(ang, sector)
    for j in range(4):
        out.add("qft.condensation_density", expectation(vac, model.space.number(j)) - cond, TOL_STATE)

    nu_e, nu_mu = (s.vector for s in model.flavor_states())
    h1, h2 = model.flavor_states_explicit()
    out.add("qft.flavor_states_explicit", np.concatenate([nu_e - h1, nu_mu - h2]), TOL_STATE)
    out.add("qft.flavor_states_orthogonal", np.vdot(nu_e, nu_mu), TOL_STATE)

    q_e0 = model.charge("flavor-e", 0.0).matrix
    q_mu0 = model.charge("flavor-mu", 0.0).matrix
    out.add("qft.eigen_Qe_nu_e", q_e0 @ nu_e - nu_e, TOL_STATE)
    out.add("qft.eigen_Qmu_nu_mu", q_mu0 @ nu_mu - nu_mu, TOL_STATE)
    out.add("qft.eigen_Qmu_nu_e", q_mu0 @ nu_e, TOL_STATE)
    out.add("qft.eigen_Qe_nu_mu", q_e0 @ nu_mu, TOL_STATE)
    out.add("qft.eigen_Q_vacuum", np.concatenate([q_e0 @ vac, q_mu0 @ vac]), TOL_STATE)

    osc = qft.qft_oscillation(ang, sector, t)
    q_e = model.charge("flavor-e", t).matrix
    q_mu = model.charge("flavor-mu", t).matrix
    out.add("qft.oscillation_q_ee", expectation(nu_e, q_e) - osc.q_ee, TOL_STATE)
    out.add("qft.oscillation_q_emu", expectation(nu_e, q_mu) - osc.q_emu, TOL_STATE)

    amps, ac_res = model.transition_amplitudes(t)
    out.add("qft.anticommutators_are_scalars", ac_res, TOL_ALGEBRA)
    anti_e = abs(amps["alpha_e"]) ** 2 + abs(amps["beta_e"]) ** 2
    anti_mu = abs(amps["alpha_mu"]) ** 2 + abs(amps["beta_mu"]) ** 2
    out.add("qft.oscillation_anticommutator_form", [anti_e - osc.q_ee, anti_mu - osc.q_emu], TOL_STATE)
    # the vacuum-subtracted and plain N_a - N_b forms coincide: zero flavor-vacuum charge at all t
    for kind in ("flavor-e", "flavor-mu"):
        plain = model.charge(kind, t, normal_order="mass").matrix
        out.add("qft.vacuum_charge_zero", expectation(vac, plain), TOL_STATE)

    for kind in ("mass-1", "mass-2"):
        out.add(
            "qft.variance_static",
            variance(nu_e, model.charge(kind).matrix) - qft.charge_variance_static(ang),
            TOL_STATE,
        )
    out.add(
        "qft.variance_dynamic",
        variance(nu_e, q_e) - qft.charge_variance_dynamic(ang, sector, t),
        TOL_STATE,
    )
    fp = verify_four_point_identity(ang, sector, r, t)
    out.add("qft.four_point_identity", fp.identity_residual, TOL_STATE)
    out.add("qft.four_point_variance", fp.variance_residual, TOL_STATE)

    for basis in ("mass", "su2"):
        js = [model.charge(f"{basis}-j{i}", t, normal_order="none").matrix for i in (1, 2, 3)]
        out.add("qft.su2_closure", _su2_closure(*js), TOL_ALGEBRA)
    q1 = model.charge("mass-1").matrix
    q2 = model.charge("mass-2").matrix
    out.add("qft.charge_sum", q_e + q_mu - q1 - q2, TOL_ALGEBRA)
    cross = model.mixing_cross_term(t)
    for flavor in ("e", "mu"):
        coef = qft.flavor_charge_decomposition(ang, flavor)
        for order, q1_, q2_ in (
            ("none", model.charge("mass-1", normal_order="none").matrix, model.charge("mass-2", normal_order="none").matrix),
            ("mass", q1, q2),
        ):
            lhs = model.charge(f"flavor-{flavor}", t, normal_order=order).matrix
            out.add("qft.charge_mixing_decomposition", lhs - (coef.q1 * q1_ + coef.q2 * q2_ + coef.cross * cross), TOL_ALGEBRA)

    # Heisenberg picture: phases on the mass operators equal conjugation by exp(iHt)
    h = model.free_hamiltonian()
    u_t = expm(-1j * h * t)
    for a0, at in zip(model.mass_ops(0.0), model.mass_ops(t)):
        out.add("qft.heisenberg_mass_ops", dagger(u_t) @ a0 @ u_t - at, TOL_STATE)
    psi_t = u_t @ nu_e
    out.add("qft.heisenberg_expectation", expectation(psi_t, q_e0) - expectation(nu_e, q_e), TOL_STATE)

    gen = model.mixing_generator()
    out.add("qft.generator_unitarity", gen.unitarity_residual, TOL_EXPM)
    out.add("qft.generator_maps_operators", gen.operator_residual, TOL_EXPM)
    out.add("qft.generator_maps_vacuum", gen.vacuum_residual, TOL_EXPM)
    return out.checks()


def check_helicity_independence(theta: float, m1: float, m2: float, k: float, t: float) -> Check:
    """Observables of the r = 1 and r = 2 sectors coincide."""
    vals = []
    for r in (1, 2):
        model = QftSectorModes(theta, qft.KinematicSector(m1, m2, k), r)
        nu_e = model.flavor_states()[0].vector
        q_e = model.charge("flavor-e", t).matrix
        vals.append(
            [
                expectation(nu_e, q_e).real,
                variance(nu_e, q_e),
                expectation(model.flavor_vacuum().vector, model.space.number(0)).real,
            ]
        )
    return Check("qft.helicity_independence", _max_abs(np.subtract(*vals)), TOL_ALGEBRA)


def random_grid(n_points: int, seed: int = 0):
    """Deterministic randomized (theta, omega1, omega2, m1, m2, k, t) samples."""
    rng = np.random.default_rng(seed)
    return {
        "theta": rng.uniform(0.0, np.pi / 2, n_points),
        "omega1": rng.uniform(0.1, 5.0, n_points),
        "omega2": rng.uniform(0.1, 5.0, n_points),
        "m1": rng.uniform(0.1, 3.0, n_points),
        "m2": rng.uniform(0.1, 3.0, n_points),
        "k": rng.uniform(0.0, 3.0, n_points),
        "t": rng.uniform(0.0, 20.0, n_points),
    }


def run_verification(n_points: int = 100, seed: int = 0) -> VerificationReport:
    """Run every oracle check over ``n_points`` randomized points (both helicities for QFT)."""
    if n_points < 1:
        raise ValueError("n_points must be at least 1")
    grid = random_grid(n_points, seed)
    out = _Collector()
    for i in range(n_points):
        th, t = grid["theta"][i], grid["t"][i]
        out.extend(check_qm_point(th, grid["omega1"][i], grid["omega2"][i], t))
        m1, m2, k = grid["m1"][i], grid["m2"][i], grid["k"][i]
        for r in (1, 2):
            out.extend(check_qft_point(th, m1, m2, k, t, r))
        out.extend([check_helicity_independence(th, m1, m2, k, t)])
    return VerificationReport(checks=out.checks(), n_points=n_points)
