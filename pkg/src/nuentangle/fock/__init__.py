"""Exact finite-dimensional second-quantization oracle."""

from nuentangle.fock.qft_modes import (
    FourPointReport,
    GeneratorDiagnostic,
    QftSectorModes,
    charge_operator,
    flavor_states,
    flavor_vacuum,
    mixing_generator,
    qft_flavor_ops,
    verify_four_point_identity,
)
from nuentangle.fock.qm_modes import QmModes, linear_entropy, qm_flavor_ops
from nuentangle.fock.space import (
    FockOperator,
    FockSpace,
    FockState,
    ModeLabel,
    anticommutator,
    build_space,
    car_residual,
    commutator,
    dagger,
    expectation,
    variance,
)

__all__ = [
    "FockOperator",
    "FockSpace",
    "FockState",
    "FourPointReport",
    "GeneratorDiagnostic",
    "ModeLabel",
    "QftSectorModes",
    "QmModes",
    "anticommutator",
    "build_space",
    "car_residual",
    "charge_operator",
    "commutator",
    "dagger",
    "expectation",
    "flavor_states",
    "flavor_vacuum",
    "linear_entropy",
    "mixing_generator",
    "qft_flavor_ops",
    "qm_flavor_ops",
    "variance",
    "verify_four_point_identity",
]
