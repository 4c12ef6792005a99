"""Double kicked top: Floquet dynamics, exact recurrences, and their diagnostics."""

__version__ = "0.1.0"

from .spin import (
    SpinSystem,
    SphericalPoint,
    build_angular_momentum,
    coherent_state,
    exp_quadratic_x,
    exp_quadratic_z,
    rotation_about_y,
)
from .floquet import (
    FloquetOperator,
    KickParameters,
    PeriodCertificate,
    build_floquet,
    certify_projective_period,
    dkt,
    evolve_trajectory,
    floquet_power,
    ktheta_independence_deviation,
    transform_kicks,
)
from .observables import (
    averaged_rate,
    entropy_landscape,
    fidelity_series,
    husimi_field,
    reduced_qubit_density,
    time_averaged_entropy,
    von_neumann_entropy,
)
from .spectral import (
    compare_to_reference,
    degeneracy_profile,
    parity_sectors,
    quasi_energies,
    sample_goe_reference,
    sample_poisson_reference,
    spacing_ratios,
)

__all__ = [
    "SpinSystem",
    "SphericalPoint",
    "build_angular_momentum",
    "coherent_state",
    "exp_quadratic_x",
    "exp_quadratic_z",
    "rotation_about_y",
    "FloquetOperator",
    "KickParameters",
    "PeriodCertificate",
    "build_floquet",
    "certify_projective_period",
    "dkt",
    "evolve_trajectory",
    "floquet_power",
    "ktheta_independence_deviation",
    "transform_kicks",
    "averaged_rate",
    "entropy_landscape",
    "fidelity_series",
    "husimi_field",
    "reduced_qubit_density",
    "time_averaged_entropy",
    "von_neumann_entropy",
    "compare_to_reference",
    "degeneracy_profile",
    "parity_sectors",
    "quasi_energies",
    "sample_goe_reference",
    "sample_poisson_reference",
    "spacing_ratios",
]
