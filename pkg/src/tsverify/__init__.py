"""Delta calculus on products of three bounded time scales, with a
numerical certification harness.

The package materializes bounded time scales, computes delta derivatives
and iterated delta integrals on them, expresses function values through
octant representation identities, and checks deviation and product-mean
inequalities instance by instance, reporting the margin of every check.
A batch front-end (``tsverify``) runs seeded campaigns and emits
deterministic reports.
"""

__version__ = "0.1.0"

from . import errors, kernels
from .calculus import (
    MixedPartialField,
    box_delta_integral,
    delta_integral_1d,
    mixed_partial,
    partial_delta,
    sup_norm_mixed,
    triple_delta_integral,
)
from .functions import (
    Function3,
    Polynomial3,
    Tabulated3,
    TrigProduct3,
    from_literal,
)
from .identities import (
    OCTANTS,
    BoxFields,
    CornerCombination,
    Octant,
    averaged_identity_residual,
    corner_combination,
    functional_A,
    functional_B,
    identity_residual,
    octant_identity_rhs,
)
from .inequalities import (
    ConvergenceRecord,
    Margin,
    cebysev_check,
    classical_cebysev_check,
    classical_ostrowski_check,
    continuous_convergence_study,
    discrete_instance_check,
    ostrowski_check,
    romberg,
)
from .timescale import Box3, TimeScale

# the batch layer sits above the numerics and pulls __version__ into
# report provenance, so it must come after the version assignment
from .campaign import run_campaign
from .config import ScenarioConfig, load_scenarios, parse_config
from .report import Row, VerificationReport, build_report

__all__ = [
    "__version__",
    "errors",
    "kernels",
    "TimeScale",
    "Box3",
    "Function3",
    "Polynomial3",
    "TrigProduct3",
    "Tabulated3",
    "from_literal",
    "MixedPartialField",
    "partial_delta",
    "mixed_partial",
    "sup_norm_mixed",
    "delta_integral_1d",
    "box_delta_integral",
    "triple_delta_integral",
    "Octant",
    "OCTANTS",
    "CornerCombination",
    "corner_combination",
    "octant_identity_rhs",
    "identity_residual",
    "functional_A",
    "functional_B",
    "averaged_identity_residual",
    "BoxFields",
    "Margin",
    "ConvergenceRecord",
    "ostrowski_check",
    "cebysev_check",
    "classical_ostrowski_check",
    "classical_cebysev_check",
    "continuous_convergence_study",
    "discrete_instance_check",
    "romberg",
    "ScenarioConfig",
    "parse_config",
    "load_scenarios",
    "run_campaign",
    "Row",
    "VerificationReport",
    "build_report",
]
