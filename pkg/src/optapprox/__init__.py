"""Optimal polynomial approximants to 1/f in weighted coefficient spaces.

The package computes the degree-n polynomial minimizing ||p f - 1|| in
the spaces with coefficient weights (k+1)^alpha on the disk (and the
product weights on the bidisk), together with the numerical instruments
built around that problem: moment-matrix assembly with structure
detection, Cholesky and Levinson solvers, closed-form reference values
for the (1-z)^a family, zero-set analysis with the modulus lower bound,
cyclicity diagnostics, and the extremal shift-quotient search in the
Bergman-weight space.
"""

from .approx import (
    CyclicityReport,
    OptimalApproximant,
    ProfileEntry,
    TelescopeResult,
    cyclicity_report,
    distance_profile,
    optimal_approximant,
    telescoping_product,
)
from .bidisk import (
    MonomialBasis2D,
    OptimalApproximant2D,
    TaylorSeries2D,
    moment_2d,
    norm_sq_2d,
    optimal_approximant_2d,
    series_2d,
    swap_symmetry_check,
)
from .closedform import (
    ZeroGeometry,
    approximant_at_zero,
    approximant_coeff_exact,
    approximant_coeff_hardy,
    approximant_coeffs_hardy,
    distance_asymptotic,
    log_gamma,
    quadratic_zeros,
    zero_geometry_constants,
)
from .core import (
    BERGMAN,
    DEFAULT_TRUNCATION,
    DIRICHLET,
    HARDY,
    FunctionSpec,
    SpaceParam,
    TaylorSeries1D,
    function_spec_from_json,
    inner_product,
    materialize,
    multiply,
    norm_sq,
    poly_eval,
    series,
)
from .errors import (
    ConditioningWarning,
    ConvergenceError,
    NotPositiveDefiniteError,
    NumericsError,
    RootConvergenceWarning,
)
from .extremal import ExtremalResult, SweepResult, rayleigh_lower_bound, sweep
from .gram import (
    GramSystem,
    build_system,
    detect_structure,
    dirichlet_moment_closed_form,
    hardy_moment_closed_form,
    inner_moment_profile,
    moment,
)
from .solve import SolveReport, cholesky_solve, condition_estimate, levinson_solve, solve_system
from .zeros import (
    FamilyGeometry,
    ZeroReport,
    check_zero_bound,
    degree_one_zero,
    family_report,
    find_roots,
    modulus_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BERGMAN",
    "DEFAULT_TRUNCATION",
    "DIRICHLET",
    "HARDY",
    "ConditioningWarning",
    "ConvergenceError",
    "CyclicityReport",
    "ExtremalResult",
    "FamilyGeometry",
    "FunctionSpec",
    "GramSystem",
    "MonomialBasis2D",
    "NotPositiveDefiniteError",
    "NumericsError",
    "OptimalApproximant",
    "OptimalApproximant2D",
    "ProfileEntry",
    "RootConvergenceWarning",
    "SolveReport",
    "SpaceParam",
    "SweepResult",
    "TaylorSeries1D",
    "TaylorSeries2D",
    "TelescopeResult",
    "ZeroGeometry",
    "ZeroReport",
    "approximant_at_zero",
    "approximant_coeff_exact",
    "approximant_coeff_hardy",
    "approximant_coeffs_hardy",
    "build_system",
    "check_zero_bound",
    "cholesky_solve",
    "condition_estimate",
    "cyclicity_report",
    "degree_one_zero",
    "detect_structure",
    "dirichlet_moment_closed_form",
    "distance_asymptotic",
    "distance_profile",
    "family_report",
    "find_roots",
    "function_spec_from_json",
    "hardy_moment_closed_form",
    "inner_moment_profile",
    "inner_product",
    "levinson_solve",
    "log_gamma",
    "materialize",
    "modulus_bound",
    "moment",
    "moment_2d",
    "multiply",
    "norm_sq",
    "norm_sq_2d",
    "optimal_approximant",
    "optimal_approximant_2d",
    "poly_eval",
    "quadratic_zeros",
    "rayleigh_lower_bound",
    "series",
    "series_2d",
    "solve_system",
    "swap_symmetry_check",
    "sweep",
    "telescoping_product",
    "zero_geometry_constants",
]
