"""Sharp first-eigenvalue lower bounds from one-dimensional model problems.

The package computes first nonzero Neumann and first Dirichlet-Neumann
eigenvalues of curvature-indexed Sturm-Liouville problems, which bound the
corresponding eigenvalues of Kahler and Riemannian manifolds from below.
Submodules:

    coefficients     curvature model coefficients, drifts, weights
    sturm_liouville  shooting and finite-difference eigenvalue solvers
    bounds           the eigenvalue lower bounds and comparison reports
    heatflow         one-dimensional heat flow and modulus-of-continuity checks
    surfaces         surfaces of revolution: spectra and diameter bounds
    suites           named verification suites used by the CLI
    cli              command line entry point
"""

from .bounds import (
    BoundResult,
    ComparisonReport,
    explicit_bound_table,
    kahler_dirichlet_bound,
    kahler_neumann_bound,
    lichnerowicz_comparison,
    monotonicity_scan,
    riemannian_dirichlet_bound,
    riemannian_neumann_bound,
)
from .coefficients import CurvatureParams
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "ComparisonReport",
    "CurvatureParams",
    "explicit_bound_table",
    "kahler_dirichlet_bound",
    "kahler_neumann_bound",
    "lichnerowicz_comparison",
    "monotonicity_scan",
    "riemannian_dirichlet_bound",
    "riemannian_neumann_bound",
    "run_suite",
]
