"""Progressive-iterative cubic B-spline interpolation.

Fit an interpolating cubic B-spline curve through ordered points by
stationary iterations on the banded collocation system, optionally
accelerated by a bidiagonal preconditioner that keeps every sweep O(n).
"""

from .banded import BandedMatrix, LinearOperator, spectral_radius
from .bspline import (
    basis_eval,
    basis_nonzero,
    build_knots,
    curve_eval,
    curve_sample,
    parameterize,
)
from .collocation import (
    CollocationSystem,
    PreconditionedSystem,
    apply_Q,
    assemble_collocation,
    assemble_QB_closed,
    assemble_S,
)
from .errors import NotConverged, PiaSplineError
from .estimator import BSplineInterpolator
from .solvers import (
    IterationTrace,
    MethodConfig,
    SolveResult,
    contraction_rate,
    iteration_spectral_radius,
    optimal_omega_sor,
    optimal_omega_weighted,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "BandedMatrix",
    "LinearOperator",
    "spectral_radius",
    "basis_eval",
    "basis_nonzero",
    "build_knots",
    "curve_eval",
    "curve_sample",
    "parameterize",
    "CollocationSystem",
    "PreconditionedSystem",
    "apply_Q",
    "assemble_collocation",
    "assemble_QB_closed",
    "assemble_S",
    "NotConverged",
    "PiaSplineError",
    "BSplineInterpolator",
    "IterationTrace",
    "MethodConfig",
    "SolveResult",
    "contraction_rate",
    "iteration_spectral_radius",
    "optimal_omega_sor",
    "optimal_omega_weighted",
    "solve",
    "__version__",
]
