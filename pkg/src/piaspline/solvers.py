"""Stationary iterations for the collocation system.

Every method is a splitting A = M - N of either the plain system B x = p or
the preconditioned one (Q B) x = Q p, iterated as

    x <- M^{-1} (N x + b).

Families:

* richardson          M = I
* weighted_richardson M = I / omega
* jacobi              M = D
* gauss_seidel        M = D - L   (lower triangle of A, actual values)
* sor                 M = D / omega - L

Convergence is always measured on the plain system: the iteration error is
the largest row 2-norm of p - B x, no matter which splitting produced x.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .banded import (
    DENSE_EIG_LIMIT,
    BandedMatrix,
    LinearOperator,
    eig_extrema_modulus,
    forward_substitute,
    spectral_radius,
)
from .collocation import apply_Q, assemble_collocation, assemble_QB_closed, split_parts
from .errors import (
    DegenerateSpectrum,
    InsufficientHistory,
    MissingOmega,
    NotConverged,
    OmegaOutOfRange,
    RhoOutOfRange,
    ZeroError,
)
from .validation import as_point_set

RICHARDSON = "richardson"
WEIGHTED_RICHARDSON = "weighted_richardson"
JACOBI = "jacobi"
GAUSS_SEIDEL = "gauss_seidel"
SOR = "sor"

FAMILIES = (RICHARDSON, WEIGHTED_RICHARDSON, JACOBI, GAUSS_SEIDEL, SOR)
WEIGHTED_FAMILIES = (WEIGHTED_RICHARDSON, SOR)

_FAMILY_ALIASES = {
    "pia": RICHARDSON,
    "richardson": RICHARDSON,
    "wpia": WEIGHTED_RICHARDSON,
    "weighted_richardson": WEIGHTED_RICHARDSON,
    "jacobi": JACOBI,
    "gs": GAUSS_SEIDEL,
    "gauss_seidel": GAUSS_SEIDEL,
    "sor": SOR,
}

_SHORT_NAMES = {
    RICHARDSON: "pia",
    WEIGHTED_RICHARDSON: "wpia",
    JACOBI: "jacobi",
    GAUSS_SEIDEL: "gs",
    SOR: "sor",
}


def canonical_family(name):
    """Map a method name or alias to its family identifier."""
    try:
        return _FAMILY_ALIASES[name]
    except KeyError:
        raise ValueError(
            f"unknown method family {name!r}; expected one of {sorted(_FAMILY_ALIASES)}"
        ) from None


@dataclass(frozen=True)
class MethodConfig:
    """Iteration method selection.

    :ivar family: one of FAMILIES (aliases like 'pia' and 'gs' accepted).
    :ivar preconditioned: iterate on Q B x = Q p instead of B x = p.
    :ivar omega: 'auto' to derive the weight from the spectrum, or an
        explicit value in (0, 2). Ignored by unweighted families.
    """

    family: str
    preconditioned: bool = False
    omega: object = "auto"

    def __post_init__(self):
        object.__setattr__(self, "family", canonical_family(self.family))
        if self.omega != "auto":
            w = float(self.omega)
            if not (0.0 < w < 2.0):
                raise OmegaOutOfRange(f"omega={w} outside (0, 2)")
            object.__setattr__(self, "omega", w)

    @property
    def weighted(self):
        return self.family in WEIGHTED_FAMILIES

    @property
    def label(self):
        """Short display name, e.g. 'pia', 'pgs', 'psor'."""
        prefix = "p" if self.preconditioned else ""
        return prefix + _SHORT_NAMES[self.family]


@dataclass
class IterationTrace:
    """Per-sweep convergence record.

    :ivar errors: iteration errors, errors[k] measured after k sweeps
        (errors[0] is the initial guess), so len(errors) = iterations + 1.
    :ivar omega_used: resolved weight, or None for unweighted families.
    :ivar contraction_estimate: last observed error ratio (nan if fewer
        than two finite-error entries exist).
    :ivar elapsed_seconds: wall time of the sweep loop.
    :ivar omega_seconds: wall time spent resolving the weight beforehand.
    """

    errors: np.ndarray
    iterations: int
    converged: bool
    omega_used: object = None
    contraction_estimate: float = math.nan
    elapsed_seconds: float = 0.0
    omega_seconds: float = 0.0


@dataclass
class SolveResult:
    """Fitted control polygon plus the iteration trace.

    :ivar control: (n + 2, d) control points, both ends duplicated.
    :ivar trace: IterationTrace of the run.
    :ivar knots: knot vector of the fitted spline.
    :ivar params: data parameters used.
    """

    control: np.ndarray
    trace: IterationTrace
    knots: np.ndarray = field(default=None, repr=False)
    params: np.ndarray = field(default=None, repr=False)


class Splitting:
    """Appliers for one splitting A = M - N.

    ``m`` is lower banded; ``n_mat`` shares A's bandwidths. A sweep is
    ``step(x, b)`` = M^{-1}(N x + b).
    """

    def __init__(self, m, n_mat, family, omega=None):
        self.m = m
        self.n_mat = n_mat
        self.family = family
        self.omega = omega

    def apply_m_inverse(self, v):
        if self.m.lower == 0:
            diag = self.m.data[0]
            v = np.asarray(v, dtype=float)
            return v / diag if v.ndim == 1 else v / diag[:, None]
        return forward_substitute(self.m, v)

    def apply_n(self, x):
        return self.n_mat.matvec(x)

    def step(self, x, b):
        return self.apply_m_inverse(self.apply_n(x) + b)


def splitting_parts(a, family, omega=None):
    """Build the splitting for one family over system matrix ``a``.

    :param a: BandedMatrix (the plain or preconditioned system matrix).
    :param family: family identifier or alias.
    :param omega: resolved weight, required by the weighted families.
    :raises MissingOmega: if a weighted family has no numeric omega.
    :raises OmegaOutOfRange: if omega is outside (0, 2).
    """
    family = canonical_family(family)
    if family in WEIGHTED_FAMILIES:
        if omega is None or omega == "auto":
            raise MissingOmega(f"{family} needs a resolved omega")
        omega = float(omega)
        if not (0.0 < omega < 2.0):
            raise OmegaOutOfRange(f"omega={omega} outside (0, 2)")

    n = a.n
    if family == RICHARDSON:
        m = BandedMatrix.identity(n)
    elif family == WEIGHTED_RICHARDSON:
        m = BandedMatrix.identity(n).scaled(1.0 / omega)
    elif family == JACOBI:
        m = BandedMatrix(n, 0, 0)
        m.data[0] = a.data[a.upper]
    else:
        # lower triangle of A with the diagonal, optionally relaxed
        m = BandedMatrix(n, a.lower, 0)
        m.data[0] = a.data[a.upper]
        if family == SOR:
            m.data[0] = m.data[0] / omega
        m.data[1:] = a.data[a.upper + 1 :]
    n_mat = m.plus(a, sign=-1.0)
    return Splitting(m, n_mat, family, omega)


def optimal_omega_weighted(a):
    """Weight minimizing the weighted-residual contraction: 2 over the sum
    of the extreme eigenvalue moduli of the system matrix.

    :returns: (omega, min_modulus, max_modulus).
    :raises DegenerateSpectrum: if both extreme moduli vanish.
    """
    lo, hi = eig_extrema_modulus(a)
    if lo + hi == 0.0:
        raise DegenerateSpectrum("eigenvalue moduli sum to zero")
    return 2.0 / (lo + hi), lo, hi


def optimal_omega_sor(rho_jacobi):
    """Classical optimal relaxation weight from the Jacobi spectral radius.

    :raises RhoOutOfRange: unless 0 <= rho_jacobi < 1.
    """
    if not (0.0 <= rho_jacobi < 1.0):
        raise RhoOutOfRange(f"jacobi spectral radius {rho_jacobi} outside [0, 1)")
    return 2.0 / (1.0 + math.sqrt(1.0 - rho_jacobi * rho_jacobi))


def _radius_mode(n, mode):
    if mode is not None and mode != "auto":
        return mode
    return "dense_eig" if n <= DENSE_EIG_LIMIT else "power_iteration"


def _splitting_radius(split, mode=None):
    """Spectral radius of the iteration matrix M^{-1} N of a splitting."""
    n = split.n_mat.n
    mode = _radius_mode(n, mode)
    if mode == "dense_eig":
        g = np.linalg.solve(split.m.to_dense(), split.n_mat.to_dense())
        return spectral_radius(g, mode="dense_eig")
    op = LinearOperator(n, lambda x: split.apply_m_inverse(split.apply_n(x)))
    return spectral_radius(op, mode="power_iteration")


def jacobi_spectral_radius(a, mode=None):
    """Spectral radius of the Jacobi iteration matrix of ``a``."""
    return _splitting_radius(splitting_parts(a, JACOBI), mode)


def resolve_omega(a, config, mode=None):
    """Resolve the weight for a config against system matrix ``a``.

    :returns: (omega or None, seconds spent deriving it).
    """
    if not config.weighted:
        return None, 0.0
    if config.omega != "auto":
        return float(config.omega), 0.0
    start = time.perf_counter()
    if config.family == WEIGHTED_RICHARDSON:
        omega = optimal_omega_weighted(a)[0]
    else:
        omega = optimal_omega_sor(jacobi_spectral_radius(a, mode))
    return omega, time.perf_counter() - start


def _assemble_for(points, config, params=None, scheme="chord"):
    """Common assembly: returns (plain system, iteration matrix, rhs b)."""
    csys = assemble_collocation(points, params=params, scheme=scheme)
    if config.preconditioned:
        psys = assemble_QB_closed(csys)
        return csys, psys.matrix, apply_Q(psys.s, csys.rhs)
    return csys, csys.matrix, csys.rhs


def iteration_error(csys, x):
    """Largest row 2-norm of p - B x (always on the plain system)."""
    residual = csys.rhs - csys.matrix.matvec(x)
    return float(np.max(np.linalg.norm(residual, axis=1)))


def solve(points, config, params=None, scheme="chord", tol=1e-8, max_iter=10000):
    """Run one stationary method to the requested interpolation error.

    :param points: (n, d) data points.
    :param config: MethodConfig.
    :param params: optional explicit parameters (else from ``scheme``).
    :param tol: iteration stops once the error is at or below this.
    :param max_iter: sweep budget.
    :returns: SolveResult with the (n + 2, d) control polygon.
    :raises NotConverged: when the budget runs out; the partial result,
        trace included, rides on the exception's ``result`` attribute.
    """
    pts = as_point_set(points)
    csys, a, b = _assemble_for(pts, config, params=params, scheme=scheme)
    omega, omega_seconds = resolve_omega(a, config)
    split = splitting_parts(a, config.family, omega)

    x = pts.copy()
    errors = [iteration_error(csys, x)]
    converged = errors[0] <= tol
    start = time.perf_counter()
    while not converged and len(errors) <= max_iter:
        x = split.step(x, b)
        errors.append(iteration_error(csys, x))
        converged = errors[-1] <= tol
    elapsed = time.perf_counter() - start

    errors = np.asarray(errors)
    contraction = math.nan
    if errors.size >= 2 and errors[-2] > 0.0:
        contraction = float(errors[-1] / errors[-2])
    trace = IterationTrace(
        errors=errors,
        iterations=errors.size - 1,
        converged=bool(converged),
        omega_used=omega,
        contraction_estimate=contraction,
        elapsed_seconds=elapsed,
        omega_seconds=omega_seconds,
    )
    control = np.vstack([x[:1], x, x[-1:]])
    result = SolveResult(
        control=control, trace=trace, knots=csys.knots, params=csys.params
    )
    if not converged:
        raise NotConverged(result, tol)
    return result


def iteration_spectral_radius(points, config, params=None, scheme="chord", mode=None):
    """Spectral radius of the iteration matrix a config induces on the data."""
    pts = as_point_set(points)
    _, a, _ = _assemble_for(pts, config, params=params, scheme=scheme)
    omega, _ = resolve_omega(a, config, mode)
    split = splitting_parts(a, config.family, omega)
    return _splitting_radius(split, mode)


def contraction_rate(trace, window=10):
    """Geometric mean of the last ``window`` error ratios of a trace.

    :raises InsufficientHistory: if fewer than window + 1 errors exist.
    :raises ZeroError: if a zero error lands inside the window.
    """
    errors = np.asarray(trace.errors, dtype=float)
    if errors.size < window + 1:
        raise InsufficientHistory(
            f"need {window + 1} errors for window={window}, have {errors.size}"
        )
    tail = errors[-(window + 1) :]
    if np.any(tail == 0.0):
        raise ZeroError("zero iteration error inside the window")
    ratios = tail[1:] / tail[:-1]
    return float(np.exp(np.mean(np.log(ratios))))
