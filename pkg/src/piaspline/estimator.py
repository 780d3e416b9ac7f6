"""Scikit-learn style estimator wrapping the iterative spline fit."""

import warnings

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import ConvergenceWarning, NotFittedError

from .bspline import curve_eval, curve_sample, domain
from .errors import NotConverged
from .solvers import MethodConfig, solve
from .validation import as_point_set


class BSplineInterpolator(BaseEstimator):
    """Cubic B-spline interpolation fitted by stationary iterations.

    fit(X) treats the rows of X as points along a curve, assigns them
    parameters, and iterates the selected method until the interpolation
    error drops below ``tol``. predict(T) evaluates the fitted curve at
    parameter values in the fitted domain (which is [0, 1] for the
    built-in parameterizations).

    :param method: iteration family ('pia', 'wpia', 'jacobi', 'gs', 'sor').
    :param preconditioned: iterate on the preconditioned system.
    :param omega: 'auto' or an explicit relaxation weight in (0, 2).
    :param param_scheme: 'chord' or 'uniform' parameter assignment.
    :param tol: target interpolation error (max row 2-norm).
    :param max_iter: sweep budget; hitting it fits the partial result and
        emits a ConvergenceWarning instead of raising.
    """

    def __init__(
        self,
        method="pia",
        preconditioned=False,
        omega="auto",
        param_scheme="chord",
        tol=1e-8,
        max_iter=10000,
    ):
        self.method = method
        self.preconditioned = preconditioned
        self.omega = omega
        self.param_scheme = param_scheme
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        """Fit the spline through the rows of X (in order)."""
        pts = as_point_set(X)
        config = MethodConfig(
            family=self.method,
            preconditioned=self.preconditioned,
            omega=self.omega,
        )
        try:
            result = solve(
                pts,
                config,
                scheme=self.param_scheme,
                tol=self.tol,
                max_iter=self.max_iter,
            )
        except NotConverged as exc:
            result = exc.result
            warnings.warn(
                f"spline fit stopped at error {result.trace.errors[-1]:.3e} "
                f"after {result.trace.iterations} sweeps (tol {self.tol:.1e})",
                ConvergenceWarning,
            )
        self.control_ = result.control
        self.knots_ = result.knots
        self.params_ = result.params
        self.trace_ = result.trace
        self.n_points_ = pts.shape[0]
        self.n_features_in_ = pts.shape[1]
        return self

    def _check_fitted(self):
        if not hasattr(self, "control_"):
            raise NotFittedError(
                "this BSplineInterpolator is not fitted yet; call fit first"
            )

    def predict(self, T):
        """Curve points at parameter values T (shape (m,) or (m, 1))."""
        self._check_fitted()
        t = np.asarray(T, dtype=float)
        if t.ndim == 2 and t.shape[1] == 1:
            t = t[:, 0]
        if t.ndim != 1:
            raise ValueError(f"expected parameters of shape (m,), got {t.shape}")
        out = np.empty((t.size, self.n_features_in_))
        for k, tval in enumerate(t):
            out[k] = curve_eval(self.knots_, self.control_, tval)
        return out

    def transform(self, T):
        """Alias of predict: map parameters to curve points."""
        return self.predict(T)

    def sample(self, m):
        """m curve points at equally spaced parameters over the domain."""
        self._check_fitted()
        return curve_sample(self.knots_, self.control_, m)

    @property
    def domain_(self):
        self._check_fitted()
        return domain(self.knots_)
