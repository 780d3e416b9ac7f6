"""Input validation helpers.

Small, reusable checks used by the library entry points and the estimator.
Each helper either returns a normalized numpy array or raises one of the
package error types.
"""

import numpy as np

from .errors import ConsecutiveDuplicatePoints, MixedDimensions, TooFewPoints

MIN_POINTS = 4


def as_point_set(points, *, min_points=MIN_POINTS):
    """Coerce to a float array of shape (n, d) with d in {2, 3}.

    :param points: array-like of n points.
    :param min_points: minimum number of rows accepted.
    :raises TooFewPoints: if n < min_points.
    :raises MixedDimensions: if rows have inconsistent lengths.
    :raises ValueError: if d is not 2 or 3, or entries are not finite.
    """
    try:
        arr = np.asarray(points, dtype=float)
    except (ValueError, TypeError) as exc:
        raise MixedDimensions(f"ragged or non-numeric point data: {exc}") from None
    if arr.ndim != 2:
        if arr.ndim == 1 and arr.dtype == object:
            raise MixedDimensions("rows have inconsistent lengths")
        raise ValueError(f"expected a 2-D array of points, got shape {arr.shape}")
    n, d = arr.shape
    if d not in (2, 3):
        raise ValueError(f"points must be 2-D or 3-D, got d={d}")
    if n < min_points:
        raise TooFewPoints(f"need at least {min_points} points, got {n}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("points contain non-finite values")
    return arr


def check_no_duplicate_neighbors(points):
    """Raise ConsecutiveDuplicatePoints if any adjacent rows coincide.

    :param points: (n, d) float array.
    """
    same = np.all(points[1:] == points[:-1], axis=1)
    if np.any(same):
        i = int(np.flatnonzero(same)[0])
        raise ConsecutiveDuplicatePoints(
            f"points {i} and {i + 1} coincide; chord parameterization degenerates"
        )


def check_params(params, n=None):
    """Validate a parameter vector: 1-D, strictly increasing, finite.

    :param params: array-like of parameter values.
    :param n: expected length, or None to skip the length check.
    :returns: the parameters as a float ndarray.
    """
    t = np.asarray(params, dtype=float)
    if t.ndim != 1:
        raise ValueError(f"parameters must be 1-D, got shape {t.shape}")
    if n is not None and t.size != n:
        raise ValueError(f"expected {n} parameters, got {t.size}")
    if not np.all(np.isfinite(t)):
        raise ValueError("parameters contain non-finite values")
    if np.any(np.diff(t) <= 0):
        raise ValueError("parameters must be strictly increasing")
    return t


def check_control(control, n, d):
    """Validate a control polygon: shape (n + 2, d).

    :param control: array-like control points.
    :param n: number of interpolation points.
    :param d: spatial dimension.
    """
    c = np.asarray(control, dtype=float)
    if c.shape != (n + 2, d):
        raise ValueError(f"control polygon must have shape {(n + 2, d)}, got {c.shape}")
    return c
