"""Cubic B-spline basis, knots, and curve evaluation.

Conventions used throughout the package:

* n data points with parameters t_1 < ... < t_n, normalized to [0, 1].
* Clamped knot vector of length n + 6: the first parameter repeated four
  times, the interior parameters, the last parameter repeated four times.
* n + 2 cubic basis functions, indexed i = -2 .. n-1 (signed indexing, so
  basis i peaks near parameter t_{i+2}); array position is i + 2.
* The basis is right-continuous except at the right end of the domain,
  where the left limit is taken so the last basis function reaches 1.
"""

import numpy as np

from .errors import IndexOutOfRange, ParameterOutOfDomain
from .validation import as_point_set, check_no_duplicate_neighbors, check_params

DEGREE = 3

CHORD = "chord"
UNIFORM = "uniform"
_SCHEME_ALIASES = {
    "chord": CHORD,
    "chord_length": CHORD,
    "uniform": UNIFORM,
}


def canonical_scheme(scheme):
    """Normalize a parameterization scheme name ('chord' or 'uniform')."""
    try:
        return _SCHEME_ALIASES[scheme]
    except KeyError:
        raise ValueError(
            f"unknown parameterization scheme {scheme!r}; "
            f"expected one of {sorted(set(_SCHEME_ALIASES))}"
        ) from None


def parameterize(points, scheme=CHORD):
    """Assign parameters in [0, 1] to data points.

    :param points: (n, d) array-like, d in {2, 3}.
    :param scheme: 'chord' (cumulative chord length, the default) or
        'uniform' (equally spaced).
    :returns: (n,) float array, strictly increasing, t[0] = 0, t[-1] = 1.
    :raises ConsecutiveDuplicatePoints: for the chord scheme when two
        adjacent points coincide.
    """
    pts = as_point_set(points)
    scheme = canonical_scheme(scheme)
    n = pts.shape[0]
    if scheme == UNIFORM:
        return np.linspace(0.0, 1.0, n)
    check_no_duplicate_neighbors(pts)
    chords = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    t = np.empty(n)
    t[0] = 0.0
    np.cumsum(chords, out=t[1:])
    t[1:] /= t[-1]
    t[-1] = 1.0
    return t


def build_knots(params):
    """Build the clamped cubic knot vector for the given parameters.

    :param params: (n,) strictly increasing parameter values.
    :returns: (n + 6,) knot array with quadruple end knots.
    """
    t = check_params(params)
    if t.size < 2:
        raise ValueError("need at least two parameters")
    return np.concatenate(([t[0]] * DEGREE, t, [t[-1]] * DEGREE))


def n_points(knots):
    """Number of data parameters encoded in a knot vector."""
    return len(knots) - 2 * DEGREE


def domain(knots):
    """The parameter interval [t_1, t_n] covered by the knot vector."""
    return float(knots[DEGREE]), float(knots[-DEGREE - 1])


def _check_domain(knots, tval):
    lo, hi = domain(knots)
    if not (lo <= tval <= hi):
        raise ParameterOutOfDomain(f"t={tval!r} outside [{lo!r}, {hi!r}]")


def _find_interval(knots, tval):
    """Index j (0-based, in 0..n-2) of the data interval containing tval.

    The right endpoint maps to the last interval, giving the left-limit
    convention there.
    """
    n = n_points(knots)
    t = knots[DEGREE : DEGREE + n]
    j = int(np.searchsorted(t, tval, side="right")) - 1
    return min(max(j, 0), n - 2)


def _deg0(knots, p, tval, hi):
    """Degree-zero basis at array position p (half-open spans)."""
    if tval == hi:
        return 1.0 if knots[p] < tval == knots[p + 1] else 0.0
    return 1.0 if knots[p] <= tval < knots[p + 1] else 0.0


def _cox_de_boor(knots, p, k, tval, hi):
    """Recursive basis value N of degree k at array position p.

    Vanishing denominators follow the 0/0 := 0 convention.
    """
    if k == 0:
        return _deg0(knots, p, tval, hi)
    total = 0.0
    left_den = knots[p + k] - knots[p]
    if left_den != 0.0:
        total += (tval - knots[p]) / left_den * _cox_de_boor(knots, p, k - 1, tval, hi)
    right_den = knots[p + k + 1] - knots[p + 1]
    if right_den != 0.0:
        total += (
            (knots[p + k + 1] - tval)
            / right_den
            * _cox_de_boor(knots, p + 1, k - 1, tval, hi)
        )
    return total


def basis_eval(knots, i, tval):
    """Value of cubic basis function i at parameter tval.

    :param knots: clamped knot vector from :func:`build_knots`.
    :param i: signed basis index in -2 .. n-1.
    :param tval: parameter inside the knot domain.
    :raises IndexOutOfRange: if i is outside -2 .. n-1.
    :raises ParameterOutOfDomain: if tval is outside [t_1, t_n].
    """
    n = n_points(knots)
    if not (-2 <= i <= n - 1):
        raise IndexOutOfRange(f"basis index {i} outside [-2, {n - 1}]")
    _check_domain(knots, tval)
    _, hi = domain(knots)
    return _cox_de_boor(knots, i + 2, DEGREE, tval, hi)


def basis_nonzero(knots, tval):
    """All (up to four) nonzero cubic basis values at tval.

    Returns ``(first, values)`` where ``values`` has length 4 and
    ``values[k]`` is basis function ``first + k`` evaluated at tval,
    with ``first`` in the signed indexing. Every basis function outside
    that range vanishes at tval.
    """
    _check_domain(knots, tval)
    j = _find_interval(knots, tval)
    span = j + DEGREE  # knots[span] <= tval < knots[span + 1] (left limit at hi)
    values = np.zeros(DEGREE + 1)
    values[0] = 1.0
    left = np.empty(DEGREE)
    right = np.empty(DEGREE)
    for d in range(1, DEGREE + 1):
        left[d - 1] = tval - knots[span + 1 - d]
        right[d - 1] = knots[span + d] - tval
        saved = 0.0
        for r in range(d):
            den = right[r] + left[d - 1 - r]
            temp = values[r] / den if den != 0.0 else 0.0
            values[r] = saved + right[r] * temp
            saved = left[d - 1 - r] * temp
        values[d] = saved
    first_position = span - DEGREE
    return first_position - 2, values


def curve_eval(knots, control, tval):
    """Point on the spline at parameter tval.

    :param knots: clamped knot vector.
    :param control: (n + 2, d) control polygon (rows follow basis positions).
    :returns: (d,) point.
    """
    control = np.asarray(control, dtype=float)
    first, values = basis_nonzero(knots, tval)
    pos = first + 2
    return values @ control[pos : pos + DEGREE + 1]


def curve_sample(knots, control, m):
    """Sample the spline at m parameters equally spaced over the domain.

    :param m: number of samples, at least 2 (endpoints included).
    :returns: (m, d) array of curve points.
    """
    if m < 2:
        raise ValueError(f"need at least 2 samples, got {m}")
    control = np.asarray(control, dtype=float)
    lo, hi = domain(knots)
    ts = np.linspace(lo, hi, m)
    out = np.empty((m, control.shape[1]))
    for k, tval in enumerate(ts):
        out[k] = curve_eval(knots, control, tval)
    return out
