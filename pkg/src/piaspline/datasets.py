"""Built-in example data sets.

One tabulated outline (the duck) and five parametric curves. Parametric
examples are sampled on the left-open grid

    t_j = a + (b - a) * j / n,   j = 1 .. n,

which excludes the left endpoint and includes the right one. For the
spherical cardioid this matters twice over: the printed z formula has a
pole at t = 0, and with even n the grid lands exactly on the curve's
interior speed cusp, which keeps the chord parameterization well graded
(odd n straddles the cusp and produces two nearly duplicate parameters).

Everything here is deterministic: repeated calls return bitwise-identical
arrays.
"""

from dataclasses import dataclass

import numpy as np

# Closed outline of a duck, 41 points (first and last coincide).
_DUCK = np.array([
    (-0.2356, 0.3978), (-0.2044, 0.4178), (-0.1711, 0.4289),
    (-0.1467, 0.4733), (-0.1022, 0.4978), (-0.0533, 0.4933),
    (-0.0200, 0.4667), (0.0, 0.4444), (0.0089, 0.4111),
    (-0.0044, 0.3667), (-0.0333, 0.3311), (-0.0778, 0.2756),
    (-0.1067, 0.2400), (-0.1178, 0.2000), (-0.0889, 0.1778),
    (-0.0511, 0.2156), (0.0156, 0.2533), (0.0844, 0.2778),
    (0.1467, 0.2956), (0.2111, 0.2911), (0.2556, 0.2644),
    (0.2578, 0.2222), (0.2267, 0.1911), (0.2667, 0.1800),
    (0.2622, 0.1467), (0.2222, 0.1111), (0.2467, 0.0933),
    (0.2267, 0.0556), (0.1800, 0.0289), (0.0200, 0.0244),
    (-0.1311, 0.0267), (-0.1711, 0.0711), (-0.2133, 0.1356),
    (-0.2133, 0.2067), (-0.1822, 0.2622), (-0.1311, 0.3178),
    (-0.1000, 0.3733), (-0.1533, 0.3733), (-0.2178, 0.3689),
    (-0.2311, 0.3822), (-0.2356, 0.3978),
])

DUCK = "duck"
BUTTERFLY = "butterfly"
CHRYSANTHEMUM = "chrysanthemum"
SPATIAL_CIRCULAR = "spatial_circular"
ROSE3D = "rose3d"
SPHERICAL_CARDIOID = "spherical_cardioid"

EXAMPLE_IDS = (
    DUCK,
    BUTTERFLY,
    CHRYSANTHEMUM,
    SPATIAL_CIRCULAR,
    ROSE3D,
    SPHERICAL_CARDIOID,
)


@dataclass(frozen=True)
class ExampleSpec:
    """Selection of one example data set.

    :ivar example_id: one of EXAMPLE_IDS.
    :ivar n: number of points to sample (fixed at 41 for the duck).
    :ivar t_range: parameter interval (a, b); None for tabulated data.
    :ivar alt_z: spherical cardioid only; use the bounded half-angle
        z component instead of the printed reciprocal-angle one.
    """

    example_id: str
    n: int
    t_range: tuple = None
    alt_z: bool = False


_DEFAULT_N = {
    DUCK: 41,
    BUTTERFLY: 150,
    CHRYSANTHEMUM: 500,
    SPATIAL_CIRCULAR: 300,
    ROSE3D: 200,
    SPHERICAL_CARDIOID: 1000,
}

_DEFAULT_RANGE = {
    DUCK: None,
    BUTTERFLY: (0.0, 2.0 * np.pi),
    CHRYSANTHEMUM: (0.0, 21.0 * np.pi),
    SPATIAL_CIRCULAR: (-7.0 * np.pi, 7.0 * np.pi),
    ROSE3D: (-2.0 * np.pi, 2.0 * np.pi),
    SPHERICAL_CARDIOID: (0.0, 4.0 * np.pi),
}


def example_spec(example_id, n=None, t_range=None, alt_z=False):
    """Build an ExampleSpec with per-example defaults filled in."""
    if example_id not in EXAMPLE_IDS:
        raise ValueError(
            f"unknown example {example_id!r}; expected one of {EXAMPLE_IDS}"
        )
    if n is None:
        n = _DEFAULT_N[example_id]
    if t_range is None:
        t_range = _DEFAULT_RANGE[example_id]
    if example_id == DUCK and n != 41:
        raise ValueError("the duck outline is tabulated with exactly 41 points")
    if n < 4:
        raise ValueError(f"need at least 4 points, got n={n}")
    return ExampleSpec(example_id=example_id, n=int(n), t_range=t_range, alt_z=alt_z)


def duck_points():
    """The 41-point duck outline (closed: first row equals last row)."""
    return _DUCK.copy()


def curve_point(example_id, t, alt_z=False):
    """Evaluate a parametric example's formula at parameter value(s) t.

    :param t: scalar or array of parameter values.
    :returns: (d,) point for scalar t, else (len(t), d) array.
    :raises ValueError: for the duck (tabulated, no formula).
    """
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    if example_id == BUTTERFLY:
        r = (np.sin(t) + np.sin(3.5 * t) ** 3) / 1000.0
        pts = np.stack([r * np.cos(t), r * np.sin(t)], axis=1)
    elif example_id == CHRYSANTHEMUM:
        r = (
            5.0 * (1.0 + np.sin(11.0 * t / 5.0))
            - 4.0 * np.sin(17.0 * t / 3.0) ** 4 * np.sin(2.0 * np.cos(3.0 * t) - 28.0 * t) ** 8
        ) / 50.0
        pts = np.stack([r * np.cos(t), r * np.sin(t)], axis=1)
    elif example_id == SPATIAL_CIRCULAR:
        ring = 4.0 + np.sin(20.0 * t)
        pts = np.stack([ring * np.cos(t), ring * np.sin(t), np.cos(20.0 * t)], axis=1)
    elif example_id == ROSE3D:
        petal = np.sin(3.0 * t)
        pts = np.stack([petal * np.cos(t), petal * np.sin(t), t], axis=1)
    elif example_id == SPHERICAL_CARDIOID:
        x = 2.0 * np.cos(t) - np.cos(2.0 * t)
        y = 2.0 * np.sin(t) - np.sin(2.0 * t)
        if alt_z:
            z = np.sqrt(8.0) * np.cos(t / 2.0)
        else:
            z = np.sqrt(8.0) * np.cos(2.0 / t)
        pts = np.stack([x, y, z], axis=1)
    elif example_id == DUCK:
        raise ValueError("the duck outline is tabulated; it has no formula")
    else:
        raise ValueError(f"unknown example {example_id!r}")
    return pts[0] if scalar else pts


def sample_curve(spec):
    """Materialize an example's points.

    Tabulated examples return their table; parametric ones are evaluated
    on the left-open grid over their parameter range.
    """
    if spec.example_id == DUCK:
        return duck_points()
    a, b = spec.t_range
    j = np.arange(1, spec.n + 1, dtype=float)
    t = a + (b - a) * j / spec.n
    return curve_point(spec.example_id, t, alt_z=spec.alt_z)
