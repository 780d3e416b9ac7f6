"""Collocation system assembly and the bidiagonal preconditioner.

The interpolation conditions for a cubic spline through n points, with both
end control points duplicated, reduce to an n x n tridiagonal system

    B x = p,

where row 1 and row n of B are identity rows and every row is nonnegative
with unit sum. The preconditioner Q = I + S (S holds one superdiagonal) is
chosen so that Q B stays banded (one sub-, two superdiagonals) with a closed
form for every entry, assembled here directly from B's bands.

Splitting convention used throughout: a matrix A is written A = D - L - U
with D its diagonal and L, U the *negated* strict lower/upper triangles.
"""

from dataclasses import dataclass

import numpy as np

from .banded import BandedMatrix
from .bspline import basis_nonzero, build_knots, parameterize
from .errors import NonpositiveDiagonal
from .validation import as_point_set, check_params

DIAGONAL_FLOOR = 1e-14


@dataclass(frozen=True)
class CollocationSystem:
    """Tridiagonal interpolation system B x = p.

    :ivar matrix: B as a BandedMatrix with bandwidths (1, 1).
    :ivar knots: clamped knot vector.
    :ivar params: data parameters (the collocation sites).
    :ivar rhs: the data points, shape (n, d).
    """

    matrix: BandedMatrix
    knots: np.ndarray
    params: np.ndarray
    rhs: np.ndarray

    @property
    def n(self):
        return self.matrix.n


@dataclass(frozen=True)
class PreconditionedSystem:
    """Preconditioned system (Q B) x = Q p with its splitting parts.

    :ivar s: superdiagonal correction, Q = I + S.
    :ivar q: the preconditioner itself (unit diagonal, one superdiagonal).
    :ivar matrix: Q B with bandwidths (1, 2).
    :ivar diag_part: D with matrix == diag_part - lower_part - upper_part.
    :ivar lower_part: negated strict lower triangle of Q B.
    :ivar upper_part: negated strict upper triangle of Q B.
    :ivar base: the plain system this was built from.
    """

    s: BandedMatrix
    q: BandedMatrix
    matrix: BandedMatrix
    diag_part: BandedMatrix
    lower_part: BandedMatrix
    upper_part: BandedMatrix
    base: CollocationSystem

    @property
    def n(self):
        return self.matrix.n


def assemble_collocation(points, params=None, scheme="chord"):
    """Build the tridiagonal collocation system for the given data.

    :param points: (n, d) data points.
    :param params: optional explicit parameters; derived from ``scheme``
        when omitted.
    :param scheme: parameterization scheme used when params is None.
    """
    pts = as_point_set(points)
    n = pts.shape[0]
    if params is None:
        params = parameterize(pts, scheme)
    else:
        params = check_params(params, n)
    knots = build_knots(params)

    b = BandedMatrix(n, 1, 1)
    b.set(0, 0, 1.0)
    b.set(n - 1, n - 1, 1.0)
    for r in range(1, n - 1):
        first, vals = basis_nonzero(knots, params[r])
        pos = first + 2
        # collocation column j holds basis position j + 1; the fourth
        # triangle value sits on the basis just starting at this site and
        # is identically zero, keeping the matrix tridiagonal
        for k in range(3):
            b.set(r, pos + k - 1, vals[k])
    return CollocationSystem(matrix=b, knots=knots, params=params, rhs=pts)


def split_parts(a):
    """Split A into (D, L, U) with A = D - L - U (L, U negated triangles)."""
    n = a.n
    d = BandedMatrix(n, 0, 0)
    d.data[0] = a.data[a.upper]

    lo = BandedMatrix(n, max(a.lower, 1), 0)
    if a.lower:
        lo.data[1 : 1 + a.lower] = -a.data[a.upper + 1 :]

    up = BandedMatrix(n, 0, max(a.upper, 1))
    if a.upper:
        up.data[: a.upper] = -a.data[: a.upper]
    return d, lo, up


def assemble_S(system):
    """Superdiagonal correction S with S[i, i+1] = -B[i, i+1] (first row zero)."""
    b = system.matrix
    n = b.n
    s = BandedMatrix(n, 0, 1)
    sup = b.diagonal(1)
    sup[0] = 0.0
    s.data[0, 1:] = -sup
    return s


def apply_Q(s, v):
    """Apply the preconditioner Q = I + S to a vector or point stack."""
    v = np.asarray(v, dtype=float)
    return v + s.matvec(v)


def assemble_QB_closed(system):
    """Assemble Q B entrywise from B's bands (no matrix product).

    :raises NonpositiveDiagonal: if any diagonal entry of Q B falls at or
        below the positivity floor.
    """
    b = system.matrix
    n = b.n
    b_sub = b.diagonal(-1)  # b_sub[i] = B[i+1, i]
    b_diag = b.diagonal(0)
    b_sup = b.diagonal(1)  # b_sup[i] = B[i, i+1]

    qb = BandedMatrix(n, 1, 2)

    sub = b_sub.copy()  # rows 2..n-1 keep B's subdiagonal; row n's is 0 already
    qb.data[3, :-1] = sub

    diag = b_diag.copy()
    diag[1 : n - 2] -= b_sup[1 : n - 2] * b_sub[1 : n - 2]
    qb.data[2] = diag

    sup = np.zeros(n - 1)
    sup[1 : n - 2] = b_sup[1 : n - 2] * (1.0 - b_diag[2 : n - 1])
    qb.data[1, 1:] = sup

    supsup = np.zeros(n - 2)
    supsup[1 : n - 2] = -b_sup[1 : n - 2] * b_sup[2 : n - 1]
    qb.data[0, 2:] = supsup

    if diag.min() <= DIAGONAL_FLOOR:
        i = int(np.argmin(diag))
        raise NonpositiveDiagonal(
            f"diagonal entry {diag[i]:.3e} at row {i} is not safely positive"
        )

    s = assemble_S(system)
    q = BandedMatrix(n, 0, 1)
    q.data[0] = s.data[0]
    q.data[1] = 1.0

    d_part, l_part, u_part = split_parts(qb)
    return PreconditionedSystem(
        s=s,
        q=q,
        matrix=qb,
        diag_part=d_part,
        lower_part=l_part,
        upper_part=u_part,
        base=system,
    )


def q_inverse_dense(system):
    """Dense inverse of Q, built from the closed-form entry products.

    Row i of the inverse holds, above the diagonal, the running products
    of B's superdiagonal entries: inv[i, j] = prod(B[l, l+1], l=i..j-1).
    """
    b = system.base.matrix if isinstance(system, PreconditionedSystem) else system.matrix
    n = b.n
    b_sup = b.diagonal(1)
    inv = np.eye(n)
    for i in range(n - 1):
        inv[i, i + 1 :] = np.cumprod(b_sup[i : n - 1])
    return inv
