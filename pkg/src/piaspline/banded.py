"""Banded matrices and the small linear-algebra toolbox built on them.

Storage follows the LAPACK/scipy diagonal-ordered convention: for a matrix
with ``lower`` subdiagonals and ``upper`` superdiagonals,

    data[upper + i - j, j] = A[i, j]   for  -upper <= i - j <= lower,

so each stored row of ``data`` is one diagonal, indexed by column.
"""

import numpy as np

from .errors import (
    IndexOutOfRange,
    OutOfBandWrite,
    PowerIterationStalled,
    SizeTooLargeForDense,
    ZeroDiagonal,
)

DENSE_EIG_LIMIT = 2500


class BandedMatrix:
    """Square banded matrix with explicit bandwidths.

    :param n: matrix order.
    :param lower: number of subdiagonals kept.
    :param upper: number of superdiagonals kept.
    :param data: optional (lower + upper + 1, n) storage to adopt.
    """

    def __init__(self, n, lower, upper, data=None):
        if n < 1:
            raise ValueError(f"matrix order must be positive, got {n}")
        if lower < 0 or upper < 0 or lower > n - 1 or upper > n - 1:
            raise ValueError(f"bandwidths ({lower}, {upper}) invalid for n={n}")
        self.n = int(n)
        self.lower = int(lower)
        self.upper = int(upper)
        if data is None:
            data = np.zeros((lower + upper + 1, n))
        else:
            data = np.asarray(data, dtype=float)
            if data.shape != (lower + upper + 1, n):
                raise ValueError(
                    f"storage shape {data.shape} does not match "
                    f"bandwidths ({lower}, {upper}) and n={n}"
                )
        self.data = data

    # ------------------------------------------------------------ construction

    @classmethod
    def identity(cls, n):
        out = cls(n, 0, 0)
        out.data[0] = 1.0
        return out

    @classmethod
    def from_dense(cls, a, lower=None, upper=None):
        """Extract bands from a dense array (values outside are dropped
        only if explicitly narrower bandwidths are requested; by default
        the true bandwidths are detected)."""
        a = np.asarray(a, dtype=float)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError(f"expected a square array, got {a.shape}")
        if lower is None or upper is None:
            lo_found, up_found = 0, 0
            for off in range(1, n):
                if np.any(np.diag(a, -off)):
                    lo_found = off
                if np.any(np.diag(a, off)):
                    up_found = off
            lower = lo_found if lower is None else lower
            upper = up_found if upper is None else upper
        out = cls(n, lower, upper)
        for off in range(-lower, upper + 1):
            d = np.diag(a, off)
            if off >= 0:
                out.data[upper - off, off : off + d.size] = d
            else:
                out.data[upper - off, : d.size] = d
        return out

    def copy(self):
        return BandedMatrix(self.n, self.lower, self.upper, self.data.copy())

    # ----------------------------------------------------------- entry access

    def _check_indices(self, i, j):
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexOutOfRange(f"({i}, {j}) outside {self.n} x {self.n} matrix")

    def get(self, i, j):
        """Entry A[i, j] (0-based); zero outside the stored bands."""
        self._check_indices(i, j)
        off = j - i
        if -self.lower <= off <= self.upper:
            return float(self.data[self.upper - off, j])
        return 0.0

    def set(self, i, j, value):
        """Store A[i, j] (0-based).

        :raises OutOfBandWrite: if (i, j) lies outside the bands.
        """
        self._check_indices(i, j)
        off = j - i
        if not (-self.lower <= off <= self.upper):
            raise OutOfBandWrite(
                f"({i}, {j}) outside bands ({self.lower}, {self.upper})"
            )
        self.data[self.upper - off, j] = value

    def diagonal(self, offset=0):
        """Diagonal at the given offset (j - i) as a length n - |offset| array."""
        if not (-self.lower <= offset <= self.upper):
            return np.zeros(self.n - abs(offset))
        row = self.data[self.upper - offset]
        if offset >= 0:
            return row[offset : offset + self.n - offset].copy()
        return row[: self.n + offset].copy()

    def to_dense(self):
        a = np.zeros((self.n, self.n))
        for off in range(-self.lower, self.upper + 1):
            d = self.diagonal(off)
            a += np.diag(d, off)
        return a

    # -------------------------------------------------------------- arithmetic

    def matvec(self, x):
        """Product A @ x for x of shape (n,) or (n, d)."""
        x = np.asarray(x, dtype=float)
        if x.shape[0] != self.n:
            raise ValueError(f"operand length {x.shape[0]} != n={self.n}")
        y = np.zeros_like(x)
        n = self.n
        for off in range(-self.lower, self.upper + 1):
            i0 = max(0, -off)
            i1 = n - 1 - max(0, off)
            if i1 < i0:
                continue
            band = self.data[self.upper - off, i0 + off : i1 + off + 1]
            seg = x[i0 + off : i1 + off + 1]
            if x.ndim == 1:
                y[i0 : i1 + 1] += band * seg
            else:
                y[i0 : i1 + 1] += band[:, None] * seg
        return y

    def mul(self, other):
        """Banded product A @ B; bandwidths add (capped at n - 1)."""
        if not isinstance(other, BandedMatrix) or other.n != self.n:
            raise ValueError("mul needs a BandedMatrix of the same order")
        n = self.n
        lc = min(self.lower + other.lower, n - 1)
        uc = min(self.upper + other.upper, n - 1)
        out = BandedMatrix(n, lc, uc)
        for oa in range(-self.lower, self.upper + 1):
            for ob in range(-other.lower, other.upper + 1):
                o = oa + ob
                i0 = max(0, -oa, -o)
                i1 = n - 1 - max(0, oa, o)
                if i1 < i0:
                    continue
                sl_a = self.data[self.upper - oa, i0 + oa : i1 + oa + 1]
                sl_b = other.data[other.upper - ob, i0 + o : i1 + o + 1]
                out.data[uc - o, i0 + o : i1 + o + 1] += sl_a * sl_b
        return out

    def plus(self, other, sign=1.0):
        """A + sign * B with bandwidths widened as needed."""
        if not isinstance(other, BandedMatrix) or other.n != self.n:
            raise ValueError("plus needs a BandedMatrix of the same order")
        lc = max(self.lower, other.lower)
        uc = max(self.upper, other.upper)
        out = BandedMatrix(self.n, lc, uc)
        out.data[uc - self.upper : uc + self.lower + 1] += self.data
        out.data[uc - other.upper : uc + other.lower + 1] += sign * other.data
        return out

    def minus(self, other):
        return self.plus(other, sign=-1.0)

    def scaled(self, alpha):
        return BandedMatrix(self.n, self.lower, self.upper, self.data * alpha)


class LinearOperator:
    """Matrix-free operator: just an order and a matvec callable."""

    def __init__(self, n, matvec):
        self.n = n
        self._matvec = matvec

    def matvec(self, x):
        return self._matvec(x)


def comparison_matrix(a):
    """Comparison matrix: absolute diagonal, negated absolute off-diagonals."""
    out = a.copy()
    out.data = -np.abs(out.data)
    out.data[out.upper] = np.abs(a.data[out.upper])
    return out


def sign_conjugate(a):
    """Similarity transform J A J with J = diag(+1, -1, +1, ...).

    Entry (i, j) picks up the factor (-1)^(i+j), so diagonals at odd
    offsets flip sign. Applying the transform twice returns the input.
    """
    out = a.copy()
    for off in range(-a.lower, a.upper + 1):
        if off % 2 != 0:
            out.data[a.upper - off] *= -1.0
    return out


def forward_substitute(m, rhs):
    """Solve M y = rhs for lower-banded M (no superdiagonals).

    :param m: BandedMatrix with upper == 0.
    :param rhs: (n,) or (n, d) right-hand side.
    :raises ZeroDiagonal: if any diagonal entry of M is zero.
    """
    if m.upper != 0:
        raise ValueError("forward substitution needs a lower-banded matrix")
    rhs = np.asarray(rhs, dtype=float)
    n = m.n
    diag = m.data[0]
    if np.any(diag == 0.0):
        i = int(np.flatnonzero(diag == 0.0)[0])
        raise ZeroDiagonal(f"zero diagonal at row {i}")
    y = rhs.copy()
    ell = m.lower
    for i in range(n):
        k0 = max(0, i - ell)
        if k0 < i:
            # stored at data[i - k, k] for subdiagonal offset k - i
            coeffs = m.data[i - np.arange(k0, i), np.arange(k0, i)]
            if y.ndim == 1:
                y[i] -= coeffs @ y[k0:i]
            else:
                y[i] -= coeffs @ y[k0:i, :]
        y[i] /= diag[i]
    return y


def _as_dense(a):
    if isinstance(a, BandedMatrix):
        return a.to_dense()
    arr = np.asarray(a, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def _order_of(a):
    if isinstance(a, (BandedMatrix, LinearOperator)):
        return a.n
    return np.asarray(a).shape[0]


def _matvec_of(a):
    if isinstance(a, (BandedMatrix, LinearOperator)):
        return a.matvec
    arr = np.asarray(a, dtype=float)
    return lambda x: arr @ x


def eig_extrema_modulus(a):
    """Smallest and largest eigenvalue modulus, via the dense eigensolver.

    :returns: (min_modulus, max_modulus).
    :raises SizeTooLargeForDense: if the order exceeds DENSE_EIG_LIMIT.
    """
    n = _order_of(a)
    if n > DENSE_EIG_LIMIT:
        raise SizeTooLargeForDense(
            f"order {n} exceeds dense eigenvalue cap {DENSE_EIG_LIMIT}"
        )
    moduli = np.abs(np.linalg.eigvals(_as_dense(a)))
    return float(moduli.min()), float(moduli.max())


def spectral_radius(a, mode="dense_eig", max_it=5000, tol=1e-10):
    """Largest eigenvalue modulus of a square operator.

    :param a: BandedMatrix, dense ndarray, or LinearOperator.
    :param mode: 'dense_eig' (exact, order capped at DENSE_EIG_LIMIT) or
        'power_iteration' (matrix-free, deterministic alternating-sign
        start vector).
    :raises SizeTooLargeForDense: in dense mode above the cap.
    :raises PowerIterationStalled: if the modulus estimate fails to settle.
    """
    if mode == "dense_eig":
        if isinstance(a, LinearOperator):
            raise ValueError("dense_eig mode needs a materialized matrix")
        return eig_extrema_modulus(a)[1]
    if mode != "power_iteration":
        raise ValueError(f"unknown mode {mode!r}")

    n = _order_of(a)
    mv = _matvec_of(a)
    v = np.ones(n)
    v[1::2] = -1.0
    v /= np.linalg.norm(v)
    estimate = None
    for _ in range(max_it):
        w = mv(v)
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            return 0.0
        prev = estimate
        estimate = norm_w
        v = w / norm_w
        if prev is not None and abs(estimate - prev) <= tol * max(1.0, estimate):
            return float(estimate)
    residual = abs(estimate - prev) if prev is not None else float("inf")
    raise PowerIterationStalled(residual, max_it)
