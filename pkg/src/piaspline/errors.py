"""Exception types shared across the package.

Everything raised on purpose derives from :class:`PiaSplineError` so callers
(and the CLI) can catch one base class for input/usage problems.
"""


class PiaSplineError(Exception):
    """Base class for all errors raised by piaspline."""


# ---------------------------------------------------------------- input data


class TooFewPoints(PiaSplineError):
    """Fewer data points than the cubic scheme needs (minimum is 4)."""


class ConsecutiveDuplicatePoints(PiaSplineError):
    """Two consecutive data points coincide, so chord lengths degenerate."""


class MixedDimensions(PiaSplineError):
    """Point records disagree on dimension (some 2-D, some 3-D)."""


class EmptyFile(PiaSplineError):
    """A points file contained no data rows."""


class MalformedLine(PiaSplineError):
    """A points file line could not be parsed.

    :param lineno: 1-based line number in the file.
    :param text: the offending line.
    """

    def __init__(self, lineno, text, reason="malformed line"):
        self.lineno = lineno
        self.text = text
        super().__init__(f"line {lineno}: {reason}: {text!r}")


# ------------------------------------------------------------ basis / domain


class ParameterOutOfDomain(PiaSplineError):
    """Evaluation parameter lies outside the knot domain."""


class IndexOutOfRange(PiaSplineError):
    """Basis-function or matrix index outside its valid range."""


# ------------------------------------------------------------- banded linalg


class OutOfBandWrite(PiaSplineError):
    """Attempt to store a value outside a banded matrix's bandwidths."""


class ZeroDiagonal(PiaSplineError):
    """Forward substitution hit a zero diagonal entry."""


class PowerIterationStalled(PiaSplineError):
    """Power iteration did not settle within its iteration budget."""

    def __init__(self, residual, max_it):
        self.residual = residual
        self.max_it = max_it
        super().__init__(
            f"power iteration residual {residual:.3e} after {max_it} steps"
        )


class SizeTooLargeForDense(PiaSplineError):
    """Dense eigenvalue routine refused: matrix order exceeds the cap."""


# ---------------------------------------------------------------- assembly


class NonpositiveDiagonal(PiaSplineError):
    """Preconditioned system has a diagonal entry at or below zero."""


# ----------------------------------------------------------------- solvers


class MissingOmega(PiaSplineError):
    """A weighted family was asked to build its splitting without a resolved omega."""


class OmegaOutOfRange(PiaSplineError):
    """Relaxation weight outside the open interval (0, 2)."""


class DegenerateSpectrum(PiaSplineError):
    """Extreme eigenvalue moduli sum to zero; no weight can be derived."""


class RhoOutOfRange(PiaSplineError):
    """Jacobi spectral radius outside [0, 1); the weight formula needs rho < 1."""


class NotConverged(PiaSplineError):
    """Iteration budget exhausted before the error dropped below tolerance.

    The partial :class:`~piaspline.solvers.SolveResult` (with its full trace)
    is attached as ``result``.
    """

    def __init__(self, result, tol):
        self.result = result
        self.tol = tol
        t = result.trace
        super().__init__(
            f"not converged: error {t.errors[-1]:.3e} > tol {tol:.3e} "
            f"after {t.iterations} sweeps"
        )


class InsufficientHistory(PiaSplineError):
    """Trace too short for the requested contraction window."""


class ZeroError(PiaSplineError):
    """A zero iteration error inside the window; no ratio can be formed."""
