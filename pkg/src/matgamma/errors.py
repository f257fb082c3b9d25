"""Exception taxonomy shared by the library, the CLI and the HTTP service.

Every failure path in the package raises a :class:`MatGammaError` subclass.
The CLI maps each subclass to exactly one process exit code (see
:data:`EXIT_CODES`); the HTTP service maps the same taxonomy to status codes.
"""

from __future__ import annotations


class MatGammaError(Exception):
    """Base class for all errors raised by this package."""


class MalformedInputError(MatGammaError):
    """Input file, payload or argument could not be parsed or validated."""


class DimensionMismatchError(MatGammaError):
    """Operands have incompatible shapes."""


class PoleProximityError(MatGammaError):
    """An eigenvalue lies within the guard distance of a gamma pole (Z <= 0)."""


class ConvergenceError(MatGammaError):
    """An iterative kernel (QR sweeps, Lentz fraction, series) did not converge."""


class PreconditionError(MatGammaError):
    """A documented mathematical precondition of an operation is violated."""


class SingularMatrixError(PreconditionError):
    """Matrix is singular to working precision (pivot below threshold)."""


class NegativeRealAxisError(PreconditionError):
    """Principal logarithm requested for a spectrum touching the closed
    negative real axis."""


class SpectrumSplitError(PreconditionError):
    """Backend formula applied to a spectrum mixing half-planes, or touching
    the imaginary axis; such matrices must go through the Schur-Parlett
    driver."""


class SylvesterCollisionError(PreconditionError):
    """Sylvester equation is (numerically) singular: the two coefficient
    spectra are not separated."""


class OverflowRangeError(PreconditionError):
    """Result magnitude exceeds the representable range of binary64."""


class OracleRefusedError(MatGammaError):
    """The eigendecomposition reference oracle declined the input
    (defective or too ill-conditioned to trust)."""


# Process exit codes used by the CLI, one per documented failure class.
EXIT_OK = 0
EXIT_MALFORMED = 2
EXIT_POLE = 3
EXIT_NO_CONVERGENCE = 4
EXIT_PRECONDITION = 5

EXIT_CODES = {
    MalformedInputError: EXIT_MALFORMED,
    DimensionMismatchError: EXIT_MALFORMED,
    PoleProximityError: EXIT_POLE,
    ConvergenceError: EXIT_NO_CONVERGENCE,
    PreconditionError: EXIT_PRECONDITION,
}


def exit_code_for(exc: BaseException) -> int:
    """Exit code for an exception, most specific class first."""
    for klass in type(exc).__mro__:
        if klass in EXIT_CODES:
            return EXIT_CODES[klass]
    return 1
