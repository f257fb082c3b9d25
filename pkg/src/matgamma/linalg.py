"""Dense complex matrix arithmetic, norms, linear solves and the complex
Schur decomposition.

Matrices are plain numpy arrays of dtype complex128. :func:`as_matrix`
is the single validation gate: every public operation in this package
accepts anything convertible to a square, finite complex matrix. All
operations are pure functions; nothing mutates its arguments.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    MalformedInputError,
    SingularMatrixError,
)

#: Unit roundoff of binary64 arithmetic.
UNIT_ROUNDOFF = 2.0 ** -53


def as_matrix(a) -> np.ndarray:
    """Validate and convert input to a square complex matrix.

    Accepts nested sequences, real or complex arrays, and scalars wrapped
    as 1x1 arrays are not implied: the input must already be 2-D.

    Raises MalformedInputError for non-square shapes or non-finite entries.
    """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise MalformedInputError(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise MalformedInputError("matrix entries must be finite")
    return m


def _as_rhs(b, n: int) -> np.ndarray:
    b = np.asarray(b, dtype=complex)
    if b.ndim != 2 or b.shape[0] != n:
        raise DimensionMismatchError(
            f"right-hand side shape {b.shape} does not match order {n}"
        )
    if not np.isfinite(b).all():
        raise MalformedInputError("right-hand side entries must be finite")
    return b


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def multiply(a, b) -> np.ndarray:
    """Matrix product A @ B with shape validation."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(
            f"cannot multiply {a.shape} by {b.shape}"
        )
    return a @ b


def solve(a, b) -> np.ndarray:
    """Solve A X = B by LU factorization with partial pivoting.

    A pivot below n*u*||A||_1 flags the matrix as singular to working
    precision; the threshold is scale-invariant.
    """
    a = as_matrix(a)
    n = a.shape[0]
    b = _as_rhs(b, n)
    with warnings.catch_warnings():
        # the exact-zero-pivot warning duplicates the exception below
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    tol = n * UNIT_ROUNDOFF * one_norm(a)
    small = np.abs(np.diag(lu)).min()
    if small <= tol:
        raise SingularMatrixError(
            f"matrix is singular to working precision (pivot {small:.3e}, "
            f"threshold {tol:.3e})"
        )
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def inverse(a) -> np.ndarray:
    """A^{-1} via solve(A, I)."""
    a = as_matrix(a)
    return solve(a, identity(a.shape[0]))


@dataclass(frozen=True)
class SchurForm:
    """Complex Schur decomposition A = U T U* with U unitary and T upper
    triangular. ``backtransform_error`` records ||A - UTU*||_F / ||A||_F
    at construction time."""

    U: np.ndarray
    T: np.ndarray
    backtransform_error: float

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.diag(self.T)


def schur(a) -> SchurForm:
    """Complex Schur decomposition.

    Delegates to LAPACK's QR iteration; non-convergence surfaces as
    ConvergenceError. The strictly lower triangle of T is zeroed exactly.
    """
    a = as_matrix(a)
    try:
        t, u = scipy.linalg.schur(a, output="complex")
    except scipy.linalg.LinAlgError as exc:
        raise ConvergenceError(f"QR iteration failed to converge: {exc}") from exc
    t = np.triu(t)
    nrm = frobenius_norm(a)
    err = 0.0
    if nrm > 0.0:
        err = frobenius_norm(a - u @ t @ u.conj().T) / nrm
    return SchurForm(U=u, T=t, backtransform_error=err)


def is_triangular(a: np.ndarray) -> bool:
    """True when the strictly lower triangle holds exact zeros."""
    return not np.tril(a, -1).any()


def eigenvalues(a) -> np.ndarray:
    """Eigenvalues of A from its Schur form (diagonal shortcut for inputs
    that are already exactly upper triangular)."""
    a = as_matrix(a)
    if is_triangular(a):
        return np.diag(a).copy()
    return schur(a).eigenvalues


def spectral_abscissa(a) -> float:
    """max Re(lambda) over the spectrum."""
    return float(eigenvalues(a).real.max())


def spectral_radius(a) -> float:
    """max |lambda| over the spectrum."""
    return float(np.abs(eigenvalues(a)).max())


# Norm reductions go through math.fsum: numpy's SIMD reductions pick
# their summation split from the buffer alignment, which varies with
# heap history, so repeated runs can disagree in the last ulp. Exactly
# rounded sums make every norm (and everything scaled by one) bit
# reproducible. The matrices here are small, so the cost is noise.


def _fsum_columns(mags: np.ndarray) -> float:
    return max(math.fsum(col) for col in mags.T.tolist())


def one_norm(a) -> float:
    a = np.asarray(a)
    return float(_fsum_columns(np.abs(a)))


def inf_norm(a) -> float:
    a = np.asarray(a)
    return float(_fsum_columns(np.abs(a).T))


def frobenius_norm(a) -> float:
    a = np.asarray(a, dtype=complex)
    parts = a.real.ravel().tolist() + a.imag.ravel().tolist()
    return math.sqrt(math.fsum(x * x for x in parts))


def two_norm(a, tol: float = 1e-12, max_iter: int = 1000) -> float:
    """Spectral norm as sqrt of the dominant eigenvalue of A*A.

    Power iteration from a fixed, deterministically perturbed start vector;
    falls back to the Frobenius upper bound if the Rayleigh quotient has not
    stagnated after ``max_iter`` sweeps.
    """
    a = as_matrix(a)
    n = a.shape[0]
    # mildly graded start so it is not orthogonal to the top singular
    # vector; shaped (n, 1) to keep the products on the gemm path,
    # whose packed kernels do not depend on input alignment
    v = 1.0 + np.arange(n) / (2.0 * n)
    v = v.astype(complex).reshape(n, 1)
    v /= frobenius_norm(v)
    lam = 0.0
    for _ in range(max_iter):
        w = a @ v
        lam_new = frobenius_norm(w) ** 2
        if lam_new == 0.0:
            return 0.0
        v = a.conj().T @ w
        nv = frobenius_norm(v)
        if nv == 0.0:
            return 0.0
        v = v / nv
        if abs(lam_new - lam) <= tol * lam_new:
            return math.sqrt(lam_new)
        lam = lam_new
    return frobenius_norm(a)


@dataclass(frozen=True)
class Norms:
    one_norm: float
    two_norm: float
    inf_norm: float
    fro_norm: float


def norms(a) -> Norms:
    """Induced 1-, 2-, inf-norms and the Frobenius norm."""
    a = as_matrix(a)
    return Norms(
        one_norm=one_norm(a),
        two_norm=two_norm(a),
        inf_norm=inf_norm(a),
        fro_norm=frobenius_norm(a),
    )
