"""Primary matrix functions: exponential, principal logarithm, powers
and the matrix sine.

The exponential uses scaling and squaring with a fixed degree 13 Pade
approximant; the logarithm uses inverse scaling and squaring on the
triangular Schur factor. Every scaling decision is driven by an exactly
rounded norm and the triangular kernels sum with compensated arithmetic,
so repeated evaluations of the same matrix are bit reproducible. The
module also adds the domain guards (principal branch, overflow) that
the gamma algorithms rely on.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    NegativeRealAxisError,
    OverflowRangeError,
    PreconditionError,
)
from .linalg import (
    as_matrix,
    eigenvalues,
    identity,
    is_triangular,
    one_norm,
    schur,
    solve,
)

#: Relative half-width of the strip around the real axis used when
#: testing whether an eigenvalue sits on the closed negative real axis.
AXIS_TOL = 1e-12

#: Largest 1-norm the degree 13 Pade approximant of exp accepts at full
#: accuracy; larger inputs are halved until they fit.
_EXP_THETA = 5.371920351148152

#: Numerator coefficients of the degree 13 diagonal Pade approximant of
#: exp. The denominator uses the same coefficients with alternate signs.
_EXP_PADE = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)

#: Degree 7 diagonal Pade approximant of log(1 + y) in partial fraction
#: form: 7-point Gauss-Legendre nodes and weights on [0, 1]. Degree 7 is
#: accurate to unit roundoff for ||Y|| up to 0.2879; square roots bring
#: the argument under the stricter _LOG_SCALE_LIMIT first.
_LOG_NODES = (
    0.025446043828620757,
    0.12923440720030277,
    0.2970774243113014,
    0.5,
    0.7029225756886985,
    0.8707655927996972,
    0.9745539561713792,
)
_LOG_WEIGHTS = (
    0.06474248308443532,
    0.1398526957446383,
    0.19091502525255916,
    0.20897959183673448,
    0.19091502525255916,
    0.1398526957446383,
    0.06474248308443532,
)
_LOG_SCALE_LIMIT = 0.25
_LOG_MAX_SQRTS = 80


def _exp_pade(x: np.ndarray) -> np.ndarray:
    b = _EXP_PADE
    eye = identity(x.shape[0])
    x2 = x @ x
    x4 = x2 @ x2
    x6 = x2 @ x4
    u = x @ (
        x6 @ (b[13] * x6 + b[11] * x4 + b[9] * x2)
        + b[7] * x6
        + b[5] * x4
        + b[3] * x2
        + b[1] * eye
    )
    v = (
        x6 @ (b[12] * x6 + b[10] * x4 + b[8] * x2)
        + b[6] * x6
        + b[4] * x4
        + b[2] * x2
        + b[0] * eye
    )
    return solve(v - u, v + u)


def expm(a) -> np.ndarray:
    """Matrix exponential.

    Raises OverflowRangeError when the result leaves binary64 range,
    which for e^A happens once the spectral abscissa nears log(realmax)
    ~ 709.78.
    """
    a = as_matrix(a)
    nrm = one_norm(a)
    squarings = 0
    if nrm > _EXP_THETA:
        squarings = int(math.ceil(math.log2(nrm / _EXP_THETA)))
    with np.errstate(over="ignore", invalid="ignore"):
        e = _exp_pade(a / 2.0**squarings)
        for _ in range(squarings):
            e = e @ e
    if not np.isfinite(e).all():
        alpha = float(np.diag(a).real.max() + np.abs(np.tril(a, -1)).sum())
        raise OverflowRangeError(
            "matrix exponential overflowed binary64 "
            f"(spectral abscissa is roughly {alpha:.3g})"
        )
    return e


def _sqrtm_triu(t: np.ndarray) -> np.ndarray:
    """Principal square root of an upper triangular matrix by the
    superdiagonal recurrence, with exactly rounded inner sums."""
    n = t.shape[0]
    tl = t.tolist()
    r = [[0j] * n for _ in range(n)]
    for i in range(n):
        r[i][i] = cmath.sqrt(tl[i][i])
    for off in range(1, n):
        for i in range(n - off):
            j = i + off
            prods = [r[i][k] * r[k][j] for k in range(i + 1, j)]
            cross = complex(
                math.fsum(p.real for p in prods),
                math.fsum(p.imag for p in prods),
            )
            r[i][j] = (tl[i][j] - cross) / (r[i][i] + r[j][j])
    return np.array(r, dtype=complex)


def _pade_log_term(y: list, node: float, n: int) -> np.ndarray:
    """Solve (I + node Y) Z = Y by back substitution with exactly
    rounded sums; upper triangular Y keeps Z upper triangular."""
    scaled = [[node * v for v in row] for row in y]
    z = [[0j] * n for _ in range(n)]
    for col in range(n):
        for i in range(col, -1, -1):
            prods = [scaled[i][k] * z[k][col] for k in range(i + 1, col + 1)]
            cross = complex(
                math.fsum(p.real for p in prods),
                math.fsum(p.imag for p in prods),
            )
            z[i][col] = (y[i][col] - cross) / (1.0 + scaled[i][i])
    return np.array(z, dtype=complex)


def _log_superdiag(l1: complex, l2: complex, t12: complex) -> complex:
    """First superdiagonal entry of log [[l1, t12], [0, l2]]. The atanh
    form keeps the divided difference of the logarithm accurate when the
    eigenvalues are close but distinct."""
    if l1 == l2:
        return t12 / l1
    if abs(l2 - l1) > 0.5 * abs(l2 + l1):
        return t12 * (cmath.log(l2) - cmath.log(l1)) / (l2 - l1)
    z = (l2 - l1) / (l2 + l1)
    unwind = math.ceil(
        ((cmath.log(l2) - cmath.log(l1)).imag - math.pi) / (2.0 * math.pi)
    )
    return t12 * 2.0 * (cmath.atanh(z) + 1j * (math.pi * unwind)) / (l2 - l1)


def _logm_triu(t: np.ndarray) -> np.ndarray:
    """Logarithm of an upper triangular matrix: repeated square roots
    until ||T^(1/2^s) - I||_1 fits the Pade window, the partial fraction
    evaluation, then exact recomputation of the two leading diagonals."""
    n = t.shape[0]
    x = np.array(t, dtype=complex)
    eye = identity(n)
    sqrts = 0
    while one_norm(x - eye) > _LOG_SCALE_LIMIT:
        if sqrts >= _LOG_MAX_SQRTS:
            raise ConvergenceError(
                "matrix logarithm: square root scaling did not contract "
                f"within {_LOG_MAX_SQRTS} steps"
            )
        x = _sqrtm_triu(x)
        sqrts += 1
    y = (x - eye).tolist()
    total = np.zeros((n, n), dtype=complex)
    for node, weight in zip(_LOG_NODES, _LOG_WEIGHTS):
        total = total + weight * _pade_log_term(y, node, n)
    out = (2.0**sqrts) * total
    diag = np.diag(t)
    for i in range(n):
        out[i, i] = cmath.log(complex(diag[i]))
    for i in range(n - 1):
        out[i, i + 1] = _log_superdiag(
            complex(diag[i]), complex(diag[i + 1]), complex(t[i, i + 1])
        )
    return out


def logm(a) -> np.ndarray:
    """Principal matrix logarithm.

    The principal branch requires the spectrum to avoid the closed
    negative real axis; eigenvalues with Re <= 0 and |Im| within
    AXIS_TOL * (1 + |lambda|) are rejected.
    """
    a = as_matrix(a)
    for lam in eigenvalues(a):
        if lam.real <= 0.0 and abs(lam.imag) <= AXIS_TOL * (1.0 + abs(lam)):
            raise NegativeRealAxisError(
                f"eigenvalue {lam:.6g} lies on the closed negative real axis; "
                "the principal logarithm is undefined there"
            )
    if is_triangular(a):
        out = _logm_triu(a)
    else:
        form = schur(a)
        out = form.U @ _logm_triu(form.T) @ form.U.conj().T
    if not np.isfinite(out).all():
        raise NegativeRealAxisError(
            "matrix logarithm did not evaluate to a finite result"
        )
    return out


def power_scalar_matrix(t: float, m) -> np.ndarray:
    """t^M = exp(M log t) for a positive real scalar base t."""
    if not (isinstance(t, (int, float)) and math.isfinite(t)):
        raise PreconditionError("base must be a finite real scalar")
    if t <= 0.0:
        raise PreconditionError(f"base must be positive, got {t}")
    m = as_matrix(m)
    return expm(m * math.log(t))


def power_matrix_matrix(a, b) -> np.ndarray:
    """A^B = exp(log(A) B); inherits the principal-branch domain of logm."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"base and exponent orders differ: {a.shape} vs {b.shape}"
        )
    return expm(logm(a) @ b)


def sinm(a) -> np.ndarray:
    """Matrix sine via (e^{iA} - e^{-iA}) / 2i."""
    a = as_matrix(a)
    return (expm(1j * a) - expm(-1j * a)) / 2j


def cosm(a) -> np.ndarray:
    """Matrix cosine via (e^{iA} + e^{-iA}) / 2."""
    a = as_matrix(a)
    return (expm(1j * a) + expm(-1j * a)) / 2.0
