"""Reference gamma evaluation for benchmark comparisons.

Eigendecomposition through the Schur form plus a 50-digit scalar gamma.
Only comfortably diagonalizable matrices are accepted: the oracle
refuses rather than return an untrustworthy yardstick, and the
experiment runner falls back to cross-method consensus.
"""

from __future__ import annotations

import mpmath as mp
import numpy as np
import scipy.linalg

from ..errors import OracleRefusedError
from ..gamma_core import assert_pole_free
from ..linalg import as_matrix, frobenius_norm, schur

#: Refuse when the eigenvector basis is worse conditioned than this.
CONDITION_LIMIT = 1e6

#: Working precision (decimal digits) for the scalar reference values.
ORACLE_DPS = 50

#: Relative off-diagonal mass below which the Schur factor counts as
#: diagonal (the matrix as normal).
NORMAL_TOL = 1e-13


def _scalar_gamma_hp(lam: complex) -> complex:
    with mp.workdps(ORACLE_DPS):
        val = mp.gamma(mp.mpc(lam.real, lam.imag))
        return complex(float(val.real), float(val.imag))


def oracle_gamma(a) -> np.ndarray:
    """Gamma(A) as V diag(Gamma(lambda)) V^{-1} with eigenvectors
    extracted from the triangular Schur factor.

    Raises OracleRefusedError for matrices that are defective to working
    precision or whose eigenvector basis has condition number above
    CONDITION_LIMIT.
    """
    a = as_matrix(a)
    form = schur(a)
    t, u = form.T, form.U
    n = t.shape[0]
    eigs = np.diag(t)
    assert_pole_free(eigs)
    gamma_vals = np.array([_scalar_gamma_hp(complex(l)) for l in eigs])

    off = frobenius_norm(np.triu(t, 1))
    if off <= NORMAL_TOL * max(1.0, frobenius_norm(t)):
        return u @ np.diag(gamma_vals) @ u.conj().T

    for k in range(n):
        gaps = np.abs(eigs - eigs[k])
        gaps[k] = np.inf
        if gaps.min() <= 1e-13 * (1.0 + abs(eigs[k])):
            raise OracleRefusedError(
                f"eigenvalue {eigs[k]:.6g} is repeated to working precision; "
                "the matrix is defective or too clustered for an "
                "eigendecomposition oracle"
            )
    w = np.eye(n, dtype=complex)
    for k in range(1, n):
        try:
            w[:k, k] = scipy.linalg.solve_triangular(
                t[:k, :k] - eigs[k] * np.eye(k),
                -t[:k, k],
                lower=False,
                check_finite=False,
            )
        except scipy.linalg.LinAlgError as exc:
            raise OracleRefusedError(
                "triangular eigenvector extraction broke down; matrix is "
                f"defective to working precision ({exc})"
            ) from exc
    v = u @ w
    cond_v = float(np.linalg.cond(v))
    if not np.isfinite(cond_v) or cond_v > CONDITION_LIMIT:
        raise OracleRefusedError(
            f"eigenvector basis condition number {cond_v:.3e} exceeds the "
            f"oracle's trust limit {CONDITION_LIMIT:g}"
        )
    return v @ np.diag(gamma_vals) @ np.linalg.solve(v, np.eye(n, dtype=complex))
