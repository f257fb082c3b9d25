"""Matrix gamma backends for spectra confined to one half-plane, plus
the reciprocal-series backend that tolerates mixed-sign spectra.

Each backend evaluates Gamma(A) directly; reflection-formula dispatch
sends left-half-plane spectra through Gamma(I-A). Matrices whose spectra
straddle the imaginary axis belong to the blocked driver, which carves
them into sign-pure triangular blocks before calling back in here.
"""

from __future__ import annotations

import enum
import math
import warnings

import numpy as np

from .errors import (
    PoleProximityError,
    PreconditionError,
    SingularMatrixError,
    SpectrumSplitError,
)
from .linalg import as_matrix, eigenvalues, identity, inverse, one_norm, solve
from .matfun import expm, logm, power_scalar_matrix, sinm
from .scalar_gamma import coefficient_table

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

#: Reject eigenvalues within this distance of a non-positive integer.
POLE_TOL = 1e-8

#: Eigenvalues this close to the imaginary axis cannot be assigned a
#: half-plane reliably; the half-plane backends refuse them.
AXIS_SPLIT_TOL = 1e-12

#: Spectral-radius threshold below which the reciprocal series is
#: evaluated directly, without the multiplication-formula split.
RECIP_MU = 3.0

#: Truncation order of the reciprocal series.
RECIP_SERIES_TERMS = 50


class GammaMethod(str, enum.Enum):
    """Backend selector; values double as the CLI flag strings."""

    LANCZOS = "lanczos"
    SPOUGE = "spouge"
    RECIPROCAL = "recip"


def assert_pole_free(eigs: np.ndarray) -> None:
    """Reject spectra within POLE_TOL of a non-positive integer, where
    Gamma has poles."""
    for lam in np.atleast_1d(eigs):
        k = min(0.0, np.round(lam.real))
        if abs(lam - k) <= POLE_TOL:
            raise PoleProximityError(
                f"eigenvalue {lam:.6g} is within {POLE_TOL:g} of the "
                f"gamma pole at {int(k)}"
            )


def _assert_off_axis(eigs: np.ndarray) -> None:
    for lam in eigs:
        if abs(lam.real) <= AXIS_SPLIT_TOL:
            raise SpectrumSplitError(
                f"eigenvalue {lam:.6g} lies on the imaginary axis (within "
                f"{AXIS_SPLIT_TOL:g}); no half-plane applies"
            )


def _assert_sign_pure(eigs: np.ndarray) -> None:
    has_pos = bool((eigs.real > 0).any())
    has_neg = bool((eigs.real < 0).any())
    if has_pos and has_neg:
        raise SpectrumSplitError(
            "spectrum straddles the imaginary axis; use the blocked "
            "Schur-Parlett driver"
        )


def polyval_matrix(coeffs, a) -> np.ndarray:
    """Sum of coeffs[k] * A^k by Horner's scheme (ascending coeffs)."""
    a = as_matrix(a)
    coeffs = np.asarray(coeffs, dtype=float)
    if coeffs.ndim != 1:
        raise PreconditionError("coefficients must be one-dimensional")
    n = a.shape[0]
    if coeffs.size == 0:
        return np.zeros((n, n), dtype=complex)
    eye = identity(n)
    out = coeffs[-1] * eye
    for c in coeffs[-2::-1]:
        out = out @ a + c * eye
    return out


def _log_gamma_core(a: np.ndarray, kernel: np.ndarray, shift: float) -> np.ndarray:
    """Shared log-form assembly: 0.5 log(2 pi) I + (A - 0.5 I) log(A + shift I)
    - (A + shift I) + log(kernel)."""
    n = a.shape[0]
    eye = identity(n)
    shifted = a + shift * eye
    return (
        _HALF_LOG_2PI * eye
        + (a - 0.5 * eye) @ logm(shifted)
        - shifted
        + logm(kernel)
    )


def lanczos_gamma_right(a) -> np.ndarray:
    """Gamma(A) for spectra in the open right half-plane, via the 11-term
    rational kernel with shift 8.5 in logarithmic form."""
    a = as_matrix(a)
    eigs = eigenvalues(a)
    assert_pole_free(eigs)
    if not (eigs.real > 0).all():
        raise PreconditionError(
            "spectrum must lie in the open right half-plane; "
            f"min Re(lambda) = {eigs.real.min():.6g}"
        )
    c = coefficient_table().lanczos_c
    n = a.shape[0]
    eye = identity(n)
    kernel = c[0] * eye
    for k in range(1, len(c)):
        kernel += c[k] * solve(a + (k - 1) * eye, eye)
    return expm(_log_gamma_core(a, kernel, 8.5))


def spouge_gamma_right(a) -> np.ndarray:
    """Gamma(A) for spectra in the open right half-plane, via the 13-term
    kernel with shift 11.5 in logarithmic form."""
    a = as_matrix(a)
    eigs = eigenvalues(a)
    assert_pole_free(eigs)
    if not (eigs.real > 0).all():
        raise PreconditionError(
            "spectrum must lie in the open right half-plane; "
            f"min Re(lambda) = {eigs.real.min():.6g}"
        )
    d = coefficient_table().spouge_d
    n = a.shape[0]
    eye = identity(n)
    kernel = d[0] * eye
    for k in range(1, len(d)):
        kernel += d[k] * solve(a + (k - 1) * eye, eye)
    return expm(_log_gamma_core(a, kernel, 11.5))


def _reflect(a: np.ndarray, right_backend) -> np.ndarray:
    """Gamma(A) = pi (sin(pi A) Gamma(I-A))^{-1} for left-half spectra."""
    n = a.shape[0]
    s = sinm(math.pi * a)
    g = right_backend(identity(n) - a)
    return math.pi * inverse(s @ g)


def _half_plane_dispatch(a, right_backend) -> np.ndarray:
    a = as_matrix(a)
    eigs = eigenvalues(a)
    assert_pole_free(eigs)
    _assert_off_axis(eigs)
    _assert_sign_pure(eigs)
    if float(np.trace(a).real) >= 0.0:
        return right_backend(a)
    return _reflect(a, right_backend)


def lanczos_gamma(a) -> np.ndarray:
    """Gamma(A) for a sign-pure spectrum: right half-plane directly,
    left half-plane through the reflection formula."""
    return _half_plane_dispatch(a, lanczos_gamma_right)


def spouge_gamma(a) -> np.ndarray:
    """Reflection-dispatched companion of spouge_gamma_right."""
    return _half_plane_dispatch(a, spouge_gamma_right)


def gauss_split_order(rho: float, mu: float = RECIP_MU) -> int:
    """Number of multiplication-formula factors: ceil((rho-1)/(mu-1))."""
    return int(math.ceil((rho - 1.0) / (mu - 1.0)))


def reciprocal_gamma(a) -> np.ndarray:
    """Gamma(A) as the inverse of the truncated reciprocal-gamma series,
    with the argument reduced below spectral radius 3 by the
    multiplication formula when necessary. Handles mixed-sign spectra.
    """
    a = as_matrix(a)
    eigs = eigenvalues(a)
    assert_pole_free(eigs)
    n = a.shape[0]
    eye = identity(n)
    table = coefficient_table()
    coeffs = np.concatenate(([0.0], table.recip_a[:RECIP_SERIES_TERMS]))
    rho = float(np.abs(eigs).max())
    if rho <= RECIP_MU:
        delta = polyval_matrix(coeffs, a)
    else:
        r = gauss_split_order(rho)
        delta = polyval_matrix(coeffs, a / r)
        for p in range(1, r):
            delta = delta @ polyval_matrix(coeffs, (a + p * eye) / r)
        prefactor = (2.0 * math.pi) ** ((r - 1) / 2.0)
        delta = prefactor * power_scalar_matrix(float(r), 0.5 * eye - a) @ delta
    try:
        out = solve(delta, eye)
    except SingularMatrixError as exc:
        raise SingularMatrixError(
            "truncated reciprocal-series value is singular, which signals "
            f"an eigenvalue too near a pole of gamma: {exc}"
        ) from exc
    kappa = one_norm(delta) * one_norm(out)
    if kappa > 1e12:
        warnings.warn(
            "reciprocal-series value is ill conditioned "
            f"(kappa_1 ~ {kappa:.3g}); result may be inaccurate near a pole",
            RuntimeWarning,
            stacklevel=2,
        )
    return out


_BACKENDS = {
    GammaMethod.LANCZOS: lanczos_gamma,
    GammaMethod.SPOUGE: spouge_gamma,
    GammaMethod.RECIPROCAL: reciprocal_gamma,
}


def backend_for(method) -> tuple:
    """Resolve a GammaMethod or flag string to (method, callable)."""
    method = GammaMethod(method)
    return method, _BACKENDS[method]
