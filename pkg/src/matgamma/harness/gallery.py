"""Test-matrix generators.

Classic structured families (lehmer, hilbert, cauchy, a min-matrix
variant of condex, the riemann integer matrix), seeded random families
with controlled spectra, and Jordan blocks. Orders are capped at 64;
these are benchmark matrices, not a production path.
"""

from __future__ import annotations

import numpy as np

from ..errors import MalformedInputError

GALLERY_NAMES = (
    "lehmer",
    "hilbert",
    "cauchy",
    "condex-like",
    "riemann-like",
    "rand-stable",
    "rand-mixed",
    "jordan",
)

MIN_ORDER = 2
MAX_ORDER = 64


def _lehmer(n: int) -> np.ndarray:
    i = np.arange(1, n + 1)
    return np.minimum.outer(i, i) / np.maximum.outer(i, i)


def _hilbert(n: int) -> np.ndarray:
    i = np.arange(1, n + 1)
    return 1.0 / (i[:, None] + i[None, :] - 1.0)


def _cauchy(n: int) -> np.ndarray:
    i = np.arange(1, n + 1)
    return 1.0 / (i[:, None] + i[None, :])


def _condex_like(n: int, theta: float) -> np.ndarray:
    # identity plus a scaled min-matrix: well conditioned for gamma while
    # exercising a full lower-plus-upper structure
    i = np.arange(1, n + 1)
    return np.eye(n) + theta * np.minimum.outer(i, i)


def _riemann_like(n: int) -> np.ndarray:
    # entry (i, j), 2-based: i-1 when i divides j, else -1
    i = np.arange(2, n + 2)
    j = np.arange(2, n + 2)
    divides = (j[None, :] % i[:, None]) == 0
    return np.where(divides, (i - 1)[:, None].astype(float), -1.0)


def _rand_stable(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    g /= np.sqrt(2.0 * n)
    eigs = np.linalg.eigvals(g)
    shift = 0.51 - eigs.real.min()
    return g + shift * np.eye(n)


def _rand_mixed(n: int, seed: int) -> np.ndarray:
    # prescribed eigenvalues on both sides of the imaginary axis, kept
    # clear of the gamma poles, wrapped in a mild triangular coupling and
    # a random unitary similarity
    rng = np.random.default_rng(seed)
    npos = (n + 1) // 2
    nneg = n - npos
    re = np.concatenate(
        [rng.uniform(0.3, 2.2, npos), rng.uniform(-0.7, -0.3, nneg)]
    )
    im = rng.uniform(-1.0, 1.0, n)
    t = np.diag(re + 1j * im).astype(complex)
    coupling = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    t += 0.3 * np.triu(coupling, 1)
    q, _ = np.linalg.qr(
        rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    )
    return q @ t @ q.conj().T


def _jordan(n: int, lam: float) -> np.ndarray:
    return np.diag(np.full(n, complex(lam))) + np.diag(np.ones(n - 1), 1)


def gallery(
    name: str,
    n: int,
    seed: int = 0,
    lam: float = 1.25,
    theta: float = 0.05,
) -> np.ndarray:
    """Build a named test matrix of order n as a complex array.

    ``seed`` drives the random families; ``lam`` is the Jordan eigenvalue
    and ``theta`` the condex-like coupling strength.
    """
    if name not in GALLERY_NAMES:
        raise MalformedInputError(
            f"unknown gallery name {name!r}; choose from {', '.join(GALLERY_NAMES)}"
        )
    if not (isinstance(n, (int, np.integer)) and MIN_ORDER <= n <= MAX_ORDER):
        raise MalformedInputError(
            f"order must be an integer in [{MIN_ORDER}, {MAX_ORDER}], got {n!r}"
        )
    n = int(n)
    if name == "lehmer":
        out = _lehmer(n)
    elif name == "hilbert":
        out = _hilbert(n)
    elif name == "cauchy":
        out = _cauchy(n)
    elif name == "condex-like":
        out = _condex_like(n, theta)
    elif name == "riemann-like":
        out = _riemann_like(n)
    elif name == "rand-stable":
        out = _rand_stable(n, seed)
    elif name == "rand-mixed":
        out = _rand_mixed(n, seed)
    else:
        out = _jordan(n, lam)
    return np.asarray(out, dtype=complex)
