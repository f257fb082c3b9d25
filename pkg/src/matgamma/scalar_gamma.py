"""Scalar gamma kernels and the constant tables behind the matrix
backends: Lanczos and Spouge rational approximations, reciprocal-series
coefficients, zeta values, and real incomplete gamma functions.

The coefficient table is built lazily exactly once and is read-only
afterwards; every kernel here is a pure function.
"""

from __future__ import annotations

import cmath
import math
import threading
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import ConvergenceError, MatGammaError, PreconditionError

#: Euler-Mascheroni constant, correctly rounded to binary64.
EULER_GAMMA = 0.5772156649015328606065120900824024

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)

_MAX_ITER = 10_000

# Rational-kernel coefficients for shift 9.5 (11 terms). The partial
# fractions are c[0] + sum(c[k] / (z + k)) approximating the factor that
# turns the Stirling prefactor into Gamma(z+1).
_LANCZOS_C_STR = (
    "1.000000000000000174663",
    "5716.400188274341379136",
    "-14815.30426768413909044",
    "14291.49277657478554025",
    "-6348.160217641458813289",
    "1301.608286058321874105",
    "-108.1767053514369634679",
    "2.605696505611755827729",
    "-0.7423452510201416151527e-2",
    "0.5384136432509564062961e-7",
    "-0.4023533141268236372067e-8",
)

#: Spouge parameter: shift a and the matching coefficient count m = 12.
SPOUGE_A = 12.5

# d[0] = 1 by construction; d[k] for k >= 1 are residues with the closed
# form checked against these printed values at table build time.
_SPOUGE_D_STR = (
    "1",
    "133550.5029424774402287",
    "-492930.9352993603097275",
    "741287.4736976117128506",
    "-585097.3776039966614917",
    "260425.2703303852758836",
    "-65413.35339611420204164",
    "8801.459635084211186040",
    "-564.8050241289801078892",
    "13.803798339181415855137",
    "-0.8078176169895076585981e-1",
    "0.3479741445742458983261e-4",
    "-0.5689271227504240383584e-11",
)

ZETA_MIN = 2
ZETA_MAX = 60

# zeta(2) .. zeta(60) to 32 significant digits. Cross-checked at table
# build time against an independent Euler-Maclaurin evaluation.
_ZETA_STR = (
    "1.6449340668482264364724151666460",
    "1.2020569031595942853997381615114",
    "1.0823232337111381915160036965412",
    "1.0369277551433699263313654864570",
    "1.0173430619844491397145179297909",
    "1.0083492773819228268397975498498",
    "1.0040773561979443393786852385087",
    "1.0020083928260822144178527692324",
    "1.0009945751278180853371459589003",
    "1.0004941886041194645587022825265",
    "1.0002460865533080482986379980477",
    "1.0001227133475784891467518365264",
    "1.0000612481350587048292585451051",
    "1.0000305882363070204935517285106",
    "1.0000152822594086518717325714876",
    "1.0000076371976378997622736002936",
    "1.0000038172932649998398564616446",
    "1.0000019082127165539389256569578",
    "1.0000009539620338727961131520387",
    "1.0000004769329867878064631167196",
    "1.0000002384505027277329900036482",
    "1.0000001192199259653110730677887",
    "1.0000000596081890512594796124402",
    "1.0000000298035035146522801860637",
    "1.0000000149015548283650412346585",
    "1.0000000074507117898354294919810",
    "1.0000000037253340247884570548192",
    "1.0000000018626597235130490064039",
    "1.0000000009313274324196681828718",
    "1.0000000004656629065033784072989",
    "1.0000000002328311833676505492001",
    "1.0000000001164155017270051977593",
    "1.0000000000582077208790270088924",
    "1.0000000000291038504449709968693",
    "1.0000000000145519218910419842359",
    "1.0000000000072759598350574810145",
    "1.0000000000036379795473786511902",
    "1.0000000000018189896503070659476",
    "1.0000000000009094947840263889283",
    "1.0000000000004547473783042154027",
    "1.0000000000002273736845824652515",
    "1.0000000000001136868407680227849",
    "1.0000000000000568434198762758561",
    "1.0000000000000284217097688930186",
    "1.0000000000000142108548280316068",
    "1.0000000000000071054273952108527",
    "1.0000000000000035527136913371137",
    "1.0000000000000017763568435791203",
    "1.0000000000000008881784210930816",
    "1.0000000000000004440892103143813",
    "1.0000000000000002220446050798042",
    "1.0000000000000001110223025141066",
    "1.0000000000000000555111512484548",
    "1.0000000000000000277555756213612",
    "1.0000000000000000138777878097252",
    "1.0000000000000000069388939045442",
    "1.0000000000000000034694469521659",
    "1.0000000000000000017347234760476",
    "1.0000000000000000008673617380120",
)

#: Reciprocal-series coefficients kept in the table (a_1 .. a_51).
RECIP_TABLE_LEN = 51

# The recursion itself is computed out to this index; the extra headroom
# is cheap and lets recip_coefficients serve slightly longer requests.
_RECIP_COMPUTE_LEN = 60

# Working precision (decimal digits) for the coefficient recursion. The
# recursion loses roughly 43 digits to cancellation by k ~ 51 (|a_51| is
# ~ 2.7e-43 while individual recursion terms are O(1)), so double or
# double-double arithmetic cannot deliver correctly rounded binary64
# coefficients; 90 digits leaves ample headroom.
_RECIP_DPS = 90


def euler_maclaurin_zeta(s, terms: int = 50, corrections: int = 35):
    """Riemann zeta at real s > 1 by Euler-Maclaurin summation.

    Returns an mpf at the caller's working precision. With the default
    truncation the result is far more accurate than any use here (the
    first omitted correction term at s=2 is below 1e-75).
    """
    s = mp.mpf(s)
    n = int(terms)
    total = mp.fsum(mp.power(j, -s) for j in range(1, n))
    total += mp.power(n, 1 - s) / (s - 1)
    total += mp.power(n, -s) / 2
    poch = s  # rising factorial s(s+1)...(s+2k-2)
    npow = mp.power(n, -s - 1)
    n2 = mp.mpf(n) ** -2
    for k in range(1, corrections + 1):
        total += mp.bernoulli(2 * k) / mp.factorial(2 * k) * poch * npow
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        npow *= n2
    return total


@dataclass(frozen=True)
class CoefficientTable:
    """Read-only numeric tables shared by the gamma backends.

    ``zeta_str`` preserves the full 32-digit decimal forms; ``zeta``
    carries their binary64 roundings.
    """

    lanczos_c: np.ndarray
    spouge_d: np.ndarray
    recip_a: np.ndarray
    zeta: np.ndarray
    zeta_str: tuple

    def __post_init__(self):
        for field in (self.lanczos_c, self.spouge_d, self.recip_a, self.zeta):
            field.setflags(write=False)


_TABLE: CoefficientTable | None = None
_RECIP_MP: list | None = None
_LOCK = threading.Lock()


def _build_recip_mp() -> list:
    """a_1 .. a_60 of the reciprocal-gamma Taylor series, high precision.

    a_1 = 1, a_2 = Euler's gamma, then
    a_k = (a_2 a_{k-1} - sum_{j=2}^{k-1} (-1)^j zeta(j) a_{k-j}) / (k-1).
    """
    with mp.workdps(_RECIP_DPS):
        zetas = {j: euler_maclaurin_zeta(j) for j in range(2, _RECIP_COMPUTE_LEN)}
        a = [mp.mpf(0)] * (_RECIP_COMPUTE_LEN + 1)
        a[1] = mp.mpf(1)
        a[2] = +mp.euler
        for k in range(3, _RECIP_COMPUTE_LEN + 1):
            acc = a[2] * a[k - 1]
            for j in range(2, k):
                acc -= (-1) ** j * zetas[j] * a[k - j]
            a[k] = acc / (k - 1)
    return a[1:]


def _check_zeta_strings() -> None:
    with mp.workdps(50):
        for idx, text in enumerate(_ZETA_STR):
            s = ZETA_MIN + idx
            ref = euler_maclaurin_zeta(s)
            if abs(mp.mpf(text) - ref) > mp.mpf("1e-20") * ref:
                raise MatGammaError(
                    f"embedded zeta({s}) disagrees with Euler-Maclaurin value"
                )


def _check_spouge_residues(d: np.ndarray) -> None:
    for k in range(1, len(d)):
        ref = spouge_coefficient(k, SPOUGE_A)
        if abs(d[k] - ref) > 1e-13 * abs(ref):
            raise MatGammaError(
                f"embedded Spouge coefficient d_{k} disagrees with the "
                "residue formula"
            )


def _build_table() -> CoefficientTable:
    lanczos_c = np.array([float(t) for t in _LANCZOS_C_STR])
    spouge_d = np.array([float(t) for t in _SPOUGE_D_STR])
    zeta_f = np.array([float(t) for t in _ZETA_STR])
    _check_spouge_residues(spouge_d)
    _check_zeta_strings()
    recip_mp = _recip_mp()
    if abs(float(recip_mp[1]) - EULER_GAMMA) > 4 * 2.0 ** -53:
        raise MatGammaError("reciprocal-series recursion lost a_2 = gamma")
    recip_a = np.array([float(v) for v in recip_mp[:RECIP_TABLE_LEN]])
    return CoefficientTable(
        lanczos_c=lanczos_c,
        spouge_d=spouge_d,
        recip_a=recip_a,
        zeta=zeta_f,
        zeta_str=_ZETA_STR,
    )


def _recip_mp() -> list:
    global _RECIP_MP
    if _RECIP_MP is None:
        _RECIP_MP = _build_recip_mp()
    return _RECIP_MP


def coefficient_table() -> CoefficientTable:
    """The shared coefficient table, built on first use."""
    global _TABLE
    if _TABLE is None:
        with _LOCK:
            if _TABLE is None:
                _TABLE = _build_table()
    return _TABLE


def spouge_coefficient(k: int, a: float) -> float:
    """Residue coefficient d_k(a) = (1/sqrt(2 pi)) ((-1)^{k-1}/(k-1)!)
    (a-k)^{k-1/2} e^{a-k}."""
    if not (isinstance(k, (int, np.integer)) and 1 <= k <= math.ceil(a) - 1):
        raise PreconditionError(
            f"k must be an integer in [1, ceil(a)-1], got k={k}, a={a}"
        )
    if not a >= 3:
        raise PreconditionError(f"shift parameter must satisfy a >= 3, got {a}")
    log_mag = (
        -_HALF_LOG_2PI
        - math.lgamma(k)
        + (k - 0.5) * math.log(a - k)
        + (a - k)
    )
    sign = 1.0 if k % 2 == 1 else -1.0
    return sign * math.exp(log_mag)


def recip_coefficients(m: int) -> np.ndarray:
    """First m Taylor coefficients a_1 .. a_m of 1/Gamma about 0."""
    if not (isinstance(m, (int, np.integer)) and m >= 2):
        raise PreconditionError(f"need an integer m >= 2, got {m!r}")
    if m > _RECIP_COMPUTE_LEN:
        raise PreconditionError(
            f"m={m} exceeds the zeta table backing the recursion "
            f"(max {_RECIP_COMPUTE_LEN})"
        )
    coefficient_table()
    return np.array([float(v) for v in _recip_mp()[:m]])


def zeta(s: int) -> float:
    """zeta(s) for integer s in [2, 60], from the embedded table."""
    if not (isinstance(s, (int, np.integer)) and ZETA_MIN <= s <= ZETA_MAX):
        raise PreconditionError(
            f"s must be an integer in [{ZETA_MIN}, {ZETA_MAX}], got {s!r}"
        )
    return float(coefficient_table().zeta[s - ZETA_MIN])


def lanczos_gamma_scalar(z) -> complex:
    """Gamma(z+1) for Re(z) > -1 by the 11-term rational kernel with
    shift 9.5, evaluated in logarithmic form.

    Note the +1 convention: callers wanting Gamma(w) pass z = w - 1.
    """
    z = complex(z)
    if not z.real > -1.0:
        raise PreconditionError(
            f"kernel requires Re(z) > -1, got z = {z!r}"
        )
    c = coefficient_table().lanczos_c
    s = complex(c[0])
    for k in range(1, len(c)):
        s += c[k] / (z + k)
    # exp(log s) = s for any branch, so the branch of log(s) is harmless;
    # z + 9.5 stays in the right half-plane, keeping its log principal.
    log_val = (
        _HALF_LOG_2PI
        + (z + 0.5) * cmath.log(z + 9.5)
        - (z + 9.5)
        + cmath.log(s)
    )
    return cmath.exp(log_val)


def spouge_gamma_scalar(z) -> complex:
    """Gamma(z) for Re(z) > 0 by the 13-term kernel with shift 11.5,
    uniform relative error below 1.2e-11."""
    z = complex(z)
    if not z.real > 0.0:
        raise PreconditionError(
            f"kernel requires Re(z) > 0, got z = {z!r}"
        )
    d = coefficient_table().spouge_d
    s = complex(d[0])
    for k in range(1, len(d)):
        s += d[k] / (z - 1 + k)
    log_val = (
        _HALF_LOG_2PI
        + (z - 0.5) * cmath.log(z + 11.5)
        - (z + 11.5)
        + cmath.log(s)
    )
    return cmath.exp(log_val)


def _upper_cf(s: float, r: float) -> float:
    """Gamma(s, r) by the Legendre continued fraction (modified Lentz)."""
    tiny = 1e-300
    b = r + 1.0 - s
    c = 1.0 / tiny
    d = 1.0 / b if b != 0.0 else 1.0 / tiny
    h = d
    for i in range(1, _MAX_ITER + 1):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return math.exp(-r + s * math.log(r)) * h
    raise ConvergenceError(
        f"continued fraction for the upper incomplete gamma did not "
        f"converge for s={s}, r={r}"
    )


def _lower_series(s: float, r: float) -> float:
    """gamma(s, r) for s > 0 by the ascending series."""
    term = 1.0 / s
    total = term
    sp = s
    for _ in range(_MAX_ITER):
        sp += 1.0
        term *= r / sp
        total += term
        if abs(term) < 1e-17 * abs(total):
            return math.exp(-r + s * math.log(r)) * total
    raise ConvergenceError(
        f"ascending series for the lower incomplete gamma did not "
        f"converge for s={s}, r={r}"
    )


def _e1_series(r: float) -> float:
    """Gamma(0, r) = E_1(r) via the alternating series, for r < 1."""
    total = -EULER_GAMMA - math.log(r)
    term = 1.0  # (-r)^k / k!
    for k in range(1, _MAX_ITER + 1):
        term *= -r / k
        add = -term / k
        total += add
        if abs(add) < 1e-17 * abs(total):
            return total
    raise ConvergenceError(
        f"exponential-integral series did not converge for r={r}"
    )


def _validate_real(name: str, x) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise PreconditionError(f"{name} must be finite, got {x!r}")
    return x


def incomplete_gamma_upper_scalar(s, r) -> float:
    """Gamma(s, r) = integral of e^-t t^(s-1) over [r, inf), any real s,
    r > 0.

    Positive s uses the continued fraction (r >= s+1) or the complement
    of the ascending series. Nonpositive s steps down from an anchor in
    (0, 1] via Gamma(s, r) = (Gamma(s+1, r) - r^s e^-r) / s, which is the
    stable direction; the continued fraction degrades for very negative s.
    """
    s = _validate_real("s", s)
    r = _validate_real("r", r)
    if r <= 0.0:
        raise PreconditionError(f"r must be positive, got {r}")
    if s > 0.0:
        if r >= s + 1.0:
            return _upper_cf(s, r)
        return math.gamma(s) - _lower_series(s, r)
    if s == math.floor(s):
        g = _upper_cf(0.0, r) if r >= 1.0 else _e1_series(r)
        anchor = 0.0
    else:
        anchor = s - math.floor(s)
        if r >= anchor + 1.0:
            g = _upper_cf(anchor, r)
        else:
            g = math.gamma(anchor) - _lower_series(anchor, r)
    cur = anchor
    log_r = math.log(r)
    while cur > s + 0.5:
        cur -= 1.0
        g = (g - math.exp(-r + cur * log_r)) / cur
    return g


def incomplete_gamma_lower_scalar(s, r) -> float:
    """gamma(s, r) = integral of e^-t t^(s-1) over [0, r], for s, r > 0."""
    s = _validate_real("s", s)
    r = _validate_real("r", r)
    if s <= 0.0:
        raise PreconditionError(f"s must be positive, got {s}")
    if r <= 0.0:
        raise PreconditionError(f"r must be positive, got {r}")
    if r < s + 1.0:
        return _lower_series(s, r)
    return math.gamma(s) - _upper_cf(s, r)
