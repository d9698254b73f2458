"""Scalar special functions used by every kernel evaluation.

The central object is ``bessel_entire``: the power series

    j_a(z) = sum_{k>=0} (-1)^k z^k / (k! Gamma(a+k+1)),

which equals z^{-a/2} J_a(2 sqrt(z)) for z > 0 but is an entire function of
z, defined for any real order.  Writing kernels in terms of j_a removes all
fractional powers of the arguments, which is what makes spectrally accurate
quadrature possible for non-integer weight exponents.

The remaining routines are standard numerics: a Lanczos log-gamma, the
generalized Laguerre recurrence, the orthonormal Laguerre functions with
log-domain normalization, and the regularized upper incomplete gamma via
series / continued fraction.
"""

import math

import numpy as np
from scipy import special as _sp

from .errors import AccuracyError, DomainError, NumericError, SingularPointError

# Largest |z| accepted by bessel_entire; kernel arguments x = 4z stay <= 1600.
Z_MAX = 400.0

# Above this the alternating series cancellation costs more than ~3 digits in
# double precision, so positive arguments are delegated to a library Bessel J.
_Z_SERIES = 25.0

# Lanczos approximation, g = 7, 9 coefficients.
_LANCZOS_G = 7.0
_LANCZOS_C = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)

_LOG_SQRT_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def require_order(a) -> float:
    """Validate the weight/order parameter a > -1 shared by the whole library."""
    a = float(a)
    if not math.isfinite(a) or a <= -1.0:
        raise DomainError(f"order parameter must be a finite real > -1, got {a!r}")
    return a


def log_gamma(x) -> float:
    """ln Gamma(x) for x > 0 (Lanczos approximation).

    Arguments below 0.5 are lifted with the recurrence
    ln Gamma(x) = ln Gamma(x+1) - ln x so the rational core stays on the
    well-conditioned range.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"log_gamma requires finite x > 0, got {x!r}")
    shift = 0.0
    while x < 0.5:
        shift -= math.log(x)
        x += 1.0
    xm = x - 1.0
    series = _LANCZOS_C[0]
    for i in range(1, len(_LANCZOS_C)):
        series += _LANCZOS_C[i] / (xm + i)
    t = xm + _LANCZOS_G + 0.5
    return shift + _LOG_SQRT_TWO_PI + (xm + 0.5) * math.log(t) - t + math.log(series)


def _recip_gamma(v: float) -> float:
    """1 / Gamma(v) for any real v; zero at the poles v = 0, -1, -2, ..."""
    if v > 0.0:
        return math.exp(-log_gamma(v))
    if v == math.floor(v):
        return 0.0
    # reflection: 1/Gamma(v) = sin(pi v) Gamma(1 - v) / pi
    return math.sin(math.pi * v) * math.exp(log_gamma(1.0 - v)) / math.pi


def bessel_entire(a, z) -> float:
    """The entire function j_a(z) = sum_k (-1)^k z^k / (k! Gamma(a+k+1)).

    Equals z^{-a/2} J_a(2 sqrt(z)) for z > 0 and is defined for all real z
    and all real orders a (series terms sitting on Gamma poles vanish).
    Refuses |z| > Z_MAX rather than return silently degraded values.
    """
    a = float(a)
    z = float(z)
    if not (math.isfinite(a) and math.isfinite(z)):
        raise DomainError(f"bessel_entire requires finite arguments, got a={a!r}, z={z!r}")
    if abs(z) > Z_MAX:
        raise AccuracyError(
            f"bessel_entire is validated only for |z| <= {Z_MAX:g}, got z={z!r}"
        )
    if z <= _Z_SERIES:
        # For z <= 0 the series has no cancellation at all; for small positive
        # z it loses at most ~3 digits.
        return _bessel_series(a, z)
    # Large positive z: the alternating series would cancel catastrophically,
    # while J_a itself is well conditioned.  No 0^a issue since z > 0.
    w = 2.0 * math.sqrt(z)
    return float(_sp.jv(a, w)) * math.exp(-0.5 * a * math.log(z))


def _bessel_series(a: float, z: float) -> float:
    # First index from which the term recurrence is pole-free (a + k + 1 >= 1).
    k0 = max(0, int(math.ceil(-a)) + 1)
    total = 0.0
    zk = 1.0
    factorial = 1.0
    sign = 1.0
    for k in range(k0):
        total += sign * zk * _recip_gamma(a + k + 1.0) / factorial
        zk *= z
        factorial *= k + 1.0
        sign = -sign
    term = sign * zk * _recip_gamma(a + k0 + 1.0) / factorial
    k = k0
    consecutive_small = 0
    while True:
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300):
            consecutive_small += 1
            if consecutive_small >= 3:
                return total
        else:
            consecutive_small = 0
        # Gamma(a+k+2) = (a+k+1) Gamma(a+k+1); k0 keeps a+k+1 >= 1 here
        term *= -z / ((k + 1.0) * (a + k + 1.0))
        k += 1
        if k > 1000:
            raise NumericError(f"bessel_entire series stalled at a={a!r}, z={z!r}")


def bessel_j_sqrt(a, x) -> float:
    """J_a(sqrt(x)) for x >= 0, evaluated as (x/4)^{a/2} j_a(x/4)."""
    a = float(a)
    x = float(x)
    if not (math.isfinite(a) and math.isfinite(x)) or x < 0.0:
        raise DomainError(f"bessel_j_sqrt requires finite x >= 0, got a={a!r}, x={x!r}")
    if x == 0.0:
        if a > 0.0:
            return 0.0
        if a == 0.0:
            return 1.0
        raise SingularPointError(
            f"J_a(sqrt(x)) diverges at x = 0 for negative order a={a!r}"
        )
    u = 0.25 * x
    return math.exp(0.5 * a * math.log(u)) * bessel_entire(a, u)


def laguerre(n, a, x):
    """Generalized Laguerre polynomial L_n^a(x) by the ascending recurrence.

    Seeded with L_0 = 1 and L_1 = 1 + a - x; x may be a scalar or ndarray.
    """
    if n != int(n) or n < 0:
        raise DomainError(f"laguerre degree must be a nonnegative integer, got {n!r}")
    n = int(n)
    a = float(a)
    arr = np.asarray(x, dtype=float)
    if not (math.isfinite(a) and np.all(np.isfinite(arr))):
        raise DomainError("laguerre requires finite arguments")
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    prev = np.ones_like(arr)
    if n == 0:
        return float(prev[0]) if scalar else prev
    curr = 1.0 + a - arr
    for k in range(1, n):
        prev, curr = curr, ((2.0 * k + 1.0 + a - arr) * curr - (k + a) * prev) / (k + 1.0)
    return float(curr[0]) if scalar else curr


def laguerre_phi(k, a, x):
    """Orthonormal Laguerre function

        phi_k(x) = sqrt(k! / Gamma(k+a+1)) e^{-x/2} x^{a/2} L_k^a(x),

    with the normalization assembled in the log domain so that degrees up to
    10^4 evaluate without overflow.  Requires x > 0 (the x^{a/2} factor is
    singular at 0 for non-integer a); x may be a scalar or ndarray.
    """
    if k != int(k) or k < 0:
        raise DomainError(f"laguerre_phi degree must be a nonnegative integer, got {k!r}")
    k = int(k)
    a = require_order(a)
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError("laguerre_phi requires finite x > 0")
    log_norm = 0.5 * (log_gamma(k + 1.0) - log_gamma(k + a + 1.0))
    vals = np.exp(log_norm - 0.5 * arr + 0.5 * a * np.log(arr)) * laguerre(k, a, arr)
    return float(vals[0]) if scalar else vals


def reg_upper_gamma(p, t) -> float:
    """Regularized upper incomplete gamma Q(p, t) = Gamma(p, t) / Gamma(p).

    Power series for the lower function when t < p + 1, Lentz continued
    fraction otherwise.
    """
    p = float(p)
    t = float(t)
    if not (math.isfinite(p) and math.isfinite(t)) or p <= 0.0 or t < 0.0:
        raise DomainError(f"reg_upper_gamma requires p > 0 and t >= 0, got p={p!r}, t={t!r}")
    if t == 0.0:
        return 1.0
    if t < p + 1.0:
        return 1.0 - _reg_lower_series(p, t)
    return _reg_upper_contfrac(p, t)


def _reg_lower_series(p: float, t: float) -> float:
    # P(p, t) = t^p e^{-t} / Gamma(p+1) * sum_k t^k / ((p+1)...(p+k))
    term = 1.0
    total = 1.0
    denom = p
    for _ in range(500):
        denom += 1.0
        term *= t / denom
        total += term
        if abs(term) < 1e-16 * abs(total):
            return total * math.exp(p * math.log(t) - t - log_gamma(p + 1.0))
    raise NumericError(f"incomplete gamma series did not converge at p={p!r}, t={t!r}")


def _reg_upper_contfrac(p: float, t: float) -> float:
    # modified Lentz evaluation of the standard continued fraction for Q
    tiny = 1e-300
    b = t + 1.0 - p
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - p)
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
            return h * math.exp(p * math.log(t) - t - log_gamma(p))
    raise NumericError(f"incomplete gamma continued fraction stalled at p={p!r}, t={t!r}")
