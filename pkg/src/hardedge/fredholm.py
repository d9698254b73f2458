"""Nystrom discretization: determinants, resolvent functionals, Gram oracle.

An integral operator with the entire pre-multiplied kernel Khat acting on
L^2((0,s); x^a dx) is discretized on a Gauss-Jacobi rule as the symmetric
matrix A_ij = sqrt(w_i) Khat(x_i, x_j) sqrt(w_j); then

    det(I - Khat) ~ det(I - A),

with spectral accuracy because the kernel is entire.  The determinant is
accumulated as a signed sum of log pivots (LU with row pivoting), so large
intervals cannot underflow.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, DomainError, NumericError
from .kernels import KernelSpec, hat_bessel_j, kernel_matrix
from .quadrature import DEFAULT_NODES, MAX_NODES, gauss_jacobi, scale_rule
from .specfun import log_gamma

# Error estimates compare m against m + 10 nodes, so m itself must leave
# room below the quadrature cap.
MIN_DET_NODES = 5
MAX_DET_NODES = MAX_NODES - 10


@dataclass(frozen=True)
class DeterminantResult:
    """A determinant value with an a-posteriori error estimate.

    error_estimate is |value(m) - value(m+10)|; spectral convergence of the
    Nystrom discretization makes this sharp.
    """

    value: float
    error_estimate: float
    m: int


def _rule(m: int, a: float, s: float):
    return scale_rule(gauss_jacobi(m, a), s)


def _check_interval(s) -> float:
    s = float(s)
    if not math.isfinite(s) or s <= 0.0:
        raise DomainError(f"interval endpoint must be a finite real > 0, got {s!r}")
    return s


def _check_m(m) -> int:
    if m != int(m) or not MIN_DET_NODES <= int(m) <= MAX_DET_NODES:
        raise DomainError(
            f"node count must be an integer in [{MIN_DET_NODES}, {MAX_DET_NODES}], got {m!r}"
        )
    return int(m)


def _det_value(spec: KernelSpec, s: float, m: int) -> float:
    rule = _rule(m, spec.a, s)
    sqrt_w = np.sqrt(rule.weights)
    a_mat = sqrt_w[:, None] * kernel_matrix(spec, rule.nodes) * sqrt_w[None, :]
    sign, log_abs = np.linalg.slogdet(np.eye(m) - a_mat)
    if sign == 0.0:
        raise NumericError(f"discretized determinant is exactly singular at s={s!r}, m={m}")
    if sign < 0.0:
        raise NumericError(
            f"discretized determinant came out negative (s={s!r}, m={m}); "
            "the projection-kernel range invariant 0 < det <= 1 is violated"
        )
    return math.exp(log_abs)


def nystrom_det(spec: KernelSpec, s, m=DEFAULT_NODES) -> DeterminantResult:
    """det(I - Khat on L^2((0,s); x^a dx)) with an m vs m+10 error estimate."""
    s = _check_interval(s)
    m = _check_m(m)
    value = _det_value(spec, s, m)
    refined = _det_value(spec, s, m + 10)
    if not 0.0 < value <= 1.0 + 1e-8:
        raise NumericError(
            f"determinant {value!r} escaped (0, 1] at s={s!r}, m={m} "
            f"(refined value {refined!r}); kernel spec {spec!r}"
        )
    return DeterminantResult(value=value, error_estimate=abs(value - refined), m=m)


def gram_det(a, n, t, m) -> float:
    """det(I_n - G) with G_kl = integral_0^t phi_k phi_l dx, the rank-n route.

    For a projection kernel of rank n the Fredholm determinant collapses to
    an n x n Gram determinant; this is the independent cross-check for
    nystrom_det.  The x^{a/2} factors of the phi's are absorbed into the
    x^a quadrature weight, so the sampled factors are entire.
    """
    if n != int(n) or n < 1:
        raise DomainError(f"gram_det needs integer n >= 1, got {n!r}")
    n = int(n)
    t = _check_interval(t)
    if m != int(m) or m > MAX_NODES:
        raise DomainError(f"node count must be an integer <= {MAX_NODES}, got {m!r}")
    m = int(m)
    if m < n + 20:
        raise AccuracyError(
            f"gram_det needs m >= n + 20 nodes to resolve degree-2n integrands, "
            f"got m={m}, n={n}"
        )
    a = float(a)
    rule = _rule(m, a, t)
    x = rule.nodes
    decay = np.exp(-0.5 * x)
    basis = np.empty((n, m))
    norm = math.exp(-0.5 * log_gamma(a + 1.0))  # sqrt(k!/Gamma(k+a+1)) at k=0
    prev = np.ones(m)
    curr = 1.0 + a - x
    for k in range(n):
        if k == 0:
            lk = prev
        elif k == 1:
            lk = curr
        else:
            prev, curr = curr, ((2.0 * (k - 1) + 1.0 + a - x) * curr - (k - 1 + a) * prev) / k
            lk = curr
        basis[k] = norm * decay * lk
        norm *= math.sqrt((k + 1.0) / (k + a + 1.0))
    gram = (basis * rule.weights) @ basis.T
    sign, log_abs = np.linalg.slogdet(np.eye(n) - gram)
    if sign <= 0.0:
        raise NumericError(f"Gram determinant lost positivity at a={a!r}, n={n}, t={t!r}")
    return math.exp(log_abs)


def resolvent_quadratic_form(spec: KernelSpec, s, m=DEFAULT_NODES, kernel_override=None) -> float:
    """<(I - K)^{-1} phi_a, phi_a> on L^2(0,s) with phi_a(x) = J_a(sqrt(x)).

    Realized in the x^a dx space, where phi_a becomes the entire hat_j_a:
    solve (I - A) v = b with b_i = sqrt(w_i) hat_j_a(x_i) and return b.v.
    Restricted to the limit kernel; kernel_override (a nodes -> matrix
    callable) is a hook for testing against explicitly known operators.
    """
    if kernel_override is None and spec.family != "bessel":
        raise DomainError("resolvent_quadratic_form is defined for the limit kernel")
    s = _check_interval(s)
    m = _check_m(m)
    rule = _rule(m, spec.a, s)
    sqrt_w = np.sqrt(rule.weights)
    if kernel_override is None:
        kernel = kernel_matrix(spec, rule.nodes)
    else:
        kernel = np.asarray(kernel_override(rule.nodes), dtype=float)
    a_mat = sqrt_w[:, None] * kernel * sqrt_w[None, :]
    b = sqrt_w * np.array([hat_bessel_j(spec.a, xi) for xi in rule.nodes])
    try:
        v = np.linalg.solve(np.eye(m) - a_mat, b)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"resolvent system is singular at s={s!r}, m={m}") from exc
    value = float(b @ v)
    if value <= 0.0:
        raise NumericError(
            f"resolvent quadratic form lost positivity at s={s!r}, m={m}: {value!r}"
        )
    return value


def log_derivative(spec: KernelSpec, s, m=DEFAULT_NODES, method="resolvent") -> float:
    """d/ds log det(I - K on (0,s)).

    The resolvent path uses the quadratic-form identity (limit kernel only);
    the finite_difference path differentiates log nystrom values centrally
    with step 1e-3 s and one Richardson refinement, and exists to validate
    the resolvent path.
    """
    s = _check_interval(s)
    if method == "resolvent":
        return -resolvent_quadratic_form(spec, s, m) / (4.0 * s)
    if method == "finite_difference":
        m = _check_m(m)

        def central(h: float) -> float:
            upper = _det_value(spec, s + h, m)
            lower = _det_value(spec, s - h, m)
            return (math.log(upper) - math.log(lower)) / (2.0 * h)

        h = 1e-3 * s
        return (4.0 * central(0.5 * h) - central(h)) / 3.0
    raise DomainError(f"unknown derivative method {method!r}")
