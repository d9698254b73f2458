"""Hard-edge smallest-eigenvalue statistics of complex Wishart matrices.

The package evaluates the gap probability F(s) = P(lambda_min >= endpoint)
of the Laguerre unitary ensemble, both at finite matrix order and in the
hard-edge limit, as spectrally convergent Fredholm determinants; measures
the convergence rates connecting the two (including the first-order
correction built from the limit density and the optimally tuned scaling
that removes it); and cross-checks everything against an independent
Monte Carlo sampler.
"""

__version__ = "0.1.0"

from .distributions import (
    DistributionTable,
    TableRow,
    finite_cdf,
    finite_table,
    limit_cdf,
    limit_density,
    limit_table,
)
from .errors import (
    AccuracyError,
    DomainError,
    HardEdgeError,
    NumericError,
    SingularPointError,
)
from .expansion import (
    ExpansionReport,
    conjecture_residual,
    fit_slope,
    kernel_expansion_rate,
    mehler_heine_residual,
    optimal_scaling_residual,
    rate_report,
    taylor_step_residual,
    uncorrected_difference,
)
from .fredholm import (
    DeterminantResult,
    gram_det,
    log_derivative,
    nystrom_det,
    resolvent_quadratic_form,
)
from .kernels import (
    KernelSpec,
    bessel_kernel_entire,
    bessel_spec,
    correction_kernel,
    finite_spec,
    hat_bessel_j,
    kernel_expansion_residual,
    kernel_matrix,
    laguerre_kernel_entire,
)
from .montecarlo import SampleBatch, analytic_smallest_cdf, ks_compare, sample_smallest
from .quadrature import QuadratureRule, gauss_jacobi, scale_rule
from .specfun import (
    bessel_entire,
    bessel_j_sqrt,
    laguerre,
    laguerre_phi,
    log_gamma,
    reg_upper_gamma,
)

__all__ = [
    "__version__",
    "AccuracyError",
    "DistributionTable",
    "DeterminantResult",
    "DomainError",
    "ExpansionReport",
    "HardEdgeError",
    "KernelSpec",
    "NumericError",
    "QuadratureRule",
    "SampleBatch",
    "SingularPointError",
    "TableRow",
    "analytic_smallest_cdf",
    "bessel_entire",
    "bessel_j_sqrt",
    "bessel_kernel_entire",
    "bessel_spec",
    "conjecture_residual",
    "correction_kernel",
    "finite_cdf",
    "finite_spec",
    "finite_table",
    "fit_slope",
    "gauss_jacobi",
    "gram_det",
    "hat_bessel_j",
    "kernel_expansion_rate",
    "kernel_expansion_residual",
    "kernel_matrix",
    "ks_compare",
    "laguerre",
    "laguerre_kernel_entire",
    "laguerre_phi",
    "limit_cdf",
    "limit_density",
    "limit_table",
    "log_derivative",
    "log_gamma",
    "mehler_heine_residual",
    "nystrom_det",
    "optimal_scaling_residual",
    "rate_report",
    "reg_upper_gamma",
    "resolvent_quadratic_form",
    "sample_smallest",
    "scale_rule",
    "taylor_step_residual",
    "uncorrected_difference",
]
