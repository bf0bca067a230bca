"""Outage analysis for fluid antenna systems over copula-correlated fading.

The selected-port channel gain of a K-port fluid antenna is the max of K
dependent fading amplitudes. Coupling Nakagami-m margins through an
Archimedean copula (Frank, Clayton, Gumbel, or independence) gives the
gain CDF/PDF and the outage probability in closed form; a block-parallel
Monte Carlo simulator provides an independent check of every formula.

Numerical kernels run on a compiled Cython core when available and fall
back to pure NumPy otherwise; ``backend_name()`` reports which one was
selected at import.
"""

from ._backend import backend_name
from .analysis import (
    FasConfig,
    OutageResult,
    amplitude_threshold,
    gain_cdf,
    gain_pdf,
    outage_closed_form,
    outage_general,
    outage_vs_ports,
)
from .copulas import (
    CopulaSpec,
    Family,
    copula_cdf,
    diagonal_cdf,
    generator,
    inv_generator,
    kendall_tau,
    sample_copula,
)
from .marginals import NakagamiParams
from .montecarlo import SimResult, empirical_gain_cdf, simulate_outage
from .special import (
    DEFAULT_TOLERANCE,
    NonConvergenceError,
    Tolerance,
    inv_reg_lower_inc_gamma,
    log_gamma,
    reg_lower_inc_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "FasConfig",
    "OutageResult",
    "amplitude_threshold",
    "gain_cdf",
    "gain_pdf",
    "outage_closed_form",
    "outage_general",
    "outage_vs_ports",
    "CopulaSpec",
    "Family",
    "copula_cdf",
    "diagonal_cdf",
    "generator",
    "inv_generator",
    "kendall_tau",
    "sample_copula",
    "NakagamiParams",
    "SimResult",
    "empirical_gain_cdf",
    "simulate_outage",
    "DEFAULT_TOLERANCE",
    "NonConvergenceError",
    "Tolerance",
    "inv_reg_lower_inc_gamma",
    "log_gamma",
    "reg_lower_inc_gamma",
    "__version__",
]
