"""Log-gamma and the regularized lower incomplete gamma function pair.

These back the Nakagami-m marginal: its CDF is P(m, (m/mu) r^2) and its
quantile needs the functional inverse of P. All production arithmetic is
64-bit floating point; P uses the classic regime split (power series for
x < a+1, Lentz continued fraction above) and the inverse runs a
bisection-safeguarded Newton iteration from a Wilson-Hilferty style
starting point.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import _backend as _bk

__all__ = [
    "Tolerance",
    "NonConvergenceError",
    "DEFAULT_TOLERANCE",
    "log_gamma",
    "reg_lower_inc_gamma",
    "inv_reg_lower_inc_gamma",
]


class NonConvergenceError(RuntimeError):
    """Iteration cap exhausted; indicates a numerical bug, not bad input."""


@dataclass(frozen=True)
class Tolerance:
    """Accuracy knobs for the iterative inverse."""

    rel_eps: float = 1e-13
    max_iter: int = 200

    def __post_init__(self):
        if not 0.0 < self.rel_eps <= 1e-6:
            raise ValueError(f"rel_eps must lie in (0, 1e-6], got {self.rel_eps}")
        if self.max_iter < 50:
            raise ValueError(f"max_iter must be >= 50, got {self.max_iter}")


DEFAULT_TOLERANCE = Tolerance()


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for x > 0."""
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def reg_lower_inc_gamma(a: float, x):
    """Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.

    Accepts a scalar or ndarray ``x``; returns the matching type. Values
    are clipped to [0, 1] and are nondecreasing in x.
    """
    if not a > 0.0:
        raise ValueError(f"reg_lower_inc_gamma requires a > 0, got a={a}")
    if isinstance(x, np.ndarray):
        if np.any(x < 0.0):
            raise ValueError("reg_lower_inc_gamma requires x >= 0")
        return _bk.lower_reg_gamma_vec(float(a), x)
    if x < 0.0:
        raise ValueError(f"reg_lower_inc_gamma requires x >= 0, got x={x}")
    return _bk.lower_reg_gamma(float(a), float(x))


def inv_reg_lower_inc_gamma(a: float, p, tol: Tolerance = DEFAULT_TOLERANCE):
    """Inverse of P(a, .) on p in [0, 1); p = 0 maps to 0.

    Accepts a scalar or ndarray ``p``. Raises NonConvergenceError if the
    safeguarded Newton iteration hits ``tol.max_iter`` (which valid inputs
    never do).
    """
    if not a > 0.0:
        raise ValueError(f"inv_reg_lower_inc_gamma requires a > 0, got a={a}")
    if isinstance(p, np.ndarray):
        if np.any((p < 0.0) | (p >= 1.0)):
            raise ValueError("inv_reg_lower_inc_gamma requires p in [0, 1)")
        out = _bk.inv_lower_reg_gamma_vec(float(a), p, tol.rel_eps, tol.max_iter)
        if np.any(np.isnan(out)):
            raise NonConvergenceError(
                f"incomplete gamma inverse failed for a={a} "
                f"after {tol.max_iter} iterations"
            )
        return out
    if not 0.0 <= p < 1.0:
        raise ValueError(f"inv_reg_lower_inc_gamma requires p in [0, 1), got p={p}")
    out = _bk.inv_lower_reg_gamma(float(a), float(p), tol.rel_eps, tol.max_iter)
    if math.isnan(out):
        raise NonConvergenceError(
            f"incomplete gamma inverse failed for a={a}, p={p} "
            f"after {tol.max_iter} iterations"
        )
    return out
