"""Per-port fading amplitude law: Nakagami-m (Rayleigh at shape 1)."""

import math
from dataclasses import dataclass

import numpy as np

from .special import inv_reg_lower_inc_gamma, reg_lower_inc_gamma

__all__ = ["NakagamiParams"]


@dataclass(frozen=True)
class NakagamiParams:
    """Nakagami-m amplitude distribution.

    Parameters
    ----------
    shape : float
        Fading severity m >= 0.5; shape 1 recovers Rayleigh fading.
    spread : float
        Mean channel power (> 0).
    """

    shape: float
    spread: float

    def __post_init__(self):
        if not self.shape >= 0.5:
            raise ValueError(f"shape must be >= 0.5, got {self.shape}")
        if not self.spread > 0.0:
            raise ValueError(f"spread must be > 0, got {self.spread}")

    def pdf(self, r):
        """Amplitude density 2 m^m / (Gamma(m) mu^m) r^(2m-1) exp(-m r^2 / mu)."""
        m, mu = self.shape, self.spread
        ln_norm = math.log(2.0) + m * math.log(m / mu) - math.lgamma(m)
        if isinstance(r, np.ndarray):
            if np.any(r < 0.0):
                raise ValueError("pdf requires r >= 0")
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.exp(ln_norm + (2.0 * m - 1.0) * np.log(r) - (m / mu) * r * r)
            # r = 0: zero density for m > 0.5, finite limit exactly at m = 0.5
            out = np.where(r == 0.0, math.exp(ln_norm) if m == 0.5 else 0.0, out)
            return out
        if r < 0.0:
            raise ValueError(f"pdf requires r >= 0, got {r}")
        if r == 0.0:
            return math.exp(ln_norm) if m == 0.5 else 0.0
        return math.exp(ln_norm + (2.0 * m - 1.0) * math.log(r) - (m / mu) * r * r)

    def cdf(self, r):
        """P(m, m r^2 / mu); zero at r = 0, approaching 1 as r grows."""
        m, mu = self.shape, self.spread
        if isinstance(r, np.ndarray):
            if np.any(r < 0.0):
                raise ValueError("cdf requires r >= 0")
            return reg_lower_inc_gamma(m, (m / mu) * np.square(r))
        if r < 0.0:
            raise ValueError(f"cdf requires r >= 0, got {r}")
        return reg_lower_inc_gamma(m, (m / mu) * r * r)

    def quantile(self, p):
        """Amplitude r with cdf(r) = p, for p in [0, 1)."""
        m, mu = self.shape, self.spread
        x = inv_reg_lower_inc_gamma(m, p)
        return np.sqrt(mu / m * x) if isinstance(p, np.ndarray) else math.sqrt(mu / m * x)
