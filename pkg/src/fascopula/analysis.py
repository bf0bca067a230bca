"""Best-port gain distribution and outage probability.

A fluid antenna picks the instantaneously strongest of its K correlated
ports, so the selected gain is the max of K dependent amplitudes and its
CDF is the copula of the per-port CDFs evaluated on the diagonal. Outage
is that CDF at the amplitude threshold sqrt(snr_threshold / avg_snr).

``outage_general`` composes the copula diagonal with the marginal and
works for any supported family, including heterogeneous per-port
marginals. ``outage_closed_form`` evaluates the Nakagami + Archimedean
outage expressions directly and exists as an independent algebraic route:
the two must agree to within 1e-12 and the test suite enforces that.
"""

import math
from dataclasses import dataclass

import numpy as np

from .copulas import CopulaSpec, Family, _diagonal_derivative, _log1mexp, copula_cdf, diagonal_cdf
from .marginals import NakagamiParams

__all__ = [
    "FasConfig",
    "OutageResult",
    "amplitude_threshold",
    "gain_cdf",
    "gain_pdf",
    "outage_general",
    "outage_closed_form",
    "outage_vs_ports",
]


@dataclass(frozen=True)
class FasConfig:
    """Full system description.

    Parameters
    ----------
    ports : int
        Number of antenna positions K (>= 1); one is active at a time.
    marginal : NakagamiParams or sequence of NakagamiParams
        Per-port amplitude law. A single value applies to all ports; a
        sequence of length ``ports`` gives heterogeneous margins.
    copula : CopulaSpec
        Dependence structure across ports.
    avg_snr : float
        Average transmit SNR (linear scale, > 0).
    snr_threshold : float
        Outage SNR threshold (linear scale, > 0).
    """

    ports: int
    marginal: object
    copula: CopulaSpec
    avg_snr: float
    snr_threshold: float

    def __post_init__(self):
        if self.ports < 1:
            raise ValueError(f"ports must be >= 1, got {self.ports}")
        if not self.avg_snr > 0.0:
            raise ValueError(f"avg_snr must be > 0, got {self.avg_snr}")
        if not self.snr_threshold > 0.0:
            raise ValueError(f"snr_threshold must be > 0, got {self.snr_threshold}")
        if not isinstance(self.marginal, NakagamiParams):
            margins = tuple(self.marginal)
            if len(margins) != self.ports:
                raise ValueError(
                    f"got {len(margins)} per-port marginals for {self.ports} ports"
                )
            if not all(isinstance(m, NakagamiParams) for m in margins):
                raise ValueError("per-port marginals must be NakagamiParams")
            object.__setattr__(self, "marginal", margins)

    @property
    def is_homogeneous(self) -> bool:
        if isinstance(self.marginal, NakagamiParams):
            return True
        return all(m == self.marginal[0] for m in self.marginal)

    @property
    def port_marginals(self) -> tuple:
        if isinstance(self.marginal, NakagamiParams):
            return (self.marginal,) * self.ports
        return self.marginal


@dataclass(frozen=True)
class OutageResult:
    """Outage probability plus the amplitude threshold it was evaluated at."""

    p_out: float
    amplitude_threshold: float


def amplitude_threshold(snr_threshold: float, avg_snr: float) -> float:
    """Amplitude below which the selected port is in outage: sqrt(th / avg)."""
    if not snr_threshold > 0.0:
        raise ValueError(f"snr_threshold must be > 0, got {snr_threshold}")
    if not avg_snr > 0.0:
        raise ValueError(f"avg_snr must be > 0, got {avg_snr}")
    return math.sqrt(snr_threshold / avg_snr)


def gain_cdf(config: FasConfig, r: float) -> float:
    """CDF of the selected (best-port) amplitude at r >= 0."""
    if r < 0.0:
        raise ValueError(f"gain_cdf requires r >= 0, got {r}")
    if isinstance(config.marginal, NakagamiParams):
        return float(diagonal_cdf(config.copula, config.marginal.cdf(r), config.ports))
    return copula_cdf(config.copula, [m.cdf(r) for m in config.port_marginals])


def gain_pdf(config: FasConfig, r: float) -> float:
    """Density of the selected amplitude at r > 0.

    Homogeneous margins use the analytic derivative of the copula
    diagonal; heterogeneous margins fall back to a central finite
    difference of ``gain_cdf``.
    """
    if not r > 0.0:
        raise ValueError(f"gain_pdf requires r > 0, got {r}")
    if isinstance(config.marginal, NakagamiParams):
        marg = config.marginal
        return marg.pdf(r) * _diagonal_derivative(config.copula, marg.cdf(r), config.ports)
    h = r * 6e-6
    lo = max(r - h, 0.0)
    return (gain_cdf(config, r + h) - gain_cdf(config, lo)) / (r + h - lo)


def outage_general(config: FasConfig) -> OutageResult:
    """Outage probability through the copula composition (any margins)."""
    thr = amplitude_threshold(config.snr_threshold, config.avg_snr)
    return OutageResult(p_out=gain_cdf(config, thr), amplitude_threshold=thr)


def outage_closed_form(config: FasConfig) -> OutageResult:
    """Outage probability from the direct Nakagami + Archimedean expressions.

    Requires identical margins on every port; heterogeneous margins have
    no single closed form and raise ValueError.
    """
    if not config.is_homogeneous:
        raise ValueError(
            "outage_closed_form requires identical margins on every port; "
            "use outage_general for heterogeneous configurations"
        )
    thr = amplitude_threshold(config.snr_threshold, config.avg_snr)
    f = config.port_marginals[0].cdf(thr)
    k = config.ports
    fam, par = config.copula.family, config.copula.param

    if f <= 0.0:
        return OutageResult(0.0, thr)
    if f >= 1.0:
        return OutageResult(1.0, thr)

    if fam is Family.INDEPENDENCE or (fam is Family.GUMBEL and par == 1.0):
        p = f**k
    elif fam is Family.FRANK:
        s = k * float(_log1mexp(par * f)) - (k - 1) * float(_log1mexp(par))
        p = -float(_log1mexp(-s)) / par
    elif fam is Family.CLAYTON:
        z = -par * math.log(f)
        if z > 600.0:
            p = f * k ** (-1.0 / par)
        else:
            p = math.exp(-math.log1p(k * math.expm1(z)) / par)
    elif fam is Family.GUMBEL:
        p = math.exp(k ** (1.0 / par) * math.log(f))
    else:
        raise ValueError(f"no closed form for copula family {fam}")
    return OutageResult(p_out=min(max(p, 0.0), 1.0), amplitude_threshold=thr)


def outage_vs_ports(config: FasConfig, ports_list) -> np.ndarray:
    """Outage probability for each port count in a strictly increasing list.

    The copula parameter, margins, and SNR quantities are taken from
    ``config``; its ``ports`` field is ignored. Homogeneous margins only.
    """
    ports_list = [int(k) for k in ports_list]
    if not ports_list:
        raise ValueError("ports_list must be non-empty")
    if any(b <= a for a, b in zip(ports_list, ports_list[1:])):
        raise ValueError("ports_list must be strictly increasing")
    if not config.is_homogeneous:
        raise ValueError("outage_vs_ports requires homogeneous margins")
    marg = config.port_marginals[0]
    out = np.empty(len(ports_list))
    for i, k in enumerate(ports_list):
        cfg = FasConfig(
            ports=k,
            marginal=marg,
            copula=config.copula,
            avg_snr=config.avg_snr,
            snr_threshold=config.snr_threshold,
        )
        out[i] = outage_general(cfg).p_out
    return out
