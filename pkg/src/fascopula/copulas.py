"""d-dimensional Archimedean copulas: Frank, Clayton, Gumbel, independence.

Every family is handled through its closed-form CDF and, for sampling,
through the Marshall-Olkin mixture representation. Frank is restricted to
positive dependence (param > 0): for three or more dimensions the Frank
formula stops being a copula at negative parameters. Exact independence
inside Frank/Clayton (param = 0) is not representable; use the
Independence family for that.

Frank evaluations run in log space throughout, so parameters up to ~500
and arguments arbitrarily close to 0 or 1 stay accurate.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from . import _backend as _bk

__all__ = [
    "Family",
    "CopulaSpec",
    "copula_cdf",
    "diagonal_cdf",
    "generator",
    "inv_generator",
    "sample_copula",
    "kendall_tau",
]

_LN2 = 0.6931471805599453


class Family(enum.Enum):
    INDEPENDENCE = "independence"
    FRANK = "frank"
    CLAYTON = "clayton"
    GUMBEL = "gumbel"


_FAMILY_CODE = {
    Family.INDEPENDENCE: _bk.FAM_INDEPENDENCE,
    Family.FRANK: _bk.FAM_FRANK,
    Family.CLAYTON: _bk.FAM_CLAYTON,
    Family.GUMBEL: _bk.FAM_GUMBEL,
}


@dataclass(frozen=True)
class CopulaSpec:
    """Dependence family plus its scalar parameter (ignored for independence)."""

    family: Family
    param: float = 0.0

    def __post_init__(self):
        if self.family is Family.FRANK and not self.param > 0.0:
            raise ValueError(
                "Frank requires param > 0: the d-dimensional Frank formula is "
                f"only a copula under positive dependence (got {self.param}); "
                "use Family.INDEPENDENCE for the param -> 0 limit"
            )
        if self.family is Family.CLAYTON and not self.param > 0.0:
            raise ValueError(
                f"Clayton requires param > 0, got {self.param}; "
                "use Family.INDEPENDENCE for the param -> 0 limit"
            )
        if self.family is Family.GUMBEL and not self.param >= 1.0:
            raise ValueError(f"Gumbel requires param >= 1, got {self.param}")


def _log1mexp(z):
    """log(1 - exp(-z)) for z >= 0, stable at both ends."""
    z = np.asarray(z, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.log(-np.expm1(-np.minimum(z, _LN2)))
        large = np.log1p(-np.exp(-np.maximum(z, _LN2)))
    return np.where(z <= _LN2, small, large)


def _validate_unit(u):
    if np.any((u < 0.0) | (u > 1.0)):
        raise ValueError("copula arguments must lie in [0, 1]")


def copula_cdf(spec: CopulaSpec, u) -> float:
    """C(u_1, ..., u_d) for a vector of d probabilities (d >= 1)."""
    u = np.atleast_1d(np.asarray(u, dtype=np.float64))
    if u.ndim != 1 or u.size < 1:
        raise ValueError("u must be a non-empty 1-d vector")
    _validate_unit(u)
    d = u.size
    fam, par = spec.family, spec.param

    if fam is Family.INDEPENDENCE:
        return float(np.prod(u))

    if fam is Family.FRANK:
        s = float(np.sum(_log1mexp(par * u))) - (d - 1) * float(_log1mexp(par))
        return float(min(max(-_log1mexp(-s) / par, 0.0), 1.0))

    if fam is Family.CLAYTON:
        if np.any(u == 0.0):
            return 0.0
        z = -par * np.log(u)
        zmax = float(np.max(z))
        if zmax > 600.0:
            # u_j^-beta overflows; log-sum-exp of the dominant terms
            lse = zmax + math.log(float(np.sum(np.exp(z - zmax))))
            return math.exp(-lse / par)
        return math.exp(-math.log1p(float(np.sum(np.expm1(z)))) / par)

    # Gumbel
    if par == 1.0:
        return float(np.prod(u))
    with np.errstate(divide="ignore"):
        t = -np.log(u)
    tmax = float(np.max(t))
    if tmax == 0.0:
        return 1.0
    if math.isinf(tmax):
        return 0.0
    ssum = float(np.sum((t / tmax) ** par))
    return math.exp(-tmax * ssum ** (1.0 / par))


def diagonal_cdf(spec: CopulaSpec, u, d: int):
    """C(u, ..., u) for d equal arguments, in closed form per family.

    ``u`` may be a scalar or ndarray; the return type matches.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    scalar = not isinstance(u, np.ndarray)
    u = np.asarray(u, dtype=np.float64)
    _validate_unit(u)
    fam, par = spec.family, spec.param

    if fam is Family.INDEPENDENCE or (fam is Family.GUMBEL and par == 1.0):
        out = u**d
    elif fam is Family.FRANK:
        s = d * _log1mexp(par * u) - (d - 1) * _log1mexp(par)
        out = np.clip(-_log1mexp(-s) / par, 0.0, 1.0)
    elif fam is Family.CLAYTON:
        with np.errstate(divide="ignore"):
            z = -par * np.log(u)
        asym = u * d ** (-1.0 / par)
        with np.errstate(invalid="ignore"):
            main = np.exp(-np.log1p(d * np.expm1(np.minimum(z, 600.0))) / par)
        out = np.where(z > 600.0, asym, main)
    else:
        with np.errstate(divide="ignore"):
            out = np.exp(d ** (1.0 / par) * np.log(u))

    return float(out) if scalar else out


def _diagonal_derivative(spec: CopulaSpec, u, d: int):
    """d/du of diagonal_cdf(spec, u, d); scalar u in [0, 1]."""
    fam, par = spec.family, spec.param
    if u <= 0.0:
        # u -> 0+ limits: Clayton tends to d^(-1/beta), the rest vanish
        # unless d = 1 where every diagonal is the identity
        if fam is Family.CLAYTON:
            return d ** (-1.0 / par)
        return 1.0 if d == 1 else 0.0
    if fam is Family.INDEPENDENCE or (fam is Family.GUMBEL and par == 1.0):
        return d * u ** (d - 1)
    if fam is Family.FRANK:
        lau = float(_log1mexp(par * u))
        la = float(_log1mexp(par))
        s = d * lau - (d - 1) * la
        ln_num = math.log(d) - par * u + (d - 1) * (lau - la)
        return math.exp(ln_num - math.log(-math.expm1(s)))
    if fam is Family.CLAYTON:
        z = -par * math.log(u)
        if z > 600.0:
            return d ** (-1.0 / par)
        ln_s = math.log1p(d * math.expm1(z))
        return math.exp(math.log(d) - (par + 1.0) * math.log(u) - (1.0 / par + 1.0) * ln_s)
    # Gumbel
    c = d ** (1.0 / par)
    return c * math.exp((c - 1.0) * math.log(u))


def generator(spec: CopulaSpec, t):
    """Archimedean generator phi(t) on t in (0, 1]; phi(1) = 0."""
    scalar = not isinstance(t, np.ndarray)
    t = np.asarray(t, dtype=np.float64)
    if np.any((t <= 0.0) | (t > 1.0)):
        raise ValueError("generator requires t in (0, 1]")
    fam, par = spec.family, spec.param
    with np.errstate(over="ignore"):
        if fam is Family.INDEPENDENCE:
            out = -np.log(t)
        elif fam is Family.FRANK:
            out = _log1mexp(par) - _log1mexp(par * t)
        elif fam is Family.CLAYTON:
            # overflows to inf below t ~ 10^(-308/param); psi maps inf back to 0
            out = np.expm1(-par * np.log(t)) / par
        else:
            out = (-np.log(t)) ** par
    return float(out) if scalar else out


def inv_generator(spec: CopulaSpec, s):
    """Inverse generator psi(s) on s >= 0; psi(0) = 1 and psi(phi(t)) = t."""
    scalar = not isinstance(s, np.ndarray)
    s = np.asarray(s, dtype=np.float64)
    if np.any(s < 0.0):
        raise ValueError("inv_generator requires s >= 0")
    fam, par = spec.family, spec.param
    if fam is Family.INDEPENDENCE:
        out = np.exp(-s)
    elif fam is Family.FRANK:
        out = -_log1mexp(s - _log1mexp(par)) / par
    elif fam is Family.CLAYTON:
        out = np.exp(-np.log1p(par * s) / par)
    else:
        out = np.exp(-(s ** (1.0 / par)))
    return float(out) if scalar else out


def sample_copula(spec: CopulaSpec, d: int, rng: np.random.Generator, size=None):
    """Draw from the copula via Marshall-Olkin mixture sampling.

    Latent mixing variable per family: Clayton uses a gamma variate
    (through the incomplete-gamma inverse), Gumbel a positive stable
    variate (Chambers-Mallows-Stuck construction), Frank a
    logarithmic-series variate (Kemp's inversion). ``size=None`` returns a
    single draw of shape (d,); an integer returns shape (size, d).

    Only the supplied ``rng`` is mutated; give each worker its own
    independently seeded stream for parallel use.
    """
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    n = 1 if size is None else int(size)
    if n < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    out = _bk.copula_sample_block(_FAMILY_CODE[spec.family], spec.param, n, d, rng)
    return out[0] if size is None else out


def _debye1(x: float) -> float:
    integrand = lambda t: t / math.expm1(t) if t > 0.0 else 1.0
    value, _ = quad(integrand, 0.0, x, limit=200)
    return value / x


def kendall_tau(spec: CopulaSpec) -> float:
    """Population Kendall rank correlation of any bivariate margin."""
    fam, par = spec.family, spec.param
    if fam is Family.INDEPENDENCE:
        return 0.0
    if fam is Family.CLAYTON:
        return par / (par + 2.0)
    if fam is Family.GUMBEL:
        return 1.0 - 1.0 / par
    return 1.0 - 4.0 / par * (1.0 - _debye1(par))
