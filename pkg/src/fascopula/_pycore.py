"""Pure NumPy implementation of the numerical kernels.

This is the fallback backend; ``fascopula._core`` is the compiled twin.
Both expose the same functions and consume the caller-supplied random
stream in the same order (all latent uniforms for a block first, row by
row, then all port uniforms, row by row), so swapping backends keeps a
fixed-seed simulation comparable draw for draw.
"""

import math

import numpy as np

BACKEND = "python"

FAM_INDEPENDENCE = 0
FAM_FRANK = 1
FAM_CLAYTON = 2
FAM_GUMBEL = 3

_LN2 = 0.6931471805599453
# Smallest magnitude kept as a Lentz continued-fraction denominator.
_FPMIN = 2.2250738585072014e-308 / 2.220446049250313e-16
_EPS = 2.220446049250313e-16
_TINY = 1e-300


def _itmax(a):
    # series/continued fraction need O(sqrt(a)) terms near x ~ a
    return 200 + int(6.0 * math.sqrt(a))


def _gamma_series(a, x, itmax):
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(itmax):
        ap += 1.0
        term *= x / ap
        total += term
        if term < total * _EPS:
            break
    return total * math.exp(a * math.log(x) - x - math.lgamma(a))


def _gamma_cf(a, x, itmax):
    b = x + 1.0 - a
    c = 1.0 / _FPMIN
    d = 1.0 / b
    h = d
    for i in range(1, itmax + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if abs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delt = d * c
        h *= delt
        if abs(delt - 1.0) <= _EPS:
            break
    return h * math.exp(a * math.log(x) - x - math.lgamma(a))


def lower_reg_gamma(a, x):
    """P(a, x) for scalar a > 0, x >= 0. Series below a+1, Lentz CF above."""
    if x <= 0.0:
        return 0.0
    itmax = _itmax(a)
    if x < a + 1.0:
        p = _gamma_series(a, x, itmax)
    else:
        p = 1.0 - _gamma_cf(a, x, itmax)
    if p < 0.0:
        return 0.0
    return 1.0 if p > 1.0 else p


def _gamma_series_vec(a, x, itmax):
    term = np.full(x.shape, 1.0 / a)
    total = term.copy()
    ap = a
    for _ in range(itmax):
        ap += 1.0
        term = term * (x / ap)
        total += term
        if np.all(term <= total * _EPS):
            break
    with np.errstate(divide="ignore"):
        scale = np.exp(a * np.log(x) - x - math.lgamma(a))
    return total * scale


def _gamma_cf_vec(a, x, itmax):
    b = x + 1.0 - a
    c = np.full(x.shape, 1.0 / _FPMIN)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, itmax + 1):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        np.copyto(d, _FPMIN, where=np.abs(d) < _FPMIN)
        c = b + an / c
        np.copyto(c, _FPMIN, where=np.abs(c) < _FPMIN)
        d = 1.0 / d
        delt = d * c
        h *= delt
        if np.all(np.abs(delt - 1.0) <= _EPS):
            break
    return h * np.exp(a * np.log(x) - x - math.lgamma(a))


def lower_reg_gamma_vec(a, x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty(x.shape)
    itmax = _itmax(a)
    ser = x < a + 1.0
    if ser.any():
        out[ser] = _gamma_series_vec(a, x[ser], itmax)
    cf = ~ser
    if cf.any():
        out[cf] = 1.0 - _gamma_cf_vec(a, x[cf], itmax)
    return np.clip(out, 0.0, 1.0)


def _inv_init_scalar(a, p):
    if a > 1.0:
        # rational approximation of the normal quantile, then Wilson-Hilferty
        pp = p if p < 0.5 else 1.0 - p
        t = math.sqrt(-2.0 * math.log(pp))
        z = (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t)) - t
        if p < 0.5:
            z = -z
        x = a * (1.0 - 1.0 / (9.0 * a) - z / (3.0 * math.sqrt(a))) ** 3
        return x if x > 0.0 else 1e-3
    t = 1.0 - a * (0.253 + 0.12 * a)
    if p < t:
        return (p / t) ** (1.0 / a)
    return 1.0 - math.log(1.0 - (p - t) / (1.0 - t))


def _inv_init_vec(a, p):
    if a > 1.0:
        pp = np.minimum(p, 1.0 - p)
        t = np.sqrt(-2.0 * np.log(pp))
        z = (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t)) - t
        z = np.where(p < 0.5, -z, z)
        x = a * (1.0 - 1.0 / (9.0 * a) - z / (3.0 * math.sqrt(a))) ** 3
        return np.where(x > 0.0, x, 1e-3)
    t = 1.0 - a * (0.253 + 0.12 * a)
    with np.errstate(divide="ignore"):
        low = (np.minimum(p, t) / t) ** (1.0 / a)
        high = 1.0 - np.log(1.0 - (np.maximum(p, t) - t) / (1.0 - t))
    return np.where(p < t, low, high)


def inv_lower_reg_gamma(a, p, rel_eps=1e-13, max_iter=200):
    """Solve P(a, x) = p for scalar 0 <= p < 1.

    Newton iteration with a bisection safeguard from a Wilson-Hilferty
    style start. Returns NaN when the iteration cap is hit (callers turn
    that into an error); p = 1 maps to +inf for the samplers' benefit.
    """
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return math.inf
    gln = math.lgamma(a)
    # deep lower tail: P(a, x) ~ x^a / Gamma(a+1), exact to ~x relative error
    x_small = math.exp((math.log(p) + gln + math.log(a)) / a)
    if x_small < 1e-200:
        return x_small
    x = _inv_init_scalar(a, p)
    lo, hi = 0.0, math.inf
    for _ in range(max_iter):
        f = lower_reg_gamma(a, x) - p
        if f > 0.0:
            hi = x
        else:
            lo = x
        lpdf = (a - 1.0) * math.log(x) - x - gln
        xn = x - f * math.exp(-lpdf) if lpdf > -700.0 else math.nan
        # xn == x is a Newton fixed point (exact root), not a bracket escape
        if xn != x and not lo < xn < hi:
            xn = x * 2.0 if hi == math.inf else 0.5 * (lo + hi)
        if abs(xn - x) <= rel_eps * xn + _TINY:
            return xn
        x = xn
    return math.nan


def inv_lower_reg_gamma_vec(a, p, rel_eps=1e-13, max_iter=200):
    p = np.asarray(p, dtype=np.float64)
    out = np.empty(p.shape)
    out[p <= 0.0] = 0.0
    out[p >= 1.0] = np.inf
    gln = math.lgamma(a)
    mid = (p > 0.0) & (p < 1.0)
    if not mid.any():
        return out
    pm = p[mid]
    x_small = np.exp((np.log(pm) + gln + math.log(a)) / a)
    deep = x_small < 1e-200
    x = np.where(deep, x_small, _inv_init_vec(a, pm))
    lo = np.zeros_like(pm)
    hi = np.full_like(pm, np.inf)
    done = deep.copy()
    for _ in range(max_iter):
        f = lower_reg_gamma_vec(a, x) - pm
        above = f > 0.0
        hi = np.where(above, np.minimum(hi, x), hi)
        lo = np.where(above, lo, np.maximum(lo, x))
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            lpdf = (a - 1.0) * np.log(x) - x - gln
            xn = x - f * np.exp(-lpdf)
        # xn == x is a Newton fixed point (exact root), not a bracket escape
        exact = xn == x
        bad = (~((lo < xn) & (xn < hi)) | ~np.isfinite(xn)) & ~exact
        alt = np.where(np.isinf(hi), x * 2.0, 0.5 * (lo + hi))
        xn = np.where(bad, alt, xn)
        step_ok = np.abs(xn - x) <= rel_eps * xn + _TINY
        # converged lanes keep their value; the rest adopt the new iterate
        x = np.where(done, x, xn)
        done = done | step_ok
        if done.all():
            break
    x[~done] = np.nan
    out[mid] = x
    return out


def _log1mexp(z):
    """log(1 - exp(-z)) for z >= 0, stable at both ends."""
    z = np.asarray(z, dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        small = np.log(-np.expm1(-np.minimum(z, _LN2)))
        large = np.log1p(-np.exp(-np.maximum(z, _LN2)))
    return np.where(z <= _LN2, small, large)


def _logseries_kemp(v, u, param):
    # Kemp's LK inversion for the logarithmic-series(1 - e^-param) latent;
    # v drives the geometric branch, u sets q; log(1-p) = -param exactly.
    pfr = -math.expm1(-param)
    v = np.maximum(v, _TINY)
    q = -np.expm1(-param * u)
    with np.errstate(divide="ignore", invalid="ignore"):
        geo = np.floor(1.0 + np.log(v) / np.log(q))
    return np.where(v >= pfr, 1.0, np.where(v > q, 1.0, np.where(v <= q * q, geo, 2.0)))


def _stable_log(u, w, index):
    # Kanter form of the Chambers-Mallows-Stuck construction for the
    # one-sided stable law with Laplace transform exp(-s^index), in log space.
    angle = np.pi * np.clip(u, _TINY, 1.0 - 1e-16)
    lnw = np.log(np.maximum(w, _TINY))
    return (
        np.log(np.sin(index * angle))
        - np.log(np.sin(angle)) / index
        + (1.0 - index) / index * (np.log(np.sin((1.0 - index) * angle)) - lnw)
    )


def copula_sample_block(family, param, n, d, generator):
    """One block of n joint draws from the d-dimensional copula.

    Marshall-Olkin mixture sampling: latent V from the inverse
    Laplace-Stieltjes transform of the family's inverse generator, then
    U_j = psi(E_j / V) with E_j standard exponentials.
    """
    if family == FAM_GUMBEL and param == 1.0:
        family = FAM_INDEPENDENCE
    if family == FAM_INDEPENDENCE:
        return generator.random((n, d))

    if family == FAM_FRANK:
        lat = generator.random((n, 2))
        pu = generator.random((n, d))
        v_lat = _logseries_kemp(lat[:, 0], lat[:, 1], param)
        with np.errstate(divide="ignore"):
            e = -np.log(pu)
        return -_log1mexp(e / v_lat[:, None] - float(_log1mexp(param))) / param

    if family == FAM_CLAYTON:
        lat = generator.random((n, 1))
        pu = generator.random((n, d))
        v_lat = inv_lower_reg_gamma_vec(1.0 / param, lat[:, 0])
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            e = -np.log(pu)
            return np.exp(-np.log1p(e / v_lat[:, None]) / param)

    if family == FAM_GUMBEL:
        index = 1.0 / param
        lat = generator.random((n, 2))
        pu = generator.random((n, d))
        with np.errstate(divide="ignore"):
            w_lat = -np.log(np.maximum(lat[:, 1], _TINY))
            lnv = _stable_log(lat[:, 0], w_lat, index)
            e = -np.log(pu)
            t = index * (np.log(e) - lnv[:, None])
        with np.errstate(over="ignore"):
            return np.exp(-np.exp(t))

    raise ValueError(f"unknown copula family code {family}")


def max_gain_block(family, param, n, d, shapes, spreads, generator):
    """Best-port amplitude for one block: per-port quantile transform, then max."""
    u = copula_sample_block(family, param, n, d, generator)
    r = np.empty_like(u)
    for j in range(d):
        m = shapes[j]
        if m == 1.0:
            with np.errstate(divide="ignore"):
                x = -np.log1p(-u[:, j])
        else:
            x = inv_lower_reg_gamma_vec(m, u[:, j])
        r[:, j] = np.sqrt(spreads[j] / m * x)
    return r.max(axis=1)
