# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the numerical kernels.

Mirror of ``fascopula._pycore``: same functions, same formulas, and the
same consumption order of the caller-supplied random stream (all latent
uniforms for a block first, row by row, then all port uniforms, row by
row). The scalar special functions run without the GIL so Monte Carlo
blocks can execute on worker threads.
"""

import numpy as np

from cpython.pycapsule cimport PyCapsule_GetPointer, PyCapsule_IsValid
from libc.math cimport (INFINITY, NAN, exp, expm1, fabs, floor, lgamma, log,
                        log1p, sin, sqrt)
from numpy.random cimport bitgen_t

BACKEND = "compiled"

FAM_INDEPENDENCE = 0
FAM_FRANK = 1
FAM_CLAYTON = 2
FAM_GUMBEL = 3

cdef int _FAM_INDEPENDENCE = 0
cdef int _FAM_FRANK = 1
cdef int _FAM_CLAYTON = 2
cdef int _FAM_GUMBEL = 3

cdef double _LN2 = 0.6931471805599453
cdef double _FPMIN = 2.2250738585072014e-308 / 2.220446049250313e-16
cdef double _EPS = 2.220446049250313e-16
cdef double _TINY = 1e-300
cdef double _PI = 3.141592653589793


cdef inline int _itmax(double a) nogil:
    return 200 + <int>(6.0 * sqrt(a))


cdef double _gamma_series(double a, double x, int itmax) nogil:
    cdef double term = 1.0 / a
    cdef double total = term
    cdef double ap = a
    cdef int i
    for i in range(itmax):
        ap += 1.0
        term *= x / ap
        total += term
        if term < total * _EPS:
            break
    return total * exp(a * log(x) - x - lgamma(a))


cdef double _gamma_cf(double a, double x, int itmax) nogil:
    cdef double b = x + 1.0 - a
    cdef double c = 1.0 / _FPMIN
    cdef double d = 1.0 / b
    cdef double h = d
    cdef double an, delt
    cdef int i
    for i in range(1, itmax + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if fabs(d) < _FPMIN:
            d = _FPMIN
        c = b + an / c
        if fabs(c) < _FPMIN:
            c = _FPMIN
        d = 1.0 / d
        delt = d * c
        h *= delt
        if fabs(delt - 1.0) <= _EPS:
            break
    return h * exp(a * log(x) - x - lgamma(a))


cdef double _lower_reg_gamma(double a, double x) nogil:
    cdef double p
    if x <= 0.0:
        return 0.0
    cdef int itmax = _itmax(a)
    if x < a + 1.0:
        p = _gamma_series(a, x, itmax)
    else:
        p = 1.0 - _gamma_cf(a, x, itmax)
    if p < 0.0:
        return 0.0
    return 1.0 if p > 1.0 else p


cdef double _inv_init(double a, double p) nogil:
    cdef double pp, t, z, x
    if a > 1.0:
        pp = p if p < 0.5 else 1.0 - p
        t = sqrt(-2.0 * log(pp))
        z = (2.30753 + 0.27061 * t) / (1.0 + t * (0.99229 + 0.04481 * t)) - t
        if p < 0.5:
            z = -z
        x = 1.0 - 1.0 / (9.0 * a) - z / (3.0 * sqrt(a))
        x = a * x * x * x
        return x if x > 0.0 else 1e-3
    t = 1.0 - a * (0.253 + 0.12 * a)
    if p < t:
        return exp(log(p / t) / a)
    return 1.0 - log(1.0 - (p - t) / (1.0 - t))


cdef double _inv_lower_reg_gamma(double a, double p, double rel_eps,
                                 int max_iter) nogil:
    cdef double gln, x_small, x, lo, hi, f, lpdf, xn
    cdef int i
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return INFINITY
    gln = lgamma(a)
    x_small = exp((log(p) + gln + log(a)) / a)
    if x_small < 1e-200:
        return x_small
    x = _inv_init(a, p)
    lo = 0.0
    hi = INFINITY
    for i in range(max_iter):
        f = _lower_reg_gamma(a, x) - p
        if f > 0.0:
            hi = x
        else:
            lo = x
        lpdf = (a - 1.0) * log(x) - x - gln
        if lpdf > -700.0:
            xn = x - f * exp(-lpdf)
        else:
            xn = NAN
        # xn == x is a Newton fixed point (exact root), not a bracket escape
        if xn != x and not (lo < xn < hi):
            xn = x * 2.0 if hi == INFINITY else 0.5 * (lo + hi)
        if fabs(xn - x) <= rel_eps * xn + _TINY:
            return xn
        x = xn
    return NAN


cdef inline double _log1mexp(double z) nogil:
    # log(1 - exp(-z)) for z >= 0, stable at both ends
    if z <= 0.0:
        return -INFINITY
    if z <= _LN2:
        return log(-expm1(-z))
    return log1p(-exp(-z))


def lower_reg_gamma(double a, double x):
    return _lower_reg_gamma(a, x)


def inv_lower_reg_gamma(double a, double p, double rel_eps=1e-13,
                        int max_iter=200):
    return _inv_lower_reg_gamma(a, p, rel_eps, max_iter)


def lower_reg_gamma_vec(double a, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out_arr = np.empty(xv.shape[0])
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _lower_reg_gamma(a, xv[i])
    return out_arr.reshape(np.shape(x))


def inv_lower_reg_gamma_vec(double a, p, double rel_eps=1e-13,
                            int max_iter=200):
    cdef double[::1] pv = np.ascontiguousarray(p, dtype=np.float64).ravel()
    out_arr = np.empty(pv.shape[0])
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, n = pv.shape[0]
    with nogil:
        for i in range(n):
            out[i] = _inv_lower_reg_gamma(a, pv[i], rel_eps, max_iter)
    return out_arr.reshape(np.shape(p))


cdef bitgen_t *_bitgen(object bit_generator):
    capsule = bit_generator.capsule
    if not PyCapsule_IsValid(capsule, "BitGenerator"):
        raise ValueError("invalid BitGenerator capsule")
    return <bitgen_t *> PyCapsule_GetPointer(capsule, "BitGenerator")


cdef void _latent_pass(bitgen_t *rng, int family, double param,
                       double[::1] lat, Py_ssize_t n) nogil:
    # one latent mixing variable per trial; draw budget is fixed per family
    # (Frank 2, Clayton 1, Gumbel 2 uniforms) so streams stay aligned
    cdef Py_ssize_t i
    cdef double v, u, q, pfr, index, angle, w
    if family == _FAM_FRANK:
        pfr = -expm1(-param)
        for i in range(n):
            v = rng.next_double(rng.state)
            u = rng.next_double(rng.state)
            if v < _TINY:
                v = _TINY
            q = -expm1(-param * u)
            if v >= pfr:
                lat[i] = 1.0
            elif v > q:
                lat[i] = 1.0
            elif v <= q * q:
                lat[i] = floor(1.0 + log(v) / log(q))
            else:
                lat[i] = 2.0
    elif family == _FAM_CLAYTON:
        for i in range(n):
            u = rng.next_double(rng.state)
            lat[i] = _inv_lower_reg_gamma(1.0 / param, u, 1e-13, 200)
    elif family == _FAM_GUMBEL:
        index = 1.0 / param
        for i in range(n):
            u = rng.next_double(rng.state)
            v = rng.next_double(rng.state)
            if u < _TINY:
                u = _TINY
            elif u > 1.0 - 1e-16:
                u = 1.0 - 1e-16
            angle = _PI * u
            w = -log(v if v > _TINY else _TINY)
            lat[i] = (log(sin(index * angle))
                      - log(sin(angle)) / index
                      + (1.0 - index) / index
                      * (log(sin((1.0 - index) * angle)) - log(w)))


cdef inline double _port_uniform(bitgen_t *rng, int family, double param,
                                 double log1mexp_param, double lat) nogil:
    # psi(E / V) for one port; lat holds V (Frank, Clayton) or log V (Gumbel)
    cdef double u, e, t
    u = rng.next_double(rng.state)
    if family == _FAM_INDEPENDENCE:
        return u
    e = -log(u) if u > 0.0 else INFINITY
    if family == _FAM_FRANK:
        return -_log1mexp(e / lat - log1mexp_param) / param
    if family == _FAM_CLAYTON:
        return exp(-log1p(e / lat) / param)
    t = (log(e) - lat) / param
    if t > 700.0:
        return 0.0
    return exp(-exp(t))


def copula_sample_block(int family, double param, Py_ssize_t n, Py_ssize_t d,
                        object generator):
    """One block of n joint draws from the d-dimensional copula."""
    if family == _FAM_GUMBEL and param == 1.0:
        family = _FAM_INDEPENDENCE
    bit_generator = generator.bit_generator
    cdef bitgen_t *rng = _bitgen(bit_generator)
    out_arr = np.empty((n, d))
    cdef double[:, ::1] out = out_arr
    lat_arr = np.empty(n if family != _FAM_INDEPENDENCE else 0)
    cdef double[::1] lat = lat_arr
    cdef double lm = _log1mexp(param) if family == _FAM_FRANK else 0.0
    cdef Py_ssize_t i, j
    with bit_generator.lock:
        with nogil:
            if family != _FAM_INDEPENDENCE:
                _latent_pass(rng, family, param, lat, n)
            for i in range(n):
                for j in range(d):
                    out[i, j] = _port_uniform(
                        rng, family, param, lm,
                        lat[i] if family != _FAM_INDEPENDENCE else 0.0)
    return out_arr


def max_gain_block(int family, double param, Py_ssize_t n, Py_ssize_t d,
                   shapes, spreads, object generator):
    """Best-port amplitude per trial: per-port quantile transform, then max."""
    if family == _FAM_GUMBEL and param == 1.0:
        family = _FAM_INDEPENDENCE
    bit_generator = generator.bit_generator
    cdef bitgen_t *rng = _bitgen(bit_generator)
    cdef double[::1] mv = np.ascontiguousarray(shapes, dtype=np.float64)
    cdef double[::1] sv = np.ascontiguousarray(spreads, dtype=np.float64)
    if mv.shape[0] != d or sv.shape[0] != d:
        raise ValueError("shapes/spreads must have length d")
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    lat_arr = np.empty(n if family != _FAM_INDEPENDENCE else 0)
    cdef double[::1] lat = lat_arr
    cdef double lm = _log1mexp(param) if family == _FAM_FRANK else 0.0
    cdef Py_ssize_t i, j
    cdef double u, x, r, best
    with bit_generator.lock:
        with nogil:
            if family != _FAM_INDEPENDENCE:
                _latent_pass(rng, family, param, lat, n)
            for i in range(n):
                best = 0.0
                for j in range(d):
                    u = _port_uniform(
                        rng, family, param, lm,
                        lat[i] if family != _FAM_INDEPENDENCE else 0.0)
                    if mv[j] == 1.0:
                        x = -log1p(-u) if u < 1.0 else INFINITY
                    else:
                        x = _inv_lower_reg_gamma(mv[j], u, 1e-13, 200)
                    r = sqrt(sv[j] / mv[j] * x)
                    if r > best or r != r:
                        best = r
                out[i] = best
    return out_arr
