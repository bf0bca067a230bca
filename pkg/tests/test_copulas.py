"""Copula axioms, closed diagonals, generators, and rank correlation."""

import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fascopula import (
    CopulaSpec,
    Family,
    copula_cdf,
    diagonal_cdf,
    generator,
    inv_generator,
    kendall_tau,
)

mpmath.mp.dps = 40

# Frozen 40-digit value of -(1/5) ln(1 + (e^-2.5 - 1)^2 / (e^-5 - 1))
FRANK_HALF_HALF_A5 = 0.37714851074652086

# Frozen Debye-based Frank rank correlations: 1 - 4/a (1 - D1(a))
FRANK_TAU_30 = 0.8739774847415348
FRANK_TAU_10 = 0.6657773862719784


def spec_strategy():
    frank = st.floats(0.05, 50.0).map(lambda p: CopulaSpec(Family.FRANK, p))
    clayton = st.floats(0.05, 50.0).map(lambda p: CopulaSpec(Family.CLAYTON, p))
    gumbel = st.floats(1.0, 50.0).map(lambda p: CopulaSpec(Family.GUMBEL, p))
    indep = st.just(CopulaSpec(Family.INDEPENDENCE))
    return st.one_of(frank, clayton, gumbel, indep)


UNIT = st.floats(0.0, 1.0)


class TestCdfExamples:
    @pytest.mark.parametrize(
        "spec",
        [
            CopulaSpec(Family.INDEPENDENCE),
            CopulaSpec(Family.FRANK, 5.0),
            CopulaSpec(Family.CLAYTON, 2.0),
            CopulaSpec(Family.GUMBEL, 3.0),
        ],
    )
    def test_grounded_and_all_ones(self, spec):
        assert copula_cdf(spec, [1.0, 1.0, 1.0, 1.0]) == pytest.approx(1.0, abs=1e-12)
        assert copula_cdf(spec, [0.7, 0.0, 0.9]) == 0.0

    def test_frank_bivariate_value(self):
        got = copula_cdf(CopulaSpec(Family.FRANK, 5.0), [0.5, 0.5])
        assert got == pytest.approx(FRANK_HALF_HALF_A5, rel=1e-12)
        # recompute the oracle from the defining formula at high precision
        al = mpmath.mpf(5)
        exact = -(1 / al) * mpmath.log(1 + (mpmath.e ** (-al / 2) - 1) ** 2 / (mpmath.e**-al - 1))
        assert got == pytest.approx(float(exact), rel=1e-12)

    def test_gumbel_at_one_is_product(self):
        got = copula_cdf(CopulaSpec(Family.GUMBEL, 1.0), [0.3, 0.7])
        assert got == pytest.approx(0.21, abs=1e-15)


class TestDiagonal:
    def test_gumbel_unit_parameter_power(self):
        assert diagonal_cdf(CopulaSpec(Family.GUMBEL, 1.0), 0.5, 4) == pytest.approx(0.0625, abs=1e-15)

    def test_one_is_fixed_point(self):
        for spec in (
            CopulaSpec(Family.FRANK, 30.0),
            CopulaSpec(Family.CLAYTON, 30.0),
            CopulaSpec(Family.GUMBEL, 30.0),
            CopulaSpec(Family.INDEPENDENCE),
        ):
            assert diagonal_cdf(spec, 1.0, 7) == pytest.approx(1.0, abs=1e-12)

    def test_clayton_closed_form(self):
        got = diagonal_cdf(CopulaSpec(Family.CLAYTON, 2.0), 0.5, 3)
        assert got == pytest.approx(10.0**-0.5, rel=1e-13)

    @given(spec=spec_strategy(), u=st.floats(1e-6, 1.0), d=st.integers(1, 16))
    @settings(max_examples=300)
    def test_matches_replicated_cdf(self, spec, u, d):
        diag = diagonal_cdf(spec, u, d)
        full = copula_cdf(spec, [u] * d)
        assert abs(diag - full) <= 1e-12

    def test_array_argument(self):
        spec = CopulaSpec(Family.FRANK, 12.0)
        u = np.array([0.0, 0.2, 0.8, 1.0])
        diag = diagonal_cdf(spec, u, 5)
        assert diag.shape == u.shape
        for ui, di in zip(u, diag):
            assert di == pytest.approx(diagonal_cdf(spec, float(ui), 5), abs=1e-15)


class TestAxioms:
    @given(spec=spec_strategy(), u=st.lists(UNIT, min_size=1, max_size=8), j=st.integers(0, 7))
    @settings(max_examples=300)
    def test_grounded(self, spec, u, j):
        u = list(u)
        u[j % len(u)] = 0.0
        assert copula_cdf(spec, u) == pytest.approx(0.0, abs=1e-15)

    @given(spec=spec_strategy(), u=UNIT, d=st.integers(1, 8), j=st.integers(0, 7))
    @settings(max_examples=300)
    def test_uniform_margins(self, spec, u, d, j):
        args = [1.0] * d
        args[j % d] = u
        assert abs(copula_cdf(spec, args) - u) <= 1e-12

    @given(
        spec=spec_strategy(),
        u=st.lists(st.floats(0.0, 1.0), min_size=2, max_size=8),
        j=st.integers(0, 7),
        bump=st.floats(0.0, 1.0),
    )
    @settings(max_examples=300)
    def test_nondecreasing_in_each_coordinate(self, spec, u, j, bump):
        j = j % len(u)
        hi = list(u)
        hi[j] = min(1.0, u[j] + bump * (1.0 - u[j]))
        assert copula_cdf(spec, hi) >= copula_cdf(spec, u) - 1e-12

    @given(spec=spec_strategy(), u=st.lists(UNIT, min_size=1, max_size=8))
    @settings(max_examples=300)
    def test_frechet_hoeffding_bounds(self, spec, u):
        c = copula_cdf(spec, u)
        lower = max(sum(u) - (len(u) - 1), 0.0)
        assert c >= lower - 1e-9
        assert c <= min(u) + 1e-9


class TestIndependenceLimits:
    def test_frank_vanishing_parameter(self):
        u = [0.3, 0.8, 0.55]
        got = copula_cdf(CopulaSpec(Family.FRANK, 1e-6), u)
        assert got == pytest.approx(math.prod(u), abs=1e-5)

    def test_clayton_vanishing_parameter(self):
        u = [0.3, 0.8, 0.55]
        got = copula_cdf(CopulaSpec(Family.CLAYTON, 1e-6), u)
        assert got == pytest.approx(math.prod(u), abs=1e-5)

    def test_gumbel_exact_at_one(self):
        u = [0.3, 0.8, 0.55]
        assert copula_cdf(CopulaSpec(Family.GUMBEL, 1.0), u) == math.prod(u)


class TestGenerators:
    @pytest.mark.parametrize(
        "spec",
        [
            CopulaSpec(Family.INDEPENDENCE),
            CopulaSpec(Family.FRANK, 7.0),
            CopulaSpec(Family.CLAYTON, 3.0),
            CopulaSpec(Family.GUMBEL, 2.0),
        ],
    )
    def test_generator_vanishes_at_one(self, spec):
        assert generator(spec, 1.0) == pytest.approx(0.0, abs=1e-14)

    def test_clayton_unit_parameter(self):
        assert generator(CopulaSpec(Family.CLAYTON, 1.0), 0.5) == pytest.approx(1.0, rel=1e-14)

    def test_gumbel_inverse_value(self):
        got = inv_generator(CopulaSpec(Family.GUMBEL, 2.0), 4.0)
        assert got == pytest.approx(math.exp(-2.0), rel=1e-14)

    @given(spec=spec_strategy(), t=st.floats(1e-10, 1.0))
    @settings(max_examples=300)
    def test_round_trip(self, spec, t):
        phi = generator(spec, t)
        # Clayton's generator exceeds float range below t ~ 10^(-308/param)
        assume(math.isfinite(phi))
        back = inv_generator(spec, phi)
        assert abs(back - t) <= 1e-12

    def test_domain_errors(self):
        spec = CopulaSpec(Family.FRANK, 2.0)
        with pytest.raises(ValueError):
            generator(spec, 0.0)
        with pytest.raises(ValueError):
            generator(spec, 1.1)
        with pytest.raises(ValueError):
            inv_generator(spec, -0.1)


class TestSpecValidation:
    def test_frank_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            CopulaSpec(Family.FRANK, 0.0)
        with pytest.raises(ValueError):
            CopulaSpec(Family.FRANK, -3.0)

    def test_clayton_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            CopulaSpec(Family.CLAYTON, 0.0)

    def test_gumbel_rejects_below_one(self):
        with pytest.raises(ValueError):
            CopulaSpec(Family.GUMBEL, 0.99)

    def test_cdf_rejects_out_of_range(self):
        spec = CopulaSpec(Family.CLAYTON, 1.0)
        with pytest.raises(ValueError):
            copula_cdf(spec, [0.5, 1.2])
        with pytest.raises(ValueError):
            diagonal_cdf(spec, -0.1, 3)


class TestKendallTau:
    def test_clayton(self):
        assert kendall_tau(CopulaSpec(Family.CLAYTON, 2.0)) == pytest.approx(0.5, abs=1e-15)

    def test_gumbel_independent(self):
        assert kendall_tau(CopulaSpec(Family.GUMBEL, 1.0)) == 0.0

    def test_independence(self):
        assert kendall_tau(CopulaSpec(Family.INDEPENDENCE)) == 0.0

    def test_frank_debye_values(self):
        assert kendall_tau(CopulaSpec(Family.FRANK, 30.0)) == pytest.approx(FRANK_TAU_30, abs=1e-10)
        assert kendall_tau(CopulaSpec(Family.FRANK, 10.0)) == pytest.approx(FRANK_TAU_10, abs=1e-10)

    def test_frank_against_mpmath_quadrature(self):
        al = mpmath.mpf(30)
        d1 = mpmath.quad(lambda t: t / mpmath.expm1(t) if t > 0 else mpmath.mpf(1), [0, al]) / al
        exact = float(1 - 4 / al * (1 - d1))
        assert kendall_tau(CopulaSpec(Family.FRANK, 30.0)) == pytest.approx(exact, abs=1e-12)
