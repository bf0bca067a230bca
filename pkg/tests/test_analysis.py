"""Gain distribution and outage: closed forms vs the copula composition."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from fascopula import (
    CopulaSpec,
    FasConfig,
    Family,
    NakagamiParams,
    amplitude_threshold,
    gain_cdf,
    gain_pdf,
    outage_closed_form,
    outage_general,
    outage_vs_ports,
)

RAYLEIGH = NakagamiParams(1.0, 1.0)


def make_config(family, param, ports=6, m=1.0, mu=1.0, avg_snr=100.0, snr_threshold=1.0):
    return FasConfig(
        ports=ports,
        marginal=NakagamiParams(m, mu),
        copula=CopulaSpec(family, param),
        avg_snr=avg_snr,
        snr_threshold=snr_threshold,
    )


def random_configs(count, seed=0):
    rng = np.random.default_rng(seed)
    families = [Family.FRANK, Family.CLAYTON, Family.GUMBEL, Family.INDEPENDENCE]
    for _ in range(count):
        fam = families[rng.integers(len(families))]
        param = rng.uniform(1.0, 50.0) if fam is not Family.GUMBEL else rng.uniform(1.0, 50.0)
        yield make_config(
            fam,
            param,
            ports=int(rng.integers(1, 33)),
            m=rng.uniform(0.5, 10.0),
            mu=rng.uniform(0.3, 4.0),
            avg_snr=10.0 ** rng.uniform(-0.5, 4.0),
            snr_threshold=10.0 ** rng.uniform(-1.0, 1.0),
        )


class TestAmplitudeThreshold:
    def test_values(self):
        assert amplitude_threshold(1.0, 1.0) == 1.0
        assert amplitude_threshold(1.0, 100.0) == pytest.approx(0.1, rel=1e-15)
        assert amplitude_threshold(2.0, 50.0) == pytest.approx(0.2, rel=1e-15)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            amplitude_threshold(0.0, 1.0)
        with pytest.raises(ValueError):
            amplitude_threshold(1.0, -3.0)


class TestGainCdf:
    def test_single_port_is_marginal(self):
        cfg = make_config(Family.FRANK, 30.0, ports=1)
        assert gain_cdf(cfg, 1.0) == pytest.approx(RAYLEIGH.cdf(1.0), rel=1e-12)

    def test_zero_amplitude(self):
        cfg = make_config(Family.CLAYTON, 4.0)
        assert gain_cdf(cfg, 0.0) == 0.0

    def test_independent_power(self):
        cfg = make_config(Family.GUMBEL, 1.0, ports=4)
        expected = (-math.expm1(-1.0)) ** 4
        assert gain_cdf(cfg, 1.0) == pytest.approx(expected, rel=1e-13)

    def test_heterogeneous_margins(self):
        margins = (NakagamiParams(1.0, 1.0), NakagamiParams(2.0, 0.7), NakagamiParams(4.0, 1.5))
        cfg = FasConfig(
            ports=3,
            marginal=margins,
            copula=CopulaSpec(Family.CLAYTON, 3.0),
            avg_snr=10.0,
            snr_threshold=1.0,
        )
        from fascopula import copula_cdf

        r = 0.8
        expected = copula_cdf(cfg.copula, [m.cdf(r) for m in margins])
        assert gain_cdf(cfg, r) == pytest.approx(expected, rel=1e-14)


class TestGainPdf:
    def test_single_port_is_marginal_pdf(self):
        cfg = make_config(Family.FRANK, 30.0, ports=1)
        assert gain_pdf(cfg, 1.0) == pytest.approx(2.0 * math.exp(-1.0), rel=1e-12)

    def test_independent_max_density(self):
        cfg = make_config(Family.GUMBEL, 1.0, ports=3)
        f = -math.expm1(-1.0)
        expected = 3.0 * f * f * 2.0 * math.exp(-1.0)
        assert gain_pdf(cfg, 1.0) == pytest.approx(expected, rel=1e-13)

    @pytest.mark.parametrize(
        "family,param",
        [
            (Family.FRANK, 30.0),
            (Family.CLAYTON, 10.0),
            (Family.GUMBEL, 5.0),
            (Family.INDEPENDENCE, 0.0),
        ],
    )
    def test_matches_finite_difference_of_cdf(self, family, param):
        cfg = make_config(family, param, ports=6, m=2.0)
        for r in (0.3, 0.7, 1.0, 1.6):
            h = 1e-5 * r
            fd = (gain_cdf(cfg, r + h) - gain_cdf(cfg, r - h)) / (2.0 * h)
            assert gain_pdf(cfg, r) == pytest.approx(fd, rel=1e-6)

    @pytest.mark.parametrize(
        "family,param,m",
        [
            (Family.FRANK, 30.0, 1.0),
            (Family.CLAYTON, 5.0, 2.5),
            (Family.GUMBEL, 3.0, 0.5),
            (Family.INDEPENDENCE, 0.0, 4.0),
        ],
    )
    def test_integrates_to_one(self, family, param, m):
        cfg = make_config(family, param, ports=5, m=m)
        total, _ = quad(lambda r: gain_pdf(cfg, r), 1e-12, np.inf, limit=300)
        assert total == pytest.approx(1.0, abs=1e-6)

    def test_nonnegative(self):
        cfg = make_config(Family.FRANK, 50.0, ports=9)
        for r in np.geomspace(1e-3, 10.0, 50):
            assert gain_pdf(cfg, float(r)) >= 0.0

    def test_heterogeneous_uses_finite_difference(self):
        margins = (NakagamiParams(1.0, 1.0), NakagamiParams(3.0, 2.0))
        cfg = FasConfig(
            ports=2,
            marginal=margins,
            copula=CopulaSpec(Family.FRANK, 10.0),
            avg_snr=10.0,
            snr_threshold=1.0,
        )
        r = 0.9
        h = 1e-5 * r
        fd = (gain_cdf(cfg, r + h) - gain_cdf(cfg, r - h)) / (2.0 * h)
        assert gain_pdf(cfg, r) == pytest.approx(fd, rel=1e-4)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            gain_pdf(make_config(Family.FRANK, 5.0), 0.0)


class TestOutage:
    def test_siso_baseline(self):
        cfg = make_config(Family.INDEPENDENCE, 0.0, ports=1, avg_snr=10.0)
        assert outage_general(cfg).p_out == pytest.approx(-math.expm1(-0.1), rel=1e-13)

    def test_threshold_to_zero_limit(self):
        cfg = make_config(Family.FRANK, 30.0, snr_threshold=1e-250)
        assert outage_general(cfg).p_out == 0.0
        assert outage_closed_form(cfg).p_out == 0.0

    def test_threshold_far_above_support(self):
        cfg = make_config(Family.CLAYTON, 5.0, avg_snr=1e-240, snr_threshold=1.0)
        assert outage_closed_form(cfg).p_out == 1.0
        assert outage_general(cfg).p_out == pytest.approx(1.0, abs=1e-12)

    def test_gumbel_unit_theta_independence_power(self):
        cfg = make_config(Family.GUMBEL, 1.0, ports=4, avg_snr=10.0)
        expected = (-math.expm1(-0.1)) ** 4
        got = outage_closed_form(cfg)
        assert got.p_out == pytest.approx(expected, rel=1e-12)
        assert got.p_out == pytest.approx(8.200963282069584e-05, rel=1e-12)
        assert got.amplitude_threshold == pytest.approx(math.sqrt(0.1), rel=1e-15)

    @pytest.mark.parametrize(
        "family,param",
        [
            (Family.FRANK, 17.0),
            (Family.CLAYTON, 8.0),
            (Family.GUMBEL, 4.0),
            (Family.INDEPENDENCE, 0.0),
        ],
    )
    def test_single_port_reduces_to_marginal(self, family, param):
        cfg = make_config(family, param, ports=1, m=2.3, mu=1.4, avg_snr=25.0)
        thr = amplitude_threshold(1.0, 25.0)
        expected = NakagamiParams(2.3, 1.4).cdf(thr)
        assert outage_closed_form(cfg).p_out == pytest.approx(expected, rel=1e-12)

    def test_closed_matches_general_on_random_configs(self):
        for cfg in random_configs(150, seed=42):
            a = outage_closed_form(cfg).p_out
            b = outage_general(cfg).p_out
            assert abs(a - b) <= 1e-12

    def test_closed_form_rejects_heterogeneous(self):
        cfg = FasConfig(
            ports=2,
            marginal=(NakagamiParams(1, 1), NakagamiParams(2, 1)),
            copula=CopulaSpec(Family.FRANK, 5.0),
            avg_snr=10.0,
            snr_threshold=1.0,
        )
        with pytest.raises(ValueError):
            outage_closed_form(cfg)
        # the general route still works
        assert 0.0 <= outage_general(cfg).p_out <= 1.0


class TestMonotonicity:
    families = [
        (Family.FRANK, 30.0),
        (Family.CLAYTON, 30.0),
        (Family.GUMBEL, 30.0),
        (Family.INDEPENDENCE, 0.0),
    ]

    @pytest.mark.parametrize("family,param", families)
    def test_in_threshold(self, family, param):
        values = [
            outage_general(make_config(family, param, snr_threshold=t)).p_out
            for t in np.geomspace(0.01, 100.0, 25)
        ]
        assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("family,param", families)
    def test_in_avg_snr(self, family, param):
        values = [
            outage_general(make_config(family, param, avg_snr=s)).p_out
            for s in np.geomspace(0.1, 1e5, 25)
        ]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("family,param", families)
    def test_in_ports(self, family, param):
        values = [
            outage_general(make_config(family, param, ports=k)).p_out for k in range(1, 33)
        ]
        assert all(b <= a + 1e-15 for a, b in zip(values, values[1:]))

    @pytest.mark.parametrize("family", [Family.FRANK, Family.CLAYTON, Family.GUMBEL])
    def test_in_dependence_parameter(self, family):
        values = [
            outage_general(make_config(family, p, ports=6, avg_snr=50.0)).p_out
            for p in np.linspace(1.0, 50.0, 50)
        ]
        assert all(b >= a - 1e-15 for a, b in zip(values, values[1:]))

    def test_range_under_extremes(self):
        cases = [
            (Family.FRANK, 50.0),
            (Family.FRANK, 200.0),
            (Family.CLAYTON, 50.0),
            (Family.CLAYTON, 200.0),
            (Family.GUMBEL, 50.0),
            (Family.GUMBEL, 200.0),
            (Family.INDEPENDENCE, 1.0),
        ]
        for family, param in cases:
            for snr in (1e-6, 1.0, 1e6):
                for k in (1, 7, 1000, 10_000):
                    for m, mu in [(1.0, 1.0), (0.5, 1e-3), (50.0, 1e3)]:
                        cfg = make_config(family, param, ports=k, m=m, mu=mu, avg_snr=snr)
                        a = outage_closed_form(cfg).p_out
                        b = outage_general(cfg).p_out
                        assert 0.0 <= a <= 1.0
                        assert not math.isnan(b)
                        assert abs(a - b) <= 1e-12


class TestPortScaling:
    def test_gumbel_analytic_sequence(self):
        # F(threshold) = 1/2 at threshold^2 = ln 2 under Rayleigh margins
        cfg = make_config(Family.GUMBEL, 2.0, avg_snr=1.0, snr_threshold=math.log(2.0))
        got = outage_vs_ports(cfg, [1, 4, 16])
        assert got == pytest.approx([0.5, 0.25, 0.0625], rel=1e-12)

    def test_independence_powers(self):
        cfg = make_config(Family.INDEPENDENCE, 0.0, avg_snr=1.0, snr_threshold=math.log(2.0))
        got = outage_vs_ports(cfg, [1, 2, 3])
        assert got == pytest.approx([0.5, 0.25, 0.125], rel=1e-12)

    def test_frank_strictly_decreasing(self):
        cfg = make_config(Family.FRANK, 30.0)
        got = outage_vs_ports(cfg, list(range(1, 51)))
        assert np.all(np.diff(got) < 0.0)

    def test_large_port_count_tails(self):
        # F(threshold) = 0.9 exactly at threshold^2 = ln 10 under Rayleigh
        strong = dict(avg_snr=1.0, snr_threshold=math.log(10.0))
        assert outage_general(make_config(Family.FRANK, 5.0, ports=10_000, **strong)).p_out < 1e-3
        assert outage_general(make_config(Family.GUMBEL, 2.0, ports=10_000, **strong)).p_out < 1e-3
        # Clayton decays like K^(-1/beta): slow but verifiable scaling
        p1 = outage_general(make_config(Family.CLAYTON, 5.0, ports=10_000, **strong)).p_out
        p2 = outage_general(make_config(Family.CLAYTON, 5.0, ports=1_000_000, **strong)).p_out
        assert p2 < p1
        assert p2 / p1 == pytest.approx(100.0 ** (-1.0 / 5.0), rel=1e-2)

    def test_requires_strictly_increasing(self):
        cfg = make_config(Family.FRANK, 5.0)
        with pytest.raises(ValueError):
            outage_vs_ports(cfg, [1, 3, 3])


class TestConfigValidation:
    def test_invariants(self):
        with pytest.raises(ValueError):
            make_config(Family.FRANK, 5.0, ports=0)
        with pytest.raises(ValueError):
            make_config(Family.FRANK, 5.0, avg_snr=0.0)
        with pytest.raises(ValueError):
            make_config(Family.FRANK, 5.0, snr_threshold=-1.0)

    def test_marginal_vector_length_checked(self):
        with pytest.raises(ValueError):
            FasConfig(
                ports=3,
                marginal=(NakagamiParams(1, 1), NakagamiParams(2, 1)),
                copula=CopulaSpec(Family.FRANK, 5.0),
                avg_snr=10.0,
                snr_threshold=1.0,
            )
