import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from evtail import (
    DomainError,
    FitError,
    GpdParams,
    asymptotic_sd,
    cv_covariance,
    cv_of_xi,
    gpd_cdf,
    gpd_log_likelihood,
    gpd_mle_fit,
    gpd_quantile,
    gpd_sample,
    residual_params,
    xi_of_cv,
)

xis = st.floats(min_value=-2.0, max_value=2.0, allow_nan=False)
psis = st.floats(min_value=0.01, max_value=100.0)


class TestParams:
    def test_psi_must_be_positive(self):
        with pytest.raises(DomainError):
            GpdParams(0.1, 0.0)
        with pytest.raises(DomainError):
            GpdParams(0.1, -1.0)

    def test_endpoint(self):
        assert GpdParams(0.3, 1.0).endpoint == math.inf
        assert GpdParams(0.0, 1.0).endpoint == math.inf
        assert GpdParams(-0.5, 1.0).endpoint == 2.0


class TestCdfQuantile:
    def test_cdf_examples(self):
        assert gpd_cdf(GpdParams(1, 1), 1) == pytest.approx(0.5, abs=1e-15)
        assert gpd_cdf(GpdParams(0, 2), 2 * math.log(2)) == pytest.approx(0.5, abs=1e-15)
        assert gpd_cdf(GpdParams(-0.5, 1), 2) == 1.0
        assert gpd_cdf(GpdParams(-0.5, 1), 5) == 1.0
        assert gpd_cdf(GpdParams(0.3, 1), 0) == 0.0

    def test_quantile_examples(self):
        assert gpd_quantile(GpdParams(1, 1), 0.5) == pytest.approx(1.0, rel=1e-14)
        assert gpd_quantile(GpdParams(0, 1), 1 - math.exp(-1)) == pytest.approx(1.0, rel=1e-14)
        bounded = GpdParams(-1, 3)
        assert gpd_quantile(bounded, 1 - 1e-12) == pytest.approx(3.0, abs=1e-9)
        assert gpd_quantile(bounded, 1.0) == 3.0

    @pytest.mark.parametrize("xi", [0.0, 0.5])
    def test_quantile_at_one_unbounded(self, xi):
        with pytest.raises(DomainError, match="unbounded"):
            gpd_quantile(GpdParams(xi, 1), 1.0)

    def test_vectorized(self):
        p = np.linspace(0, 0.9, 10)
        q = gpd_quantile(GpdParams(0.2, 2), p)
        assert q.shape == (10,)
        assert np.all(np.diff(q) > 0)

    def test_cdf_monotone(self):
        x = np.linspace(0, 50, 2001)
        for xi in (-0.4, 0.0, 0.3, 1.2):
            assert np.all(np.diff(gpd_cdf(GpdParams(xi, 3), x)) >= 0)

    def test_continuity_at_zero_shape(self):
        x = np.array([0.1, 1.0, 5.0])
        exp_branch = gpd_cdf(GpdParams(0.0, 1.5), x)
        for xi in (1e-9, -1e-9, 1e-7, -1e-7):
            np.testing.assert_allclose(gpd_cdf(GpdParams(xi, 1.5), x), exp_branch, rtol=1e-6)
        np.testing.assert_allclose(
            gpd_quantile(GpdParams(1e-7, 1.5), [0.3, 0.9]),
            gpd_quantile(GpdParams(0.0, 1.5), [0.3, 0.9]),
            rtol=1e-6,
        )

    @settings(max_examples=300, deadline=None)
    @given(xi=xis, psi=psis, p=st.floats(min_value=0.0, max_value=0.999))
    def test_roundtrip(self, xi, psi, p):
        params = GpdParams(xi, psi)
        assert abs(gpd_cdf(params, gpd_quantile(params, p)) - p) <= 1e-10


class TestSampling:
    def test_exponential_ks(self):
        s = gpd_sample(GpdParams(0, 1), 100_000, np.random.default_rng(1))
        d = stats.kstest(s.values, "expon").statistic
        assert d < 0.01

    def test_inverse_transform_definition(self):
        class Half:
            def random(self, size):
                return np.full(size, 0.5)

        params = GpdParams(0.7, 2.5)
        s = gpd_sample(params, 1, Half())
        assert s.values[0] == gpd_quantile(params, 0.5)

    def test_mean(self):
        s = gpd_sample(GpdParams(0.5, 7), 100_000, np.random.default_rng(2))
        assert s.values.mean() == pytest.approx(14.0, rel=0.05)

    def test_deterministic(self):
        a = gpd_sample(GpdParams(0.1, 1), 50, 11)
        b = gpd_sample(GpdParams(0.1, 1), 50, 11)
        assert a == b

    def test_support(self):
        params = GpdParams(-0.5, 1)
        s = gpd_sample(params, 10_000, 3)
        assert s.values.min() >= 0 and s.values.max() <= params.endpoint

    def test_bad_size(self):
        with pytest.raises(DomainError):
            gpd_sample(GpdParams(0, 1), 0, 1)


class TestResidualParams:
    @pytest.mark.parametrize(
        "xi, psi, t, expected",
        [(0.5, 7, 10, (0.5, 12)), (0.0, 3, 4.2, (0.0, 3)), (-0.5, 1, 1, (-0.5, 0.5))],
    )
    def test_examples(self, xi, psi, t, expected):
        r = residual_params(GpdParams(xi, psi), t)
        assert (r.xi, r.psi) == pytest.approx(expected)

    def test_empty_tail(self):
        with pytest.raises(DomainError, match="empty"):
            residual_params(GpdParams(-0.5, 1), 2.0)

    def test_closure_small(self):
        params = GpdParams(0.3, 1)
        x = gpd_sample(params, 200_000, 5).values
        t = 2.0
        ex = x[x > t] - t
        rp = residual_params(params, t)
        d = stats.kstest(ex, lambda v: gpd_cdf(rp, v)).statistic
        assert d < 0.02


class TestCvAndVariance:
    def test_cv_examples(self):
        assert cv_of_xi(0) == 1.0
        assert cv_of_xi(-1) == pytest.approx(1 / math.sqrt(3), abs=1e-15)
        assert cv_of_xi(-0.5) == pytest.approx(0.70711, abs=5e-6)

    def test_cv_undefined(self):
        with pytest.raises(DomainError):
            cv_of_xi(0.5)

    def test_xi_of_cv_examples(self):
        # 0.697 is itself rounded; any cv in [0.6965, 0.6975) maps within 0.0025 of -0.530
        assert xi_of_cv(0.697) == pytest.approx(-0.530, abs=0.0025)
        assert round(xi_of_cv(0.6966), 3) == -0.530
        assert xi_of_cv(1.0) == 0.0
        assert xi_of_cv(math.sqrt(1 / 0.6)) == pytest.approx(0.2, abs=1e-15)
        with pytest.raises(DomainError):
            xi_of_cv(0.0)

    @given(st.floats(min_value=-5.0, max_value=0.49))
    def test_bijection(self, x):
        assert abs(xi_of_cv(cv_of_xi(x)) - x) <= 1e-12

    @given(st.floats(min_value=-3.0, max_value=0.49), st.floats(min_value=-3.0, max_value=0.49))
    def test_cv_increasing(self, a, b):
        if a < b:
            assert cv_of_xi(a) <= cv_of_xi(b)

    def test_sd_examples(self):
        assert asymptotic_sd(0) == 1.0
        assert asymptotic_sd(-1) == pytest.approx(math.sqrt(8 / 45), abs=1e-15)
        # value of the closed form at 0.2, evaluated symbolically
        assert asymptotic_sd(0.2) == pytest.approx(4.8074017006186524, rel=1e-13)
        with pytest.raises(DomainError):
            asymptotic_sd(0.25)

    def test_covariance_examples(self):
        assert cv_covariance(0, 1, 1, 2) == pytest.approx(math.e, rel=1e-15)
        assert cv_covariance(-1, 1, 0, 0) == pytest.approx(8 / 45, rel=1e-14)
        # symbolic transcription of the xi != 0 display: 513380476638099/81920000000000
        assert cv_covariance(0.1, 2, 1, 3) == pytest.approx(513380476638099 / 81920000000000, rel=1e-13)

    @pytest.mark.parametrize("xi", [-1, -0.5, -0.1, 0, 0.1, 0.2])
    @pytest.mark.parametrize("psi", [0.5, 1, 3])
    def test_variance_consistency(self, xi, psi):
        assert abs(asymptotic_sd(xi) ** 2 - cv_covariance(xi, psi, 0, 0)) <= 1e-9

    @given(
        st.floats(min_value=-1.0, max_value=0.24),
        st.floats(min_value=0.1, max_value=10),
        st.floats(min_value=0, max_value=5),
        st.floats(min_value=0, max_value=5),
    )
    def test_symmetry(self, xi, psi, s, t):
        try:
            a = cv_covariance(xi, psi, s, t)
        except DomainError:
            return
        assert a == cv_covariance(xi, psi, t, s)

    def test_covariance_continuity(self):
        assert cv_covariance(1e-6, 1.0, 1.0, 2.0) == pytest.approx(math.e, rel=1e-4)

    def test_covariance_domain(self):
        with pytest.raises(DomainError):
            cv_covariance(0.3, 1, 0, 0)


class TestLikelihood:
    def test_examples(self):
        assert gpd_log_likelihood(GpdParams(0, 1), [1.0]) == pytest.approx(-1.0)
        assert gpd_log_likelihood(GpdParams(-0.5, 1), [3.0]) == -math.inf
        assert gpd_log_likelihood(GpdParams(1, 1), [1.0]) == pytest.approx(-math.log(4))

    def test_matches_scipy(self):
        x = np.array([0.1, 0.5, 2.0, 7.5])
        for xi in (-0.2, 0.0, 0.4):
            expected = stats.genpareto.logpdf(x, xi, scale=2.0).sum()
            assert gpd_log_likelihood(GpdParams(xi, 2.0), x) == pytest.approx(expected, rel=1e-12)


class TestMle:
    def test_consistency(self):
        s = gpd_sample(GpdParams(0.2, 1), 100_000, np.random.default_rng(7))
        fit = gpd_mle_fit(s)
        assert fit.converged
        assert abs(fit.xi - 0.2) < 3 * fit.std_errors[0]
        assert abs(fit.psi - 1.0) < 3 * fit.std_errors[1]

    def test_maximizes_likelihood(self):
        s = gpd_sample(GpdParams(0.3, 2), 500, 9)
        fit = gpd_mle_fit(s)
        ref = stats.genpareto.fit(s.values, floc=0)
        assert fit.log_likelihood >= gpd_log_likelihood(GpdParams(ref[0], ref[2]), s) - 1e-6

    def test_standard_errors_against_expected_information(self):
        # asymptotic variances for GPD MLE: var(xi) = (1+xi)^2 / n
        n, xi = 20_000, 0.1
        fit = gpd_mle_fit(gpd_sample(GpdParams(xi, 1), n, 3))
        assert fit.std_errors[0] == pytest.approx((1 + xi) / math.sqrt(n), rel=0.1)

    def test_scale_invariance(self):
        s = gpd_sample(GpdParams(0.25, 3), 400, 21)
        a = 37.5
        f1, f2 = gpd_mle_fit(s), gpd_mle_fit(s.scaled(a))
        assert abs(f1.xi - f2.xi) < 1e-6
        assert f2.psi == pytest.approx(a * f1.psi, rel=1e-6)

    def test_light_tail_has_no_standard_errors(self):
        s = gpd_sample(GpdParams(-0.8, 1), 300, 4)
        fit = gpd_mle_fit(s)
        assert fit.xi < -0.5
        assert all(math.isnan(e) for e in fit.std_errors)

    @pytest.mark.parametrize("data", [[1.0, 1.0, 1.0], [2.0]])
    def test_degenerate(self, data):
        with pytest.raises(FitError):
            gpd_mle_fit(data)

    def test_negative_data(self):
        with pytest.raises(FitError):
            gpd_mle_fit([-1.0, 2.0, 3.0])
