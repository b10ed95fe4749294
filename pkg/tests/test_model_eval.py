import numpy as np
import pytest

from _reference import ORACLE_KM_PLATEAU, ORACLE_LTW_NEG_LOGLIK
from ltfrechet.inference import CensoredSample, NoEvents
from ltfrechet.model_eval import (
    LtWeibullParams,
    compare,
    fit_lt_weibull,
    information_criteria,
    kaplan_meier,
    km_cure_fraction,
)
from ltfrechet.numerics import OptimizerConfig


def make_sample(times, events):
    return CensoredSample(times=np.asarray(times, float), events=np.asarray(events, bool))


class TestKaplanMeier:
    def test_no_censoring_matches_empirical(self):
        curve = kaplan_meier(make_sample([1.0, 2.0, 3.0], [1, 1, 1]))
        np.testing.assert_allclose(curve.survival, [2 / 3, 1 / 3, 0.0], atol=1e-15)
        np.testing.assert_array_equal(curve.at_risk, [3, 2, 1])

    def test_no_censoring_matches_empirical_random(self):
        rng = np.random.default_rng(5)
        times = rng.uniform(0.1, 10.0, size=40)
        curve = kaplan_meier(make_sample(times, np.ones(40)))
        sorted_times = np.sort(times)
        empirical = 1.0 - np.arange(1, 41) / 40.0
        np.testing.assert_allclose(curve.survival_at(sorted_times), empirical, atol=1e-12)

    def test_all_censored(self):
        curve = kaplan_meier(make_sample([1.0, 2.0], [0, 0]))
        assert curve.times.size == 0
        assert curve.survival_at(5.0) == 1.0
        assert km_cure_fraction(curve) == 1.0

    def test_event_censoring_tie_resolved_events_first(self):
        # The individual censored at t=1 still counts as at risk there.
        curve = kaplan_meier(make_sample([1.0, 1.0], [1, 0]))
        np.testing.assert_array_equal(curve.at_risk, [2])
        np.testing.assert_allclose(curve.survival, [0.5])

    def test_tied_events_share_a_step(self):
        curve = kaplan_meier(make_sample([1.0, 1.0, 2.0], [1, 1, 1]))
        np.testing.assert_array_equal(curve.events, [2, 1])
        np.testing.assert_allclose(curve.survival, [1 / 3, 0.0], atol=1e-15)

    def test_embedded_data_plateau(self, leukemia):
        curve = kaplan_meier(leukemia)
        assert km_cure_fraction(curve) == pytest.approx(ORACLE_KM_PLATEAU, abs=1e-12)

    def test_monotone_in_unit_interval(self, leukemia):
        curve = kaplan_meier(leukemia)
        assert np.all(np.diff(curve.survival) <= 0)
        assert np.all((curve.survival >= 0) & (curve.survival <= 1))
        assert curve.survival_at(1e-9) == 1.0


class TestCureFraction:
    def test_reaches_zero_without_censoring(self):
        curve = kaplan_meier(make_sample([1.0, 2.0, 3.0], [1, 1, 1]))
        assert km_cure_fraction(curve) == 0.0


class TestInformationCriteria:
    def test_reference_arithmetic(self):
        score = information_criteria(-45.33, k=3, n=46)
        assert score.aic == pytest.approx(96.66, abs=1e-10)
        assert score.aicc == pytest.approx(96.66 + 24.0 / 42.0, abs=1e-10)
        assert score.neg_loglik == pytest.approx(45.33)

    def test_zero_parameters(self):
        score = information_criteria(0.0, k=0, n=10)
        assert score.aic == 0.0 and score.aicc == 0.0

    def test_small_sample_domain_error(self):
        with pytest.raises(ValueError):
            information_criteria(-10.0, k=3, n=4)

    def test_aicc_dominates_aic(self):
        score = information_criteria(-12.0, k=2, n=30)
        assert score.aicc >= score.aic


class TestLtWeibull:
    def test_params_validation(self):
        with pytest.raises(ValueError):
            LtWeibullParams(0.0, 1.0, 0.5)
        with pytest.raises(ValueError):
            LtWeibullParams(1.0, 1.0, 0.0)

    def test_embedded_data_fit(self, leukemia):
        result = fit_lt_weibull(leukemia)
        assert result.converged
        assert -result.loglik == pytest.approx(ORACLE_LTW_NEG_LOGLIK, abs=1e-3)
        assert -result.loglik == pytest.approx(46.15, abs=0.05)
        assert isinstance(result.estimates, LtWeibullParams)

    def test_all_censored(self):
        with pytest.raises(NoEvents):
            fit_lt_weibull(make_sample([1.0, 2.0], [0, 0]))

    def test_recovers_exponential_like_data(self):
        # Unit shape and a tiny cure mass: administrative censoring at 6
        # keeps a plateau the mixture can absorb into p.
        rng = np.random.default_rng(321)
        latent = rng.exponential(2.0, size=400)
        events = latent < 6.0
        times = np.minimum(latent, 6.0)
        result = fit_lt_weibull(
            make_sample(times, events),
            config=OptimizerConfig(max_iterations=3000, simplex_tolerance=1e-11, restarts=2),
        )
        assert result.std_errors is not None
        scale_hat, shape_hat = result.theta[0], result.theta[1]
        assert abs(shape_hat - 1.0) <= 3.0 * result.std_errors[1]
        assert abs(scale_hat - 2.0) <= 3.0 * result.std_errors[0]


class TestCompare:
    def test_embedded_data_ranking(self, leukemia):
        lf_fit = information_criteria(-45.320877, k=3, n=46)
        ltw_fit = information_criteria(-46.148454, k=3, n=46)
        ranked = compare([("lt-weibull", ltw_fit), ("lf", lf_fit)])
        assert [name for name, _ in ranked] == ["lf", "lt-weibull"]

    def test_single_model(self):
        score = information_criteria(-1.0, k=1, n=10)
        assert compare([("only", score)]) == [("only", score)]

    def test_exact_ties_keep_input_order(self):
        a = information_criteria(-5.0, k=2, n=20)
        b = information_criteria(-5.0, k=2, n=20)
        ranked = compare([("first", a), ("second", b)])
        assert [name for name, _ in ranked] == ["first", "second"]

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            compare([])
