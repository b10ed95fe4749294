import numpy as np
import pytest
from scipy.stats import kstest

from ltfrechet.distribution import LfParams
from ltfrechet.inference import fit
from ltfrechet.montecarlo import (
    CalibrationInfeasible,
    Scenario,
    calibrate_censoring,
    censoring_probability,
    generate_replicate,
    replicate_seed,
    run_scenario,
)
from ltfrechet.numerics import OptimizerConfig

FAST = OptimizerConfig(max_iterations=1500, simplex_tolerance=1e-10, restarts=0)


class TestCalibration:
    @pytest.mark.parametrize("truth,target", [
        (LfParams(4.0, 2.0, 0.3), 0.35),
        (LfParams(2.0, 0.5, 0.3), 0.457),
    ])
    def test_large_sample_verification(self, truth, target):
        tau = calibrate_censoring(truth, target)
        assert censoring_probability(truth, tau) == pytest.approx(target, abs=1e-4)
        data = generate_replicate(truth, 10**6, tau, seed=606)
        realized = data.n_censored / data.n
        assert realized == pytest.approx(target, abs=2e-3)

    def test_infeasible_below_cure_fraction(self):
        with pytest.raises(CalibrationInfeasible):
            calibrate_censoring(LfParams(4.0, 2.0, 0.3), 0.25)
        with pytest.raises(CalibrationInfeasible):
            calibrate_censoring(LfParams(4.0, 2.0, 0.3), 0.3005)

    def test_target_range(self):
        with pytest.raises(ValueError):
            calibrate_censoring(LfParams(4.0, 2.0, 0.3), 1.0)


class TestGenerateReplicate:
    def test_everyone_cured_gives_uniform_censoring_times(self):
        truth = LfParams(1.0, 1.0, 1.0)
        data = generate_replicate(truth, 5000, tau=3.0, seed=17)
        assert data.n_events == 0
        assert np.all(data.times <= 3.0)
        assert kstest(data.times, "uniform", args=(0.0, 3.0)).pvalue > 0.01

    def test_huge_bound_rarely_censors(self):
        truth = LfParams(1.0, 1.0, 0.0)
        data = generate_replicate(truth, 10**4, tau=1e12, seed=23)
        assert data.n_censored / data.n < 0.001

    def test_realized_fraction_near_calibration(self):
        truth = LfParams(4.0, 2.0, 0.3)
        tau = calibrate_censoring(truth, 0.35)
        data = generate_replicate(truth, 10**5, tau, seed=29)
        assert data.n_censored / data.n == pytest.approx(0.35, abs=0.005)

    def test_deterministic(self):
        truth = LfParams(2.0, 0.5, 0.3)
        a = generate_replicate(truth, 50, 4.0, seed=31)
        b = generate_replicate(truth, 50, 4.0, seed=31)
        np.testing.assert_array_equal(a.times, b.times)
        np.testing.assert_array_equal(a.events, b.events)

    def test_input_validation(self):
        truth = LfParams(1.0, 1.0, 0.1)
        with pytest.raises(ValueError):
            generate_replicate(truth, 0, 1.0, seed=1)
        with pytest.raises(ValueError):
            generate_replicate(truth, 10, 0.0, seed=1)


class TestScenario:
    def test_validation(self):
        truth = LfParams(4.0, 2.0, 0.3)
        with pytest.raises(ValueError):
            Scenario(truth=truth, sample_sizes=(), replications=10, target_censoring=0.4)
        with pytest.raises(ValueError):
            Scenario(truth=truth, sample_sizes=(10,), replications=0, target_censoring=0.4)
        with pytest.raises(ValueError):
            Scenario(truth=truth, sample_sizes=(10,), replications=5, target_censoring=0.2)
        with pytest.raises(ValueError):
            Scenario(truth=truth, sample_sizes=(10,), replications=5,
                     target_censoring=0.4, ci_level=1.2)


class TestRunScenario:
    def test_single_replicate_reduction(self):
        truth = LfParams(4.0, 2.0, 0.3)
        scenario = Scenario(truth=truth, sample_sizes=(30,), replications=1,
                            target_censoring=0.35, base_seed=77)
        report = run_scenario(scenario)[0]
        tau = calibrate_censoring(truth, 0.35)
        data = generate_replicate(truth, 30, tau, seed=replicate_seed(77, 30, 0))
        result = fit(data, config=FAST)
        assert report.replications_used == 1
        assert report.realized_censoring == pytest.approx(data.n_censored / data.n)
        truth_vec = {"lambda": 4.0, "alpha": 2.0, "p": 0.3}
        for i, name in enumerate(("lambda", "alpha", "p")):
            assert report.mre[name] == pytest.approx(result.theta[i] / truth_vec[name])
            assert report.mse[name] == pytest.approx((result.theta[i] - truth_vec[name]) ** 2)
            covered = result.ci_lower[i] <= truth_vec[name] <= result.ci_upper[i]
            assert report.coverage[name] == float(covered)

    def test_deterministic_and_parallel_equivalent(self):
        scenario = Scenario(truth=LfParams(4.0, 2.0, 0.3), sample_sizes=(20,),
                            replications=24, target_censoring=0.35, base_seed=123)
        serial_a = run_scenario(scenario)
        serial_b = run_scenario(scenario)
        assert serial_a == serial_b
        parallel = run_scenario(scenario, n_jobs=2)
        assert serial_a == parallel

    def test_quality_improves_with_sample_size(self):
        scenario = Scenario(truth=LfParams(4.0, 2.0, 0.3), sample_sizes=(25, 200),
                            replications=250, target_censoring=0.35, base_seed=9)
        small, large = run_scenario(scenario)
        for name in ("lambda", "alpha", "p"):
            assert large.mse[name] < small.mse[name]
            assert abs(large.mre[name] - 1.0) <= abs(small.mre[name] - 1.0) + 0.01
        assert small.realized_censoring == pytest.approx(0.35, abs=0.01)
        assert large.realized_censoring == pytest.approx(0.35, abs=0.01)

    def test_failures_counted_not_thrown(self):
        # n=1 at high censoring: many replicates have no events at all.
        scenario = Scenario(truth=LfParams(2.0, 0.5, 0.5), sample_sizes=(1,),
                            replications=40, target_censoring=0.8, base_seed=5)
        report = run_scenario(scenario)[0]
        assert report.replications == 40
        assert report.replications_used < 40
        assert 0.0 <= report.realized_censoring <= 1.0
