"""Tests for the error-dynamics integrator and trace measurements."""

import math

import numpy as np
import pytest
from pydantic import ValidationError

from ers_tznn.compensate import SignumCompensation, SmoothCompensation
from ers_tznn.dynamics import (
    BoundedNoise,
    ConstantDisturbance,
    ErsConfig,
    SinusoidDisturbance,
    Trace,
    ZeroDisturbance,
    empirical_residual,
    empirical_settling_time,
    integrate_scalar,
    lyapunov_reach_time,
    rk4_step,
)
from ers_tznn.exceptions import ParameterError
from ers_tznn.laws import (
    DprlAltLaw,
    DprlLaw,
    FractionalExpLaw,
    PiecewiseExpALaw,
    SprlAltLaw,
    SprlLaw,
    TwoPhasePeLaw,
)
from ers_tznn.settle import lemma1_reach_time


DISSIPATIVE_LAWS = [
    SprlLaw(kappa=1.0, gamma=0.5),
    SprlAltLaw(rho=1.0, kappa=1.0, gamma=1 / 3),
    DprlLaw(kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5),
    DprlAltLaw(rho=1.0, kappa1=1.0, kappa2=1.0, gamma1=0.25, gamma2=2.0),
    TwoPhasePeLaw(rho=1.0, kappa=1.0, estar=1.0, gamma1=0.5, gamma2=2.0),
    PiecewiseExpALaw(rho=0.5, kappa=1.0, estar=1.0, gamma1=0.5, gamma2=2.0, delta=0.2),
]


def _trace(times, errors):
    errors = np.asarray(errors, dtype=float)
    config = ErsConfig(law=SprlLaw(kappa=1.0, gamma=0.5), dt=1.0, horizon=float(times[-1]))
    return Trace(times=np.asarray(times, dtype=float), errors=errors,
                 disturbances=np.zeros_like(errors), meta=config)


class TestConfig:
    def test_defaults_come_from_settings(self, sprl_law):
        config = ErsConfig(law=sprl_law)
        assert config.dt == 1e-4
        assert config.is_nominal
        assert config.n_steps == 100000

    def test_dt_above_horizon_rejected(self, sprl_law):
        with pytest.raises(ValidationError):
            ErsConfig(law=sprl_law, dt=2.0, horizon=1.0)

    def test_signum_is_not_nominal(self, sprl_law):
        config = ErsConfig(law=sprl_law, comp=SignumCompensation(varpi=1.0))
        assert not config.is_nominal


class TestNominalIntegration:
    """Undisturbed runs with arrival clamping."""

    def test_sprl_settles_at_exact_time(self, sprl_law):
        config = ErsConfig(law=sprl_law, dt=1e-3, horizon=6.0)
        trace = integrate_scalar(config, 4.0)
        # |e| = (2 - t/2)^2 reaches 1e-6 at t = 3.998
        assert empirical_settling_time(trace, 1e-6) == pytest.approx(3.998, abs=0.01)
        assert trace.info["settled_exactly_at"] == pytest.approx(4.0, abs=0.01)
        assert np.all(trace.errors[trace.times > 4.05] == 0.0)

    def test_trajectory_matches_closed_form(self, sprl_law):
        config = ErsConfig(law=sprl_law, dt=1e-3, horizon=3.0)
        trace = integrate_scalar(config, 4.0)
        expected = (2.0 - trace.times / 2.0) ** 2
        np.testing.assert_allclose(trace.errors[:, 0], expected, atol=1e-9)

    def test_sign_preserved_and_symmetric(self, dprl_law):
        config = ErsConfig(law=dprl_law, dt=1e-3, horizon=4.0)
        trace = integrate_scalar(config, [-5.0, 5.0])
        assert np.all(trace.errors[:, 0] <= 0.0)
        assert np.all(trace.errors[:, 1] >= 0.0)
        np.testing.assert_array_equal(trace.errors[:, 0], -trace.errors[:, 1])

    def test_fixed_time_from_huge_error(self, dprl_law):
        config = ErsConfig(law=dprl_law, dt=1e-3, horizon=4.0)
        trace = integrate_scalar(config, 1e6)
        settled = empirical_settling_time(trace, 1e-6)
        assert settled is not None and settled <= math.pi + 0.01

    def test_coarse_step_reaches_zero(self, sprl_law):
        # RK4 has a spurious fixed point near 0.06 dt^2 for gamma = 1/2
        dt = 2e-2
        trace = integrate_scalar(ErsConfig(law=sprl_law, dt=dt, horizon=6.0), 4.0)
        assert trace.info["settled_exactly_at"] == pytest.approx(4.0, abs=2 * dt)
        assert empirical_settling_time(trace, 1e-6) == pytest.approx(4.0, abs=2 * dt)

    def test_dprl_coarse_step_within_bound(self, dprl_law):
        for dt in (1e-2, 5e-3):
            trace = integrate_scalar(ErsConfig(law=dprl_law, dt=dt, horizon=8.0), 4.0)
            settled = trace.info["settled_exactly_at"]
            assert settled is not None and settled <= math.pi

    @pytest.mark.parametrize("law", DISSIPATIVE_LAWS, ids=lambda law: law.type)
    @pytest.mark.parametrize("e0", [-4.0, 0.3, 9.0])
    def test_halving_step_barely_moves_settling(self, law, e0):
        dt = 1e-2
        coarse, fine = (
            empirical_settling_time(
                integrate_scalar(ErsConfig(law=law, dt=step, horizon=8.0), e0), 1e-6
            )
            for step in (dt, dt / 2)
        )
        assert coarse is not None and fine is not None
        assert abs(coarse - fine) < 5 * dt

    @pytest.mark.parametrize(
        "law",
        [
            *DISSIPATIVE_LAWS,
            FractionalExpLaw(rho=1.0, kappa=1.0, estar=1.0, alpha=0.5, beta=3.0, m=1),
        ],
        ids=lambda law: law.type,
    )
    @pytest.mark.parametrize("e0", [-3.0, 0.5, 7.0])
    def test_magnitude_never_grows(self, law, e0):
        trace = integrate_scalar(ErsConfig(law=law, dt=1e-2, horizon=6.0), e0)
        magnitude = np.abs(trace.errors[:, 0])
        assert np.all(np.diff(magnitude) <= 0.0)
        assert np.all(trace.errors[:, 0] * np.sign(e0) >= 0.0)

    def test_smooth_compensation_without_disturbance_settles(self, sprl_law):
        config = ErsConfig(
            law=sprl_law, comp=SmoothCompensation(varpi=1.0, epsilon=0.1), dt=1e-2, horizon=6.0
        )
        trace = integrate_scalar(config, -2.0)
        assert np.all(np.diff(np.abs(trace.errors[:, 0])) <= 0.0)
        assert trace.info["settled_exactly_at"] is not None

    def test_zero_initial_error_stays_zero(self, sprl_law):
        trace = integrate_scalar(ErsConfig(law=sprl_law, dt=1e-2, horizon=1.0), 0.0)
        assert not trace.errors.any()
        assert empirical_settling_time(trace, 1e-6) == 0.0

    @pytest.mark.parametrize("e0", [math.nan, [[1.0, 2.0]]])
    def test_bad_initial_error(self, sprl_law, e0):
        with pytest.raises(ParameterError):
            integrate_scalar(ErsConfig(law=sprl_law, dt=1e-2, horizon=1.0), e0)

    def test_trace_is_read_only(self, sprl_law):
        trace = integrate_scalar(ErsConfig(law=sprl_law, dt=1e-2, horizon=1.0), 1.0)
        with pytest.raises(ValueError):
            trace.errors[0, 0] = 5.0


class TestDisturbedIntegration:
    """Disturbed runs integrated as written."""

    def test_signum_rejects_dominated_disturbance(self, dprl_law):
        dt = 1e-3
        config = ErsConfig(
            law=dprl_law,
            comp=SignumCompensation(varpi=1.0),
            dist=ConstantDisturbance(c=0.9),
            dt=dt,
            horizon=5.0,
        )
        trace = integrate_scalar(config, 3.0)
        assert empirical_residual(trace, math.pi) <= 2.0 * dt

    def test_constant_disturbance_leaves_offset(self, sprl_law):
        config = ErsConfig(law=sprl_law, dist=ConstantDisturbance(c=0.25), dt=1e-3, horizon=8.0)
        trace = integrate_scalar(config, 1.0)
        # kappa sqrt(e) = 0.25 at e = 1/16
        assert trace.errors[-1, 0] == pytest.approx(1.0 / 16.0, rel=1e-3)

    def test_disturbance_samples_recorded(self, sprl_law):
        dist = SinusoidDisturbance(amplitude=0.5, angular_frequency=2.0)
        trace = integrate_scalar(ErsConfig(law=sprl_law, dist=dist, dt=1e-2, horizon=1.0), 1.0)
        np.testing.assert_allclose(trace.disturbances[:, 0], 0.5 * np.sin(2.0 * trace.times))


class TestNoise:
    """Seeded bounded noise."""

    def test_bound_and_reproducibility(self):
        noise = BoundedNoise(bound=0.5, seed=3)
        table = noise.table(3, 1000)
        assert table.shape == (1001, 3)
        assert np.abs(table).max() <= 0.5
        np.testing.assert_array_equal(table, BoundedNoise(bound=0.5, seed=3).table(3, 1000))
        assert not np.array_equal(table[:, 0], table[:, 1])

    def test_seed_changes_samples(self):
        a = BoundedNoise(bound=1.0, seed=1).table(1, 10)
        b = BoundedNoise(bound=1.0, seed=2).table(1, 10)
        assert not np.array_equal(a, b)

    def test_zero_disturbance(self):
        assert ZeroDisturbance().is_zero
        assert ZeroDisturbance().magnitude == 0.0
        assert ConstantDisturbance(c=-2.0).magnitude == 2.0


class TestMeasurements:
    """Settling and residual measurements on traces."""

    def test_final_reentry_counts(self):
        trace = _trace([0, 1, 2, 3], [1.0, 1e-7, 1.0, 1e-7])
        assert empirical_settling_time(trace, 1e-6) == 3.0

    def test_never_settles(self):
        trace = _trace([0, 1, 2], [1.0, 1e-7, 1.0])
        assert empirical_settling_time(trace, 1e-6) is None

    def test_component_selection(self):
        trace = _trace([0, 1, 2], [[1.0, 1.0], [0.0, 1.0], [0.0, 0.0]])
        assert empirical_settling_time(trace, 1e-6, component=0) == 1.0
        assert empirical_settling_time(trace, 1e-6) == 2.0

    def test_residual_sup(self):
        trace = _trace([0, 1, 2, 3], [5.0, -0.2, 0.1, -0.05])
        assert empirical_residual(trace, 1.0) == pytest.approx(0.2)

    def test_invalid_arguments(self):
        trace = _trace([0, 1, 2], [1.0, 0.5, 0.1])
        with pytest.raises(ParameterError):
            empirical_settling_time(trace, 0.0)
        with pytest.raises(ParameterError):
            empirical_residual(trace, 2.0)

    def test_csv_layout(self, tmp_path):
        trace = _trace([0, 1], [[1.0, 2.0], [0.5, 1.0]])
        path = trace.to_csv(tmp_path / "trace.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "t,e_1,e_2,w_1,w_2"
        assert lines[2].split(",")[:3] == ["1", "0.5", "1"]


class TestHelpers:
    def test_rk4_exact_for_cubic_time(self):
        # y' = 3 t^2 is integrated exactly by a fourth-order method
        y = rk4_step(lambda t, y: np.array([3.0 * t * t]), 0.0, np.array([0.0]), 2.0)
        assert y[0] == pytest.approx(8.0)

    def test_lyapunov_reach_linear_closed_form(self):
        measured = lyapunov_reach_time(1.0, 1.0, 1.0, 0.1, 10.0)
        # V = 0.05 + 9.95 exp(-2t) enters V <= 0.1 at ln(199) / 2
        assert measured == pytest.approx(math.log(199.0) / 2.0, rel=1e-6)
        assert measured <= lemma1_reach_time(1.0, 1.0, 1.0, 0.1, 10.0).time.time

    def test_lyapunov_reach_inside(self):
        assert lyapunov_reach_time(1.0, 1.0, 1.0, 0.1, 0.01) == 0.0

    def test_lyapunov_reach_not_reached(self):
        assert lyapunov_reach_time(1.0, 1.0, 1.0, 0.1, 10.0, horizon=0.5) is None
