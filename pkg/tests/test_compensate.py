"""Tests for disturbance compensation and residual radii."""

import numpy as np
import pytest

from ers_tznn.compensate import (
    GainSplit,
    NoCompensation,
    SignumCompensation,
    SmoothCompensation,
    certified_radius,
    compensate,
    complement_law,
    residual_radius,
    split_law,
)
from ers_tznn.dynamics import (
    ConstantDisturbance,
    ErsConfig,
    empirical_residual,
    integrate_scalar,
)
from ers_tznn.exceptions import ParameterError, UnsupportedOperationError
from ers_tznn.laws import DprlAltLaw, FractionalExpLaw, SprlLaw, TwoPhasePeLaw


@pytest.fixture
def strong_dprl_alt():
    return DprlAltLaw(rho=2.0, kappa1=2.0, kappa2=2.0, gamma1=0.5, gamma2=1.5)


class TestCompensationTerms:
    """s(e) for the three compensation kinds."""

    def test_none_is_zero(self):
        assert compensate(NoCompensation(), 3.0) == 0.0

    def test_signum(self):
        comp = SignumCompensation(varpi=2.0)
        assert compensate(comp, -3.0) == 2.0
        assert compensate(comp, 0.0) == 0.0
        np.testing.assert_array_equal(comp.apply(np.array([1.0, -1.0])), [-2.0, 2.0])

    def test_smooth_approaches_signum(self):
        comp = SmoothCompensation(varpi=1.0, epsilon=1e-3)
        assert comp.apply(0.0) == 0.0
        assert comp.apply(10.0) == pytest.approx(-1.0, rel=1e-3)
        assert abs(comp.apply(1e-9)) < 1e-5

    def test_bounds(self):
        assert NoCompensation().bound == 0.0
        assert SmoothCompensation(varpi=0.7, epsilon=0.1).bound == 0.7

    def test_invalid_parameters(self):
        with pytest.raises(Exception):
            SmoothCompensation(varpi=1.0, epsilon=0.0)
        with pytest.raises(Exception):
            SignumCompensation(varpi=-1.0)


class TestGainSplit:
    """Splitting law gains between convergence and attenuation."""

    def test_half_of(self, strong_dprl_alt):
        split = GainSplit.half_of(strong_dprl_alt)
        assert (split.rho2, split.kappa1_2, split.kappa2_2) == (1.0, 1.0, 1.0)
        assert split.kappa2 == 0.0

    def test_split_and_complement_add_up(self, strong_dprl_alt):
        split = GainSplit(rho2=0.5, kappa1_2=1.5, kappa2_2=0.25)
        weak = split_law(strong_dprl_alt, split)
        rest = complement_law(strong_dprl_alt, split)
        e = np.linspace(-3.0, 3.0, 13)
        np.testing.assert_allclose(weak.rectify(e) + rest.rectify(e), strong_dprl_alt.rectify(e))

    def test_oversized_part_rejected(self, strong_dprl_alt):
        with pytest.raises(ParameterError) as excinfo:
            GainSplit(rho2=2.0).check_against(strong_dprl_alt)
        assert excinfo.value.field == "rho2"


class TestResidualRadius:
    """Closed-form residual radii."""

    def test_dprl_alt_value(self, strong_dprl_alt):
        radius = residual_radius(strong_dprl_alt, 0.01, GainSplit.half_of(strong_dprl_alt))
        assert radius == pytest.approx(min(0.02, 0.02 ** 2, 0.02 ** (1 / 1.5)))

    def test_two_phase_scales_with_estar(self):
        law = TwoPhasePeLaw(rho=2.0, kappa=2.0, estar=3.0, gamma1=0.5, gamma2=2.0)
        radius = residual_radius(law, 0.01, GainSplit.half_of(law))
        assert radius == pytest.approx(3.0 * min(0.02, 0.02 ** 2, 0.02 ** 0.5))

    def test_fractional_alpha_zero(self):
        law = FractionalExpLaw(rho=2.0, kappa=2.0, estar=1.0, alpha=0.0, beta=3.0, m=1)
        radius = residual_radius(law, 0.01, GainSplit.half_of(law))
        # (2 eps / (kappa'' floor))^(1/alpha) -> 0 as alpha -> 0
        assert radius == 0.0

    def test_missing_split_component(self, strong_dprl_alt):
        with pytest.raises(ParameterError) as excinfo:
            residual_radius(strong_dprl_alt, 0.01, GainSplit(rho2=1.0, kappa1_2=1.0))
        assert excinfo.value.field == "kappa2_2"

    def test_unsupported_law(self):
        law = SprlLaw(kappa=1.0, gamma=0.5)
        with pytest.raises(UnsupportedOperationError):
            residual_radius(law, 0.01, GainSplit(kappa2=0.5))

    def test_power_exponential_requires_linear_term(self):
        law = TwoPhasePeLaw(rho=0.0, kappa=2.0, estar=1.0, gamma1=0.5, gamma2=2.0)
        with pytest.raises(UnsupportedOperationError):
            residual_radius(law, 0.01, GainSplit(kappa2=1.0))

    def test_epsilon_must_be_positive(self, strong_dprl_alt):
        with pytest.raises(ParameterError):
            residual_radius(strong_dprl_alt, 0.0, GainSplit.half_of(strong_dprl_alt))

    @pytest.mark.parametrize(
        "law, fields",
        [
            (
                DprlAltLaw(rho=2.0, kappa1=2.0, kappa2=2.0, gamma1=0.5, gamma2=1.5),
                ("rho2", "kappa1_2", "kappa2_2"),
            ),
            (
                TwoPhasePeLaw(rho=2.0, kappa=2.0, estar=1.0, gamma1=0.5, gamma2=2.0),
                ("rho2", "kappa2"),
            ),
        ],
        ids=["DPRLalt", "TwoPhasePE"],
    )
    def test_monotone_in_epsilon_and_split(self, law, fields):
        half = GainSplit.half_of(law)
        radii = [residual_radius(law, eps, half) for eps in (1e-4, 1e-3, 1e-2, 1e-1, 1.0)]
        assert radii == sorted(radii)
        assert residual_radius(law, 1e-12, half) < 1e-6

        for field in fields:
            shrinking = [
                residual_radius(law, 1e-2, half.model_copy(update={field: part}))
                for part in (0.25, 0.5, 1.0, 1.5)
            ]
            assert shrinking == sorted(shrinking, reverse=True), field


class TestCertifiedRadius:
    """Numerically certified residual radius."""

    def test_radius_is_a_root_of_the_gap(self, strong_dprl_alt):
        comp = SmoothCompensation(varpi=1.0, epsilon=0.01)
        split = GainSplit.half_of(strong_dprl_alt)
        radius = certified_radius(strong_dprl_alt, comp, split)
        weak = split_law(strong_dprl_alt, split)

        def gap(y):
            decay = abs(weak.rectify(y)) * (comp.varpi * y + comp.epsilon)
            return decay - comp.varpi * comp.epsilon

        assert radius > 0
        assert gap(radius * 0.99) < 0 < gap(radius * 1.01)

    def test_monotone_in_epsilon(self, strong_dprl_alt):
        radii = [
            certified_radius(strong_dprl_alt, SmoothCompensation(varpi=1.0, epsilon=eps))
            for eps in (1e-4, 1e-3, 1e-2, 1e-1)
        ]
        assert radii == sorted(radii)
        assert radii[0] < radii[-1]

    def test_simulated_residual_can_exceed_closed_form_but_not_certified(self):
        # Equilibrium of e + sqrt(e) + e^1.5 + e / (e + 0.01) = 0.5 is near 0.0069
        law = DprlAltLaw(rho=1.0, kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)
        comp = SmoothCompensation(varpi=1.0, epsilon=0.01)
        split = GainSplit.half_of(law)
        config = ErsConfig(
            law=law, comp=comp, dist=ConstantDisturbance(c=0.5), dt=1e-3, horizon=4.0
        )
        residual = empirical_residual(integrate_scalar(config, 2.0), 2.0)

        assert residual == pytest.approx(0.0069, rel=0.05)
        assert residual_radius(law, comp.epsilon, split) == pytest.approx(0.0016)
        assert residual_radius(law, comp.epsilon, split) < residual
        assert residual <= certified_radius(law, comp, split)
