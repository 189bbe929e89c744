"""Tests for the attracting-law catalog."""

import numpy as np
import pytest

from ers_tznn.exceptions import ParameterError, UnsupportedOperationError
from ers_tznn.laws import (
    DprlAltLaw,
    DprlLaw,
    FractionalExpLaw,
    LawFamily,
    PiecewiseExpALaw,
    PiecewiseExpBLaw,
    SprlAltLaw,
    SprlLaw,
    TwoPhasePeLaw,
    exponent,
    law_registry,
    parse_law,
    rectify,
    sig,
    validate,
)

ALL_LAWS = [
    SprlLaw(kappa=1.0, gamma=0.5),
    SprlAltLaw(rho=1.0, kappa=2.0, gamma=0.3),
    DprlLaw(kappa1=1.0, kappa2=2.0, gamma1=0.5, gamma2=1.5),
    DprlAltLaw(rho=0.5, kappa1=1.0, kappa2=1.0, gamma1=0.4, gamma2=2.0),
    TwoPhasePeLaw(rho=1.0, kappa=1.0, estar=2.0, gamma1=0.5, gamma2=2.0),
    PiecewiseExpALaw(rho=1.0, kappa=1.0, estar=1.0, gamma1=0.5, gamma2=2.0, delta=0.5),
    PiecewiseExpBLaw(rho=0.0, kappa=1.0, estar=1.0, gamma1=0.5, gamma2=2.0, delta=0.5),
    FractionalExpLaw(rho=1.0, kappa=1.0, estar=1.0, alpha=0.5, beta=3.0, m=1),
]


def test_sig_is_zero_at_origin():
    """sig^gamma(0) = 0 for every exponent, including gamma = 0."""
    for gamma in (0.0, 0.5, 2.0):
        assert sig(np.array(0.0), gamma) == 0.0


class TestRectify:
    """r(e) evaluation."""

    def test_sprl_value(self):
        assert rectify(SprlLaw(kappa=1.0, gamma=0.5), 4.0) == pytest.approx(-2.0)

    def test_scalar_in_scalar_out(self):
        value = SprlLaw(kappa=1.0, gamma=0.5).rectify(1.0)
        assert isinstance(value, float)

    def test_array_shape_preserved(self):
        out = DprlLaw(kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5).rectify(np.ones((3, 2)))
        assert out.shape == (3, 2)

    @pytest.mark.parametrize("law", ALL_LAWS, ids=lambda law: law.type)
    def test_odd_and_dissipative(self, law):
        e = np.array([1e-6, 0.3, 1.0, 2.5, 40.0])
        r = law.rectify(e)
        np.testing.assert_allclose(law.rectify(-e), -r, rtol=1e-14)
        assert np.all(r < 0)
        assert law.rectify(0.0) == 0.0

    def test_dprl_alt_adds_linear_term(self):
        base = DprlLaw(kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)
        alt = DprlAltLaw(rho=2.0, kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)
        assert alt.rectify(3.0) == pytest.approx(base.rectify(3.0) - 6.0)

    def test_fractional_saturates_to_infinity(self):
        law = FractionalExpLaw(rho=0.0, kappa=1.0, estar=1.0, alpha=0.5, beta=3.0, m=1)
        assert law.rectify(1e200) == -np.inf


class TestExponent:
    """State-dependent exponents of the power-exponential laws."""

    def test_two_phase_switches_at_estar(self):
        law = TwoPhasePeLaw(rho=0.0, kappa=1.0, estar=2.0, gamma1=0.5, gamma2=2.0)
        assert exponent(law, 1.999) == 0.5
        assert exponent(law, 2.0) == 2.0
        assert exponent(law, -5.0) == 2.0

    @pytest.mark.parametrize("law_class", [PiecewiseExpALaw, PiecewiseExpBLaw])
    def test_piecewise_continuous_at_knots(self, law_class):
        law = law_class(rho=1.0, kappa=1.0, estar=1.0, gamma1=0.5, gamma2=2.0, delta=0.5)
        for knot in law.knots:
            below = law.exponent(knot * (1 - 1e-12))
            above = law.exponent(knot * (1 + 1e-12))
            assert below == pytest.approx(above, abs=1e-9)
        assert law.exponent(0.0) == 0.5
        assert law.exponent(10.0) == 2.0

    def test_fractional_limits(self):
        law = FractionalExpLaw(rho=1.0, kappa=1.0, estar=1.0, alpha=0.25, beta=3.0, m=2)
        assert law.exponent(0.0) == pytest.approx(0.25)
        assert law.exponent(1.0) == pytest.approx((0.25 + 3.0) / 2.0)
        assert law.exponent(1e300) == pytest.approx(3.0)
        assert law.reaching_floor == pytest.approx(np.exp(-3.0 / (4.0 * np.e)))

    def test_constant_exponent_laws_refuse(self):
        with pytest.raises(UnsupportedOperationError):
            exponent(SprlLaw(kappa=1.0, gamma=0.5), 1.0)


class TestParsing:
    """Validation of law parameters."""

    def test_parse_round_trip(self):
        law = DprlAltLaw(rho=0.5, kappa1=1.0, kappa2=2.0, gamma1=0.4, gamma2=2.0)
        assert parse_law(law.model_dump()) == law

    @pytest.mark.parametrize(
        "data, field",
        [
            ({"type": "SPRL", "kappa": -1.0, "gamma": 0.5}, "kappa"),
            ({"type": "SPRL", "kappa": 1.0, "gamma": 1.0}, "gamma"),
            ({"type": "DPRL", "kappa1": 1, "kappa2": 1, "gamma1": 0.5, "gamma2": 1.0}, "gamma2"),
            ({"type": "FractionalExp", "rho": 0, "kappa": 1, "estar": 1, "alpha": 0.5,
              "beta": 2.0, "m": 1}, "beta"),
            ({"type": "Unknown"}, "type"),
        ],
    )
    def test_out_of_range_names_field(self, data, field):
        with pytest.raises(ParameterError) as excinfo:
            parse_law(data)
        assert excinfo.value.field == field

    def test_extra_fields_rejected(self):
        with pytest.raises(ParameterError):
            parse_law({"type": "SPRL", "kappa": 1.0, "gamma": 0.5, "rho": 1.0})

    def test_validate_catches_unchecked_construction(self):
        law = SprlLaw.model_construct(type="SPRL", kappa=0.0, gamma=0.5)
        with pytest.raises(ParameterError) as excinfo:
            validate(law)
        assert excinfo.value.field == "kappa"

    def test_laws_are_immutable(self):
        law = SprlLaw(kappa=1.0, gamma=0.5)
        with pytest.raises(Exception):
            law.kappa = 2.0


class TestGains:
    def test_with_gains_allows_zero(self):
        law = DprlAltLaw(rho=1.0, kappa1=1.0, kappa2=1.0, gamma1=0.5, gamma2=1.5)
        weak = law.with_gains(rho=0.0)
        assert weak.rho == 0.0
        assert weak.kappa1 == 1.0

    def test_with_gains_unknown(self):
        with pytest.raises(KeyError):
            SprlLaw(kappa=1.0, gamma=0.5).with_gains(gamma=0.2)


class TestRegistry:
    """Law registry contents."""

    def test_every_type_registered(self):
        assert law_registry.tags() == [
            "SPRL", "SPRLalt", "DPRL", "DPRLalt",
            "TwoPhasePE", "PiecewiseExpA", "PiecewiseExpB", "FractionalExp",
        ]
        assert law_registry.get("DPRL") is DprlLaw
        assert law_registry.get("nope") is None

    def test_double_registration_rejected(self):
        with pytest.raises(ValueError):
            law_registry.register(SprlLaw)

    def test_list_laws_metadata(self):
        rows = {row["type"]: row for row in law_registry.list_laws()}
        assert rows["SPRL"]["fixed_time"] == "no"
        assert rows["DPRL"]["fixed_time"] == "yes"
        assert rows["TwoPhasePE"]["family"] == LawFamily.POWER_EXPONENTIAL.value
        assert "gamma2" in rows["DPRL"]["parameters"]
