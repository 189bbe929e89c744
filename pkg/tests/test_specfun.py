"""Tests for the special functions."""

import math

import pytest
from hypothesis import example, given, settings as hypothesis_settings
from hypothesis import strategies as st
from scipy import special

from ers_tznn.config import settings
from ers_tznn.exceptions import ConvergenceError, DomainError
from ers_tznn.specfun import beta, ln_beta, ln_gamma, reg_inc_beta

unit = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)
shape = st.floats(min_value=0.1, max_value=20.0, allow_nan=False)


class TestGammaAndBeta:
    """log-Gamma and the complete Beta function."""

    def test_ln_gamma_integers(self):
        assert ln_gamma(5.0) == pytest.approx(math.log(24.0), rel=1e-14)
        assert ln_gamma(1.0) == pytest.approx(0.0, abs=1e-15)

    def test_beta_values(self):
        assert beta(2.0, 3.0) == pytest.approx(1.0 / 12.0, rel=1e-13)
        assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-13)
        assert ln_beta(2.0, 3.0) == pytest.approx(math.log(1.0 / 12.0), rel=1e-13)

    @pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
    def test_non_positive_arguments_rejected(self, bad):
        with pytest.raises(DomainError):
            ln_gamma(bad)
        with pytest.raises(DomainError):
            beta(1.0, bad)


class TestRegIncBeta:
    """Regularized incomplete Beta function."""

    def test_endpoints(self):
        assert reg_inc_beta(0.0, 2.0, 3.0) == 0.0
        assert reg_inc_beta(1.0, 2.0, 3.0) == 1.0

    def test_closed_form_p_one(self):
        # I(x, 1, q) = 1 - (1 - x)^q
        for x in (0.1, 0.5, 0.9):
            assert reg_inc_beta(x, 1.0, 3.0) == pytest.approx(1.0 - (1.0 - x) ** 3, abs=1e-14)

    def test_half_half_is_arcsine(self):
        x = 0.3
        expected = 2.0 / math.pi * math.asin(math.sqrt(x))
        assert reg_inc_beta(x, 0.5, 0.5) == pytest.approx(expected, abs=1e-13)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(x=unit, p=shape, q=shape)
    def test_matches_scipy(self, x, p, q):
        assert reg_inc_beta(x, p, q) == pytest.approx(special.betainc(p, q, x), abs=1e-10)

    @hypothesis_settings(max_examples=200, deadline=None)
    @given(x=unit, p=shape, q=shape)
    @example(x=1e-14, p=0.5, q=1.0)
    def test_reflection(self, x, p, q):
        y = 1.0 - x
        x = 1.0 - y  # pair free of cancellation in 1 - x
        assert reg_inc_beta(x, p, q) + reg_inc_beta(y, q, p) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("x", [-0.1, 1.5, math.nan])
    def test_x_outside_unit_interval(self, x):
        with pytest.raises(DomainError):
            reg_inc_beta(x, 2.0, 2.0)

    def test_non_positive_shape(self):
        with pytest.raises(DomainError):
            reg_inc_beta(0.5, 0.0, 2.0)

    def test_iteration_cap(self, monkeypatch):
        monkeypatch.setattr(settings, "cf_max_iterations", 1)
        with pytest.raises(ConvergenceError):
            reg_inc_beta(0.3, 5.0, 5.0)
