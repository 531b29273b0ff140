"""Tests for the gamma module."""

import math

import numpy as np
import pytest

from fracwright.errors import DenominatorPole, NumeratorPole
from fracwright.gamma import (
    POLE_TOLERANCE,
    gamma_ratio,
    integer_mask,
    is_pole,
    log_gamma_array,
    nearest_integer,
    pole_mask,
    recip_gamma,
    signed_log_gamma,
)


class TestNearestInteger:
    """Tests for nearest_integer and is_pole."""

    def test_exact_integers(self):
        """Test that exact integers are recognized."""
        assert nearest_integer(3.0) == 3
        assert nearest_integer(-2.0) == -2
        assert nearest_integer(0.0) == 0

    def test_within_tolerance(self):
        """Test that values within the relative tolerance snap to the integer."""
        assert nearest_integer(-3.0 + 1e-14) == -3
        assert nearest_integer(1e6 * (1 + 1e-13)) == 1_000_000

    def test_outside_tolerance(self):
        """Test that values outside the tolerance are not integers."""
        assert nearest_integer(0.5) is None
        assert nearest_integer(-1.0 + 1e-9) is None

    def test_non_finite(self):
        """Test that inf and nan are never integers."""
        assert nearest_integer(math.inf) is None
        assert nearest_integer(math.nan) is None

    @pytest.mark.parametrize("x", [0.0, -1.0, -7.0, -3.0 - 1e-14])
    def test_poles(self, x):
        """Test that nonpositive integers are poles."""
        assert is_pole(x)

    @pytest.mark.parametrize("x", [1.0, 2.0, -0.5, 0.3, -1.0 + 1e-6])
    def test_not_poles(self, x):
        """Test that positive integers and non-integers are not poles."""
        assert not is_pole(x)

    def test_masks_agree_with_scalars(self):
        """Test that the vectorised masks match the scalar tests."""
        xs = np.array([-2.0, -1.5, 0.0, 0.5, 1.0, 3.0 + 1e-14, -4.0 - 1e-10])
        assert list(integer_mask(xs)) == [nearest_integer(x) is not None for x in xs]
        assert list(pole_mask(xs)) == [is_pole(x) for x in xs]

    def test_tolerance_value(self):
        """Test the documented pole tolerance."""
        assert POLE_TOLERANCE == 1e-12


class TestSignedLogGamma:
    """Tests for signed_log_gamma and recip_gamma."""

    @pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.5, 10.0, 170.5])
    def test_matches_math_lgamma(self, x):
        """Test log|Γ| against math.lgamma for positive arguments."""
        g = signed_log_gamma(x)
        assert g.sign == 1
        assert g.log_abs == pytest.approx(math.lgamma(x), rel=1e-14, abs=1e-14)

    @pytest.mark.parametrize("x", [-0.5, -1.5, -2.5, -3.25])
    def test_negative_sign(self, x):
        """Test the sign of Γ on the negative axis."""
        expected = 1 if math.gamma(x) > 0 else -1
        assert signed_log_gamma(x).sign == expected
        assert signed_log_gamma(x).value == pytest.approx(math.gamma(x), rel=1e-12)

    @pytest.mark.parametrize("x", [0.0, -1.0, -5.0])
    def test_pole(self, x):
        """Test that poles are signalled with sign 0, not raised."""
        g = signed_log_gamma(x)
        assert g.is_pole
        assert g.value == math.inf
        assert g.reciprocal == 0.0
        assert recip_gamma(x) == 0.0

    def test_recip_gamma_values(self):
        """Test 1/Γ at ordinary points."""
        assert recip_gamma(1.0) == pytest.approx(1.0)
        assert recip_gamma(5.0) == pytest.approx(1 / 24)
        assert recip_gamma(0.5) == pytest.approx(1 / math.sqrt(math.pi))

    def test_reflection(self):
        """Test Γ(x)Γ(1-x) = π/sin(πx) on 1000 random non-integers in (-30, 0)."""
        rng = np.random.default_rng(7)
        for x in rng.uniform(-30.0, 0.0, size=1000):
            if abs(x - round(x)) < 0.01:
                continue
            left = signed_log_gamma(x)
            right = signed_log_gamma(1.0 - x)
            product = left.sign * right.sign * math.exp(left.log_abs + right.log_abs)
            assert product == pytest.approx(math.pi / math.sin(math.pi * x), rel=1e-10)

    def test_recurrence(self):
        """Test log|Γ(x+1)| - log|Γ(x)| = log|x| on random points."""
        rng = np.random.default_rng(11)
        for x in rng.uniform(-30.0, 60.0, size=200):
            if abs(x - round(x)) < 0.01:
                continue
            step = signed_log_gamma(x + 1.0).log_abs - signed_log_gamma(x).log_abs
            assert step == pytest.approx(math.log(abs(x)), abs=1e-12)


class TestGammaRatio:
    """Tests for gamma_ratio."""

    @pytest.mark.parametrize("a, b", [(0.5, 0.0), (1.3, 0.2), (-0.7, 0.4)])
    def test_ratio_approaches_power(self, a, b):
        """Test that |Γ(z+a)/Γ(z+b) / z^(a-b) - 1| decays monotonically past z = 50."""
        zs = np.geomspace(50.0, 1000.0, 25)
        errors = []
        for z in zs:
            log_abs, sign = gamma_ratio(z + a, z + b)
            assert sign == 1
            errors.append(abs(math.expm1(log_abs - (a - b) * math.log(z))))
        assert all(later < earlier for earlier, later in zip(errors, errors[1:]))
        assert errors[-1] < 1e-2

    def test_large_arguments_stay_finite(self):
        """Test Γ(200.5)/Γ(200) although both Gammas overflow."""
        log_abs, sign = gamma_ratio(200.5, 200.0)
        assert sign == 1
        assert log_abs == pytest.approx(math.lgamma(200.5) - math.lgamma(200.0), abs=1e-11)
        assert math.exp(log_abs) == pytest.approx(math.sqrt(200.0), rel=1e-2)

    def test_simple_ratio(self):
        """Test Γ(5)/Γ(3) = 12."""
        log_abs, sign = gamma_ratio(5.0, 3.0)
        assert sign * math.exp(log_abs) == pytest.approx(12.0)

    def test_numerator_pole(self):
        """Test that a numerator pole raises NumeratorPole."""
        with pytest.raises(NumeratorPole) as exc_info:
            gamma_ratio(-2.0, 1.5)
        assert exc_info.value.argument == -2.0

    def test_denominator_pole(self):
        """Test that a denominator pole raises DenominatorPole."""
        with pytest.raises(DenominatorPole):
            gamma_ratio(1.5, 0.0)


class TestLogGammaArray:
    """Tests for log_gamma_array."""

    def test_matches_scalar(self):
        """Test that the vectorised form agrees with signed_log_gamma."""
        xs = np.array([-2.5, -1.0, 0.0, 0.5, 3.0, 12.25])
        log_abs, sign = log_gamma_array(xs)
        for x, la, sg in zip(xs, log_abs, sign, strict=True):
            g = signed_log_gamma(x)
            assert sg == g.sign
            if g.is_pole:
                assert la == math.inf
            else:
                assert la == pytest.approx(g.log_abs)
