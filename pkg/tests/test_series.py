"""Tests for the series module."""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import special

from fracwright.config import EvalOptions
from fracwright.errors import InvalidParams, NoConvergence, NumeratorPole
from fracwright.params import OperatorParams
from fracwright.presets import CLASSICAL_WRIGHT, LAGUERRE_EXP_2, N_MITTAG_LEFFLER_2, TRICOMI
from fracwright.series import (
    CompensatedSum,
    GenPowerSeries,
    coefficient_table,
    mpw_coefficient_direct,
    mpw_coefficients,
    mpw_eval,
    mpw_series,
    ratio_diagnostics,
)

# a denominator pole Γ(0) at k=1, j=2 zeroes every coefficient after c_0
DENOMINATOR_POLE = OperatorParams(alpha=(2.5, 0.5, 1.0), nu=(0.5, 1.0))
# a numerator pole Γ(0) at k=1, j=1 leaves c_1 undefined
NUMERATOR_POLE = OperatorParams(alpha=(2.0, 1.0), nu=(1.0,))


class TestCompensatedSum:
    """Tests for CompensatedSum."""

    def test_recovers_cancelled_digits(self):
        """Test that a small addend survives cancellation of large ones."""
        acc = CompensatedSum()
        acc.extend([1e16, 1.0, -1e16])
        assert acc.value == 1.0

    def test_complex_components(self):
        """Test that both components are compensated independently."""
        acc = CompensatedSum()
        acc.extend([1e16 + 1e16j, 1.0 - 1.0j, -1e16 - 1e16j])
        assert acc.value == complex(1.0, -1.0)

    def test_empty(self):
        """Test that an empty sum is zero."""
        assert CompensatedSum().value == 0j


class TestCoefficients:
    """Tests for coefficient tables."""

    def test_tricomi(self):
        """Test c_k = 1/(k!)^2."""
        expected = [1.0 / math.factorial(k) ** 2 for k in range(11)]
        assert_allclose(mpw_coefficients(TRICOMI.params, 10).real, expected, rtol=1e-14)

    def test_laguerre_exp(self):
        """Test c_k = 1/(k!)^3 for n = 2."""
        expected = [1.0 / math.factorial(k) ** 3 for k in range(9)]
        assert_allclose(mpw_coefficients(LAGUERRE_EXP_2.params, 8).real, expected, rtol=1e-13)

    def test_n_mittag_leffler(self):
        """Test c_k = 1/Γ(k/2 + 1)^3 for the 2-Mittag-Leffler preset."""
        expected = [1.0 / math.gamma(k / 2 + 1) ** 3 for k in range(13)]
        assert_allclose(mpw_coefficients(N_MITTAG_LEFFLER_2.params, 12).real, expected, rtol=1e-13)

    def test_c0(self):
        """Test c_0 = 1/Γ(1 + drift)."""
        params = OperatorParams(alpha=(0.3, 0.8), nu=(0.5,))
        assert mpw_coefficients(params, 0)[0].real == pytest.approx(1.0 / math.gamma(1.2))

    def test_matches_direct_product(self):
        """Test the tabulated recurrence against the direct double product."""
        rng = np.random.default_rng(2024)
        for _ in range(100):
            n = int(rng.integers(1, 4))
            params = OperatorParams(
                alpha=tuple(rng.uniform(0.2, 1.5, n + 1)), nu=tuple(rng.uniform(0.2, 1.5, n))
            )
            table = coefficient_table(params, 100)
            for k in (1, 2, 5, 10, 25, 50, 100):
                direct = mpw_coefficient_direct(params, k)
                if abs(direct) < 1e-200:
                    continue
                assert table.coefficient(k) == pytest.approx(direct, rel=1e-12)

    def test_denominator_pole_zeroes_tail(self):
        """Test that a product-denominator pole zeroes every later coefficient."""
        table = coefficient_table(DENOMINATOR_POLE, 6)
        assert table.zero_from == 1
        assert table.pole is None
        coeffs = table.values()
        assert coeffs[0].real == pytest.approx(1.0 / math.gamma(-0.5))
        assert not np.any(coeffs[1:])
        assert mpw_coefficient_direct(DENOMINATOR_POLE, 3) == 0.0

    def test_numerator_pole_raises(self):
        """Test that an undefined coefficient raises NumeratorPole."""
        with pytest.raises(NumeratorPole) as exc_info:
            mpw_coefficients(NUMERATOR_POLE, 3)
        assert exc_info.value.k == 1
        assert exc_info.value.j == 1

    def test_numerator_pole_below_limit_is_fine(self):
        """Test that coefficients before the pole are still available."""
        table = coefficient_table(NUMERATOR_POLE, 3)
        assert table.limit == 1
        # Γ(b_2) = Γ(0) in the last factor: c_0 vanishes
        assert table.coefficient(0) == 0.0

    def test_direct_numerator_pole(self):
        """Test that the direct product raises on a numerator pole."""
        with pytest.raises(NumeratorPole):
            mpw_coefficient_direct(OperatorParams(alpha=(2.0, 1.0), nu=(2.0,)), 2)

    def test_negative_k_rejected(self):
        """Test that a negative table size is rejected."""
        with pytest.raises(InvalidParams):
            coefficient_table(TRICOMI.params, -1)


class TestMpwEval:
    """Tests for mpw_eval."""

    def test_tricomi_at_one(self):
        """Test C_0(1) = I_0(2)."""
        result = mpw_eval(TRICOMI.params, 1.0)
        assert result.value.real == pytest.approx(special.iv(0, 2.0), rel=1e-14)
        assert result.value.imag == 0.0
        assert not result.pole_truncated

    def test_tricomi_negative_is_bessel(self):
        """Test C_0(-x²/4) = J_0(x)."""
        for x in (0.5, 1.0, 2.0, 3.0):
            value = mpw_eval(TRICOMI.params, -x * x / 4).value
            assert value.real == pytest.approx(special.j0(x), abs=1e-14)

    def test_at_zero(self):
        """Test that z = 0 returns c_0 after one term."""
        result = mpw_eval(TRICOMI.params, 0.0)
        assert result.value == 1.0
        assert result.terms_used == 1
        assert result.tail_estimate == 0.0

    def test_laguerre_exp_alternating(self):
        """Test e_2(-1) = Σ (-1)^k/(k!)^3 ≈ 0.12044."""
        expected = math.fsum((-1) ** k / math.factorial(k) ** 3 for k in range(30))
        value = mpw_eval(LAGUERRE_EXP_2.params, -1.0).value.real
        assert value == pytest.approx(expected, rel=1e-14)
        assert value == pytest.approx(0.12044, abs=1e-5)

    @pytest.mark.parametrize("x", [0.1, 1.0, 3.0])
    def test_classical_wright(self, x):
        """Test 𝒲(βx) against scipy's Wright generalized Bessel function."""
        value = mpw_eval(CLASSICAL_WRIGHT.params, 0.5 * x).value.real
        assert value == pytest.approx(special.wright_bessel(0.5, 1.0, x), rel=1e-11)

    def test_complex_argument(self):
        """Test C_0(i) = Σ i^k/(k!)^2."""
        expected = sum(1j**k / math.factorial(k) ** 2 for k in range(40))
        value = mpw_eval(TRICOMI.params, 1j).value
        assert value.real == pytest.approx(expected.real, rel=1e-14)
        assert value.imag == pytest.approx(expected.imag, rel=1e-14)

    def test_conjugate_symmetry(self):
        """Test 𝒲(conj z) = conj 𝒲(z) for real parameters."""
        params = OperatorParams(alpha=(0.7, 0.5, 0.9), nu=(0.3, 1.0))
        z = 1.3 - 0.8j
        left = mpw_eval(params, z.conjugate()).value
        right = mpw_eval(params, z).value.conjugate()
        assert abs(left - right) <= 1e-14 * abs(right)

    def test_terms_and_tail(self):
        """Test that the reported tail is below the truncation target."""
        result = mpw_eval(TRICOMI.params, 1.0, EvalOptions(eps=1e-15))
        assert 10 < result.terms_used < 30
        assert result.tail_estimate <= 1e-15 * abs(result.value)

    def test_shared_table(self):
        """Test that a precomputed table gives the same value."""
        opts = EvalOptions()
        table = coefficient_table(LAGUERRE_EXP_2.params, opts.kmax + 1)
        left = mpw_eval(LAGUERRE_EXP_2.params, 2.5, opts, table)
        right = mpw_eval(LAGUERRE_EXP_2.params, 2.5, opts)
        assert left == right

    def test_pole_truncated(self):
        """Test that a zeroed product terminates the series."""
        result = mpw_eval(DENOMINATOR_POLE, 2.0)
        assert result.pole_truncated
        assert result.terms_used == 1
        assert result.value.real == pytest.approx(1.0 / math.gamma(-0.5))

    def test_numerator_pole(self):
        """Test that reaching an undefined coefficient raises."""
        with pytest.raises(NumeratorPole):
            mpw_eval(NUMERATOR_POLE, 1.0)

    def test_no_convergence(self):
        """Test that a too small kmax raises NoConvergence."""
        with pytest.raises(NoConvergence) as exc_info:
            mpw_eval(TRICOMI.params, 10.0, EvalOptions(kmax=5))
        assert exc_info.value.terms == 5
        assert exc_info.value.tail > 0

    def test_overflow_is_no_convergence(self):
        """Test that an overflowing term is reported as NoConvergence."""
        with pytest.raises(NoConvergence):
            mpw_eval(TRICOMI.params, 1e300)


class TestRatioDiagnostics:
    """Tests for ratio_diagnostics."""

    def test_tricomi(self):
        """Test r_k = 1/(k+1)^2 for the Tricomi series."""
        r = ratio_diagnostics(TRICOMI.params, 20)
        ks = np.arange(1, 20)
        assert_allclose(r, 1.0 / (ks + 1.0) ** 2, rtol=1e-12)

    def test_slope(self):
        """Test the log-log slope -Σα for α = ν = 1/2."""
        params = OperatorParams(alpha=(0.5, 0.5), nu=(0.5,))
        r = ratio_diagnostics(params, 500)
        ks = np.arange(1, 500)
        window = ks >= 100
        slope = np.polyfit(np.log(ks[window]), np.log(r[window]), 1)[0]
        assert slope == pytest.approx(-1.0, abs=0.05)

    def test_small_k_rejected(self):
        """Test that K must be at least 2."""
        with pytest.raises(InvalidParams):
            ratio_diagnostics(TRICOMI.params, 1)

    def test_vanishing_tail(self):
        """Test ratios of a zeroed series are 0."""
        r = ratio_diagnostics(DENOMINATOR_POLE, 5)
        assert not np.any(r)


class TestGenPowerSeries:
    """Tests for GenPowerSeries."""

    def test_exponents(self):
        """Test exponents stride·(start+i) + offset."""
        s = GenPowerSeries(stride=0.5, offset=-0.25, coeffs=np.ones(3), start=2)
        assert_allclose(s.exponents(), [0.75, 1.25, 1.75])
        assert s.K == 4

    def test_evaluate(self):
        """Test evaluation of 1 + 2x + 3x²."""
        s = GenPowerSeries(stride=1.0, offset=0.0, coeffs=np.array([1.0, 2.0, 3.0]))
        assert s.evaluate(2.0) == pytest.approx(17.0)

    def test_evaluate_empty(self):
        """Test that an empty series evaluates to 0."""
        assert GenPowerSeries(stride=1.0, offset=0.0).evaluate(1.5) == 0j

    def test_add_aligns_starts(self):
        """Test adding series with different start indices."""
        left = GenPowerSeries(1.0, 0.0, np.array([1.0, 1.0]), start=0)
        right = GenPowerSeries(1.0, 0.0, np.array([2.0, 2.0]), start=1)
        total = left + right
        assert total.start == 0
        assert_allclose(total.coeffs, [1.0, 3.0, 2.0])

    def test_add_rejects_mismatch(self):
        """Test that different offsets cannot be added."""
        with pytest.raises(InvalidParams):
            GenPowerSeries(1.0, 0.0, np.ones(1)) + GenPowerSeries(1.0, 0.5, np.ones(1))

    def test_stride_must_be_positive(self):
        """Test stride validation."""
        with pytest.raises(InvalidParams):
            GenPowerSeries(stride=0.0, offset=0.0)

    def test_scaled(self):
        """Test multiplying every coefficient."""
        s = GenPowerSeries(1.0, 0.0, np.array([1.0, 2.0])).scaled(1j)
        assert_allclose(s.coeffs, [1j, 2j])

    def test_mpw_series(self):
        """Test coefficients c_k λ^k with stride α_{n+1}."""
        s = mpw_series(CLASSICAL_WRIGHT.params, -2.0, 6)
        assert s.stride == 0.5
        assert s.offset == 0.0
        expected = mpw_coefficients(CLASSICAL_WRIGHT.params, 6) * (-2.0) ** np.arange(7)
        assert_allclose(s.coeffs, expected)

    def test_mpw_series_matches_eval(self):
        """Test that the series in x reproduces 𝒲(λx^s)."""
        params = OperatorParams(alpha=(0.5, 0.7), nu=(0.9,))
        s = mpw_series(params, 1.0, 60)
        for x in (0.3, 1.0, 2.0):
            expected = mpw_eval(params, x**0.7).value
            assert s.evaluate(x) == pytest.approx(expected, rel=1e-13)

    def test_mpw_series_lambda_zero(self):
        """Test that λ = 0 leaves only the constant term."""
        s = mpw_series(TRICOMI.params, 0.0, 4)
        assert_allclose(s.coeffs, [1.0, 0.0, 0.0, 0.0, 0.0])
