"""Tests for harness.checks module."""

import math

import pytest

from fracwright.config import EvalOptions
from fracwright.errors import InvalidParams
from fracwright.harness.checks import (
    PdeParams,
    ReductionCase,
    ReductionKind,
    check_corollary,
    check_eigen,
    check_negative_control,
    check_pde,
    check_proposition_n1,
    check_quadrature,
    check_ratio_slope,
    check_reduction,
)
from fracwright.harness.reports import CONTROL, PDE, REDUCTION, ResidualReport
from fracwright.params import OperatorParams
from fracwright.presets import COROLLARY_TWO_STAGE, LAGUERRE_EXP_2, PROPOSITION_HALF, TRICOMI

XS = (0.25, 0.5, 1.0, 1.5)
POINTS = (0.5, -1.2, 2.0, 0.3 + 0.4j, -1.0 - 1.5j)


class TestCheckEigen:
    """Tests for check_eigen."""

    @pytest.mark.parametrize("lam", [1.0, -1.0])
    def test_tricomi(self, lam):
        """Test d(x d C0(λx)) = λ C0(λx)."""
        report = check_eigen(TRICOMI.params, lam, XS, 1e-8)
        assert report.check_name == "eigen"
        assert report.passed
        assert report.grid == list(XS)
        assert report.diagnostics["drift"] == 0.0
        assert report.diagnostics["extension"] is False

    @pytest.mark.parametrize("lam", [1.0, -1.0])
    def test_half_orders(self, lam):
        """Test the half-order eigen-relation."""
        report = check_eigen(PROPOSITION_HALF.params, lam, XS, 1e-8)
        assert report.passed
        assert report.diagnostics["terms_used"]["max"] >= 1

    def test_complex_lambda_is_extension(self):
        """Test that complex λ is tagged in the diagnostics."""
        report = check_eigen(TRICOMI.params, 0.5j, XS, 1e-8)
        assert report.diagnostics["extension"] is True
        assert report.passed

    def test_last_gamma_pole_breaks_relation(self):
        """Test that a vanishing c_3 beside a nonzero c_2 fails the relation."""
        params = OperatorParams(alpha=(1.0, 1.0, 1.0, 0.3), nu=(0.3, 0.3, 0.5))
        report = check_eigen(params, 1.0, (0.5, 1.0), 1e-8)
        assert not report.passed
        assert report.max_residual > 1e-3

    def test_rejects_nonpositive_points(self):
        """Test that points must be positive."""
        with pytest.raises(InvalidParams):
            check_eigen(TRICOMI.params, 1.0, [0.0, 1.0], 1e-8)
        with pytest.raises(InvalidParams):
            check_eigen(TRICOMI.params, 1.0, [], 1e-8)


class TestCheckCorollary:
    """Tests for check_corollary and check_proposition_n1."""

    def test_two_stage_preset(self):
        """Test the zero-drift two-stage eigenfunction."""
        report = check_corollary(COROLLARY_TWO_STAGE.params, 1.0, XS, 1e-8)
        assert report.check_name == "corollary"
        assert report.passed

    def test_rejects_drift(self):
        """Test that a nonzero drift is refused."""
        params = OperatorParams(alpha=(0.5, 0.5), nu=(1.0,))
        with pytest.raises(InvalidParams, match="zero drift"):
            check_corollary(params, 1.0, XS, 1e-8)

    def test_proposition(self):
        """Test d^β(x^ν d^α f) = x^{ν-α} f at α = β = ν = 1/2."""
        report = check_proposition_n1(0.5, 0.5, 0.5, XS, 1e-8)
        assert report.check_name == "proposition-n1"
        assert report.passed

    @pytest.mark.parametrize("alpha,beta", [(0.0, 0.5), (1.5, 0.5), (0.5, 1.2)])
    def test_proposition_orders(self, alpha, beta):
        """Test that α and β must lie in (0, 1]."""
        with pytest.raises(InvalidParams):
            check_proposition_n1(alpha, beta, 0.5, XS, 1e-8)


class TestCheckReduction:
    """Tests for check_reduction."""

    @pytest.mark.parametrize(
        "case",
        [
            ReductionCase.tricomi(),
            ReductionCase.laguerre_exp(2),
            ReductionCase.nml(2, 0.5),
            ReductionCase.classical_wright(0.5, 1.0),
        ],
    )
    def test_complex_points(self, case):
        """Test each reduction at real and complex points."""
        report = check_reduction(case, POINTS, 1e-12)
        assert report.passed
        assert report.residual_kind == REDUCTION
        assert report.check_name == f"reduction/{case.label()}"

    def test_bessel_j0(self):
        """Test 𝒲(-x²/4) = J_0(x) for the all-ones set."""
        report = check_reduction(ReductionCase.bessel_j0(), [0.5, 1.5, 3.0], 1e-12)
        assert report.passed
        assert report.check_name == "reduction/bessel-j0"

    def test_residuals_are_absolute(self):
        """Test that residuals are |𝒲 - baseline| with no scaling."""
        case = ReductionCase.laguerre_exp(2)
        zs = [3.0, -2.5, 1.0 + 2.0j]
        report = check_reduction(case, zs, 1e-12, EvalOptions())
        for z, residual in zip(zs, report.residuals, strict=True):
            left, right, _ = case.sides(complex(z), EvalOptions())
            assert residual == abs(left - right)
        assert report.passed

    def test_bessel_j0_complex_point(self):
        """Test that a complex point is recorded as an error, not raised."""
        report = check_reduction(ReductionCase.bessel_j0(), [1.0, 1.0 + 1.0j], 1e-12)
        assert report.residuals[1] == math.inf
        assert not report.passed
        assert len(report.diagnostics["errors"]) == 1

    def test_labels(self):
        """Test the case labels."""
        assert ReductionCase.laguerre_exp(3).label() == "laguerre-exp(n=3)"
        assert ReductionCase.nml(2, 0.5).label() == "nml(n=2, nu=0.5)"
        assert ReductionCase.classical_wright(0.7, 1.3).label() == (
            "classical-wright(beta=0.7, nu=1.3)"
        )
        assert ReductionCase.tricomi().label() == "tricomi"

    def test_params(self):
        """Test the reducing parameterizations."""
        assert ReductionCase.laguerre_exp(2).params() == LAGUERRE_EXP_2.params
        assert ReductionCase.tricomi().params() == TRICOMI.params
        classical = ReductionCase.classical_wright(0.5, 1.0).params()
        assert classical.alpha == (1.0, 0.5)

    def test_validation(self):
        """Test that n >= 1 and positive ν, β are required."""
        with pytest.raises(InvalidParams):
            ReductionCase(ReductionKind.NML, n=0)
        with pytest.raises(InvalidParams):
            ReductionCase.classical_wright(0.0, 1.0)
        with pytest.raises(InvalidParams):
            check_reduction(ReductionCase.tricomi(), [], 1e-12)


class TestCheckPde:
    """Tests for check_pde and the negative control."""

    def test_solution(self):
        """Test that e^{-iωt}𝒲(-ik x^β) solves the PDE."""
        p = PdeParams(alpha=0.5, beta=0.5, nu=0.5, omega=1.0, kcoef=1.0)
        report = check_pde(p, [0.2, 0.6, 1.0], [0.0, 1.0, 3.0], 1e-6)
        assert report.check_name == "pde"
        assert report.residual_kind == PDE
        assert report.passed
        assert len(report.grid) == 9
        assert report.grid[0] == (0.2, 0.0)
        assert report.diagnostics["isochronous"] is True
        assert report.diagnostics["extension"] is True

    def test_wrong_phase_fails(self):
        """Test that the e^{+iωt} phase leaves a residual of 2."""
        p = PdeParams(alpha=0.5, beta=0.5, nu=0.5, omega=1.0, kcoef=0.0, time_sign=1)
        report = check_pde(p, [0.5, 1.0], [0.0, 1.0], 1e-6)
        assert not report.passed
        assert report.max_residual == pytest.approx(2.0, rel=1e-8)

    def test_lost_isochrony_fails(self):
        """Test that a period shift drifting past 1e-14 fails the check."""
        p = PdeParams(alpha=0.5, beta=0.5, nu=0.5, omega=1.0, kcoef=1.0)
        report = check_pde(p, [0.5, 1.0], [0.0, 1e6], 1e-6)
        assert report.diagnostics["isochronous"] is False
        assert report.diagnostics["isochrony_max"] > 1e-14
        assert not report.passed
        assert report.residuals[0] <= 1e-6

    def test_negative_control(self):
        """Test that the control passes exactly when its inner check fails."""
        p = PdeParams(alpha=0.5, beta=0.5, nu=0.5, omega=1.0, kcoef=0.0, time_sign=1)
        control = check_negative_control(check_pde(p, [0.5, 1.0], [0.0], 1e-6), "control")
        assert control.passed
        assert control.residual_kind == CONTROL
        assert control.grid == ["pde"]

    def test_negative_control_of_passing_report(self):
        """Test that a passing inner report makes the control fail."""
        inner = ResidualReport(check_name="x", grid=[1.0], residuals=[1e-10], tolerance=1e-6)
        assert not check_negative_control(inner, "control").passed
        exact = ResidualReport(check_name="x", grid=[1.0], residuals=[0.0], tolerance=1e-6)
        assert not check_negative_control(exact, "control").passed

    def test_period(self):
        """Test T = 2π/ω and λ = -ik."""
        p = PdeParams(alpha=0.5, beta=0.5, nu=0.5, omega=2.0, kcoef=1.5)
        assert p.period == pytest.approx(math.pi)
        assert p.lam == -1.5j
        assert p.operator_params.alpha == (0.5, 0.5)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"alpha": 1.0},
            {"beta": 0.0},
            {"nu": -0.5},
            {"omega": 0.0},
            {"kcoef": math.inf},
            {"time_sign": 0},
        ],
    )
    def test_validation(self, kwargs):
        """Test parameter validation."""
        base = {"alpha": 0.5, "beta": 0.5, "nu": 0.5, "omega": 1.0, "kcoef": 1.0}
        with pytest.raises(InvalidParams):
            PdeParams(**{**base, **kwargs})


class TestCheckRatioSlope:
    """Tests for check_ratio_slope."""

    def test_laguerre_exp(self):
        """Test that r_k ~ k^{-3} gives slope -3."""
        report = check_ratio_slope([LAGUERRE_EXP_2.params])
        assert report.check_name == "ratio-test"
        assert report.passed
        assert report.diagnostics["slopes"][0] == pytest.approx(-3.0, abs=0.05)

    def test_slow_decay(self):
        """Test that r_499 >= 1e-6 gives an infinite residual."""
        report = check_ratio_slope([TRICOMI.params])
        assert report.residuals == [math.inf]
        assert not report.passed


class TestCheckQuadrature:
    """Tests for check_quadrature."""

    def test_monomials(self):
        """Test the L1 scheme against the power rule."""
        report = check_quadrature([(2.0, 0.5, 1.0), (2.5, 0.3, 1.5)], steps=1024)
        assert report.check_name == "caputo-quadrature"
        assert report.passed
        assert report.diagnostics["refined_steps"] == 4096
        assert report.diagnostics["min_reduction"] >= 2.0

    def test_no_refinement_gain(self):
        """Test that a case that does not converge is flagged."""
        report = check_quadrature([(2.0, 0.5, 1.0)], steps=256, refine=1)
        assert report.residuals == [math.inf]
        assert "errors" in report.diagnostics
