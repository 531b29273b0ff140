"""Tests for configuration, logging setup and the error hierarchy."""

import logging

import pytest

from fracwright.config import (
    DEFAULT_EPS,
    DEFAULT_KMAX,
    EvalOptions,
    configure_logging,
    default_workers,
)
from fracwright.errors import (
    DenominatorPole,
    FracWrightError,
    GammaPole,
    InvalidParams,
    NoConvergence,
    NumeratorPole,
    StageError,
    UnsupportedExponent,
)


class TestEvalOptions:
    """Tests for EvalOptions."""

    def test_defaults(self):
        """Test the default truncation settings."""
        opts = EvalOptions()
        assert opts.eps == DEFAULT_EPS == 1e-15
        assert opts.kmax == DEFAULT_KMAX == 500

    @pytest.mark.parametrize("eps", [0.0, 1.0, -1e-3])
    def test_eps_range(self, eps):
        """Test that eps must lie in (0, 1)."""
        with pytest.raises(InvalidParams):
            EvalOptions(eps=eps)

    def test_kmax_positive(self):
        """Test that kmax must be at least 1."""
        with pytest.raises(InvalidParams):
            EvalOptions(kmax=0)

    def test_from_env(self, monkeypatch):
        """Test FRACWRIGHT_EPS and FRACWRIGHT_KMAX overrides."""
        monkeypatch.setenv("FRACWRIGHT_EPS", "1e-12")
        monkeypatch.setenv("FRACWRIGHT_KMAX", "200")
        opts = EvalOptions.from_env()
        assert opts.eps == 1e-12
        assert opts.kmax == 200

    def test_from_env_unset(self, monkeypatch):
        """Test that unset variables fall back to defaults."""
        monkeypatch.delenv("FRACWRIGHT_EPS", raising=False)
        monkeypatch.setenv("FRACWRIGHT_KMAX", "")
        assert EvalOptions.from_env() == EvalOptions()

    def test_from_env_invalid(self, monkeypatch):
        """Test that a malformed value names the variable."""
        monkeypatch.setenv("FRACWRIGHT_KMAX", "many")
        with pytest.raises(InvalidParams, match="FRACWRIGHT_KMAX"):
            EvalOptions.from_env()


class TestWorkers:
    """Tests for default_workers."""

    def test_default(self, monkeypatch):
        """Test that the suite runs in-process by default."""
        monkeypatch.delenv("FRACWRIGHT_WORKERS", raising=False)
        assert default_workers() == 1

    def test_env(self, monkeypatch):
        """Test the FRACWRIGHT_WORKERS override."""
        monkeypatch.setenv("FRACWRIGHT_WORKERS", "4")
        assert default_workers() == 4

    def test_floor(self, monkeypatch):
        """Test that nonpositive values become 1."""
        monkeypatch.setenv("FRACWRIGHT_WORKERS", "0")
        assert default_workers() == 1


class TestConfigureLogging:
    """Tests for configure_logging."""

    def test_verbose(self):
        """Test that verbose enables DEBUG with a single handler."""
        logger = logging.getLogger("fracwright")
        configure_logging(verbose=True)
        configure_logging(verbose=True)
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 1
        configure_logging(verbose=False)

    def test_quiet(self, monkeypatch):
        """Test that the default level only shows warnings."""
        monkeypatch.setattr("fracwright.config.DEBUG", False)
        configure_logging(verbose=False)
        assert logging.getLogger("fracwright").level == logging.WARNING


class TestErrors:
    """Tests for the exception hierarchy."""

    def test_hierarchy(self):
        """Test that every error derives from FracWrightError."""
        for cls in (InvalidParams, GammaPole, NoConvergence, UnsupportedExponent, StageError):
            assert issubclass(cls, FracWrightError)
        assert issubclass(InvalidParams, ValueError)
        assert issubclass(NumeratorPole, GammaPole)
        assert issubclass(DenominatorPole, ArithmeticError)

    def test_pole_message(self):
        """Test that poles report their argument and indices."""
        err = NumeratorPole(-2.0, k=3, j=1)
        assert err.argument == -2.0
        assert "Numerator pole" in str(err)
        assert "k=3, j=1" in str(err)

    def test_no_convergence_fields(self):
        """Test that NoConvergence carries its diagnostics."""
        err = NoConvergence(50, 1.5 + 0j, 0.25)
        assert err.terms == 50
        assert err.tail == 0.25
        assert "50 terms" in str(err)

    def test_stage_error_message(self):
        """Test that StageError names the stage and the cause."""
        cause = UnsupportedExponent(-0.5, 0.5, "negative exponent")
        err = StageError(2, "D^0.5", cause)
        assert err.stage_index == 2
        assert err.error is cause
        assert "stage 2 (D^0.5)" in str(err)
        assert "negative exponent" in str(err)
