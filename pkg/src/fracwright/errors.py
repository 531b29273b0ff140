"""Exception hierarchy shared by every fracwright module.

Library code raises these; only the CLI turns them into exit codes.
"""

from __future__ import annotations


class FracWrightError(Exception):
    """Base class for all fracwright errors."""


class InvalidParams(FracWrightError, ValueError):
    """Parameter vectors or options violate their invariants."""


class GammaPole(FracWrightError, ArithmeticError):
    """A Gamma argument landed on a nonpositive integer.

    Attributes:
        argument: The offending Gamma argument.
        k: Series index at which the pole was met, if any.
        j: Offset index (1-based) at which the pole was met, if any.
    """

    side = "Gamma"

    def __init__(self, argument: float, k: int | None = None, j: int | None = None) -> None:
        self.argument = argument
        self.k = k
        self.j = j
        where = ""
        if k is not None:
            where = f" at k={k}" + (f", j={j}" if j is not None else "")
        super().__init__(f"{self.side} pole: Gamma({argument:.17g}){where}")


class NumeratorPole(GammaPole):
    """Pole of a Gamma function in a numerator; the quantity is undefined."""

    side = "Numerator"


class DenominatorPole(GammaPole):
    """Pole of a Gamma function in a denominator; callers decide whether it collapses to 0."""

    side = "Denominator"


class NoConvergence(FracWrightError, ArithmeticError):
    """A truncated series hit its term cap before the tail became negligible.

    Attributes:
        terms: Number of terms summed.
        value: Partial sum at the cap.
        tail: Magnitude of the first omitted term.
    """

    def __init__(self, terms: int, value: complex, tail: float) -> None:
        self.terms = terms
        self.value = value
        self.tail = tail
        super().__init__(
            f"series did not converge after {terms} terms "
            f"(|partial sum|={abs(value):.3e}, tail={tail:.3e})"
        )


class UnsupportedExponent(FracWrightError, ValueError):
    """A term-wise operator cannot act on a power of this exponent."""

    def __init__(self, exponent: float, order: float, reason: str) -> None:
        self.exponent = exponent
        self.order = order
        super().__init__(f"cannot apply order {order:g} to x^{exponent:.17g}: {reason}")


class StageError(FracWrightError):
    """A pipeline stage failed; wraps the underlying error.

    Attributes:
        stage_index: Position of the stage in application order (0-based).
        stage: The stage that failed.
        error: The underlying exception.
    """

    def __init__(self, stage_index: int, stage: object, error: Exception) -> None:
        self.stage_index = stage_index
        self.stage = stage
        self.error = error
        super().__init__(f"stage {stage_index} ({stage}) failed: {error}")


__all__ = [
    "FracWrightError",
    "InvalidParams",
    "GammaPole",
    "NumeratorPole",
    "DenominatorPole",
    "NoConvergence",
    "UnsupportedExponent",
    "StageError",
]
