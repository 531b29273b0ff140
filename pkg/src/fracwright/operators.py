"""Fractional operators acting term-wise on generalized power series.

A Caputo derivative of order γ maps x^p to

    Γ(p+1)/Γ(p+1-γ) · x^(p-γ)

and annihilates x^0..x^(m-1), m = ⌈γ⌉. Integer orders use the falling
factorial p(p-1)...(p-γ+1), which is the classical derivative of any power.
The Riemann-Liouville integral maps x^p to Γ(p+1)/Γ(p+1+γ) · x^(p+γ).

Stages compose into pipelines applied innermost first, so the operator

    d^{α_{n+1}} x^{ν_n} ... x^{ν_1} d^{α_1}

becomes [D^{α_1}, x^{ν_1}, D^{α_2}, ..., x^{ν_n}, D^{α_{n+1}}].
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import special

from fracwright.errors import (
    FracWrightError,
    InvalidParams,
    StageError,
    UnsupportedExponent,
)
from fracwright.gamma import integer_mask, log_gamma_array, nearest_integer
from fracwright.params import OperatorParams
from fracwright.series import GenPowerSeries, coefficient_table

logger = logging.getLogger("fracwright.operators")


class StageKind(Enum):
    CAPUTO = "caputo"
    POWER = "power"
    RL_INTEGRAL = "rl-integral"


@dataclass(frozen=True)
class PipelineStage:
    """One factor of a hyper-Bessel type operator.

    Attributes:
        kind: Caputo derivative, power multiplication or RL integral.
        value: Derivative/integral order, or the power exponent.
    """

    kind: StageKind
    value: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", float(self.value))
        if not math.isfinite(self.value):
            raise InvalidParams(f"stage value must be finite, got {self.value}")
        if self.kind is StageKind.CAPUTO and not self.value > 0:
            raise InvalidParams(f"Caputo order must be positive, got {self.value}")
        if self.kind is StageKind.RL_INTEGRAL and self.value < 0:
            raise InvalidParams(f"integral order must be nonnegative, got {self.value}")

    @classmethod
    def caputo(cls, order: float) -> PipelineStage:
        return cls(StageKind.CAPUTO, order)

    @classmethod
    def power(cls, exponent: float) -> PipelineStage:
        return cls(StageKind.POWER, exponent)

    @classmethod
    def integral(cls, order: float) -> PipelineStage:
        return cls(StageKind.RL_INTEGRAL, order)

    def __str__(self) -> str:
        symbol = {StageKind.CAPUTO: "D", StageKind.POWER: "x", StageKind.RL_INTEGRAL: "I"}
        return f"{symbol[self.kind]}^{self.value:g}"


def caputo_multipliers(p: np.ndarray, gamma: float, *, continued: bool = False) -> np.ndarray:
    """Caputo multipliers for an array of exponents.

    Args:
        p: Exponents of the powers.
        gamma: Order γ > 0.
        continued: Apply Γ(p+1)/Γ(p+1-γ) wherever it is defined instead of
            rejecting exponents whose result is not integrable.

    Returns:
        Multipliers; 0 marks annihilation.

    Raises:
        InvalidParams: If γ <= 0.
        UnsupportedExponent: In strict mode when p < 0 or p - γ <= -1 for a
            fractional order; in any mode when Γ(p+1) has a pole.
    """
    if not gamma > 0:
        raise InvalidParams(f"Caputo order must be positive, got {gamma}")
    p = np.asarray(p, dtype=float)

    order = nearest_integer(gamma)
    if order is not None:
        out = np.ones_like(p)
        for i in range(order):
            shifted = p - i
            out *= np.where(integer_mask(shifted) & (np.rint(shifted) == 0), 0.0, shifted)
        return out

    m = math.ceil(gamma)
    annihilated = integer_mask(p) & (np.rint(p) >= 0) & (np.rint(p) < m)
    live = ~annihilated
    if not continued:
        bad = live & ((p < 0) | (p - gamma <= -1))
        if np.any(bad):
            first = float(p[np.flatnonzero(bad)[0]])
            reason = "negative exponent" if first < 0 else "result is not integrable at 0"
            raise UnsupportedExponent(first, gamma, reason)
    top_log, top_sign = log_gamma_array(np.where(live, p + 1.0, 1.0))
    if np.any(top_sign == 0):
        first = float(p[np.flatnonzero(top_sign == 0)[0]])
        raise UnsupportedExponent(first, gamma, "Gamma(p+1) has a pole")
    bottom_log, bottom_sign = log_gamma_array(np.where(live, p + 1.0 - gamma, 1.0))
    sign = np.where(live, top_sign * bottom_sign, 0)
    log_abs = top_log - np.where(bottom_sign == 0, 0.0, bottom_log)
    return np.where(sign == 0, 0.0, sign * np.exp(np.where(sign == 0, 0.0, log_abs)))


def caputo_term(p: float, gamma: float, *, continued: bool = False) -> tuple[float, float]:
    """Apply a Caputo derivative of order γ to the single power x^p.

    Returns:
        (multiplier, new_exponent); multiplier 0 marks annihilation.

    Raises:
        InvalidParams: If γ <= 0.
        UnsupportedExponent: As caputo_multipliers.
    """
    multiplier = caputo_multipliers(np.array([p], dtype=float), gamma, continued=continued)
    return float(multiplier[0]), p - gamma


def _trimmed(stride: float, offset: float, coeffs: np.ndarray, start: int) -> GenPowerSeries:
    """Drop leading zero terms by advancing start."""
    nonzero = np.flatnonzero(coeffs)
    if nonzero.size == 0:
        return GenPowerSeries(stride, offset, np.zeros(0, dtype=complex), start)
    lead = int(nonzero[0])
    return GenPowerSeries(stride, offset, coeffs[lead:], start + lead)


def caputo_series(s: GenPowerSeries, gamma: float, *, continued: bool = False) -> GenPowerSeries:
    """Apply a Caputo derivative term by term.

    Zero terms are skipped without checking their exponents. Annihilated
    leading terms are dropped and `start` advances past them.

    Raises:
        UnsupportedExponent: As caputo_term, for a nonzero term.
    """
    out = np.zeros(len(s.coeffs), dtype=complex)
    nonzero = s.coeffs != 0
    if np.any(nonzero):
        multipliers = caputo_multipliers(s.exponents()[nonzero], gamma, continued=continued)
        out[nonzero] = s.coeffs[nonzero] * multipliers
    return _trimmed(s.stride, s.offset - gamma, out, s.start)


def rl_integral_series(s: GenPowerSeries, gamma: float) -> GenPowerSeries:
    """Apply the Riemann-Liouville integral of order γ >= 0 term by term.

    Raises:
        InvalidParams: If γ < 0.
        UnsupportedExponent: If a nonzero term has exponent p <= -1.
    """
    if gamma < 0:
        raise InvalidParams(f"integral order must be nonnegative, got {gamma}")
    if gamma == 0:
        return GenPowerSeries(s.stride, s.offset, s.coeffs.copy(), s.start)
    out = np.zeros(len(s.coeffs), dtype=complex)
    nonzero = s.coeffs != 0
    p = s.exponents()[nonzero]
    if np.any(p <= -1):
        raise UnsupportedExponent(float(p[p <= -1][0]), gamma, "integral diverges at 0")
    top_log, top_sign = log_gamma_array(p + 1.0)
    bottom_log, bottom_sign = log_gamma_array(p + 1.0 + gamma)
    out[nonzero] = s.coeffs[nonzero] * top_sign * bottom_sign * np.exp(top_log - bottom_log)
    return GenPowerSeries(s.stride, s.offset + gamma, out, s.start)


def power_multiply(s: GenPowerSeries, exponent: float) -> GenPowerSeries:
    """Multiply a series by x^exponent."""
    return GenPowerSeries(s.stride, s.offset + exponent, s.coeffs.copy(), s.start)


def apply_stage(stage: PipelineStage, s: GenPowerSeries, *, continued: bool = False) -> GenPowerSeries:
    match stage.kind:
        case StageKind.CAPUTO:
            return caputo_series(s, stage.value, continued=continued)
        case StageKind.POWER:
            return power_multiply(s, stage.value)
        case StageKind.RL_INTEGRAL:
            return rl_integral_series(s, stage.value)
    raise InvalidParams(f"unknown stage kind {stage.kind}")


def apply_stages(
    stages: Sequence[PipelineStage], s: GenPowerSeries, *, continued: bool = False
) -> GenPowerSeries:
    """Apply stages in order, first element innermost.

    Raises:
        StageError: Wrapping the error of the first failing stage.
    """
    out = s
    for index, stage in enumerate(stages):
        try:
            out = apply_stage(stage, out, continued=continued)
        except FracWrightError as exc:
            raise StageError(index, stage, exc) from exc
        logger.debug(
            "stage %d (%s) leaves %d terms from k=%d", index, stage, len(out.coeffs), out.start
        )
    return out


def build_pipeline(params: OperatorParams) -> list[PipelineStage]:
    """Stages of d^{α_{n+1}} x^{ν_n} ... d^{α_2} x^{ν_1} d^{α_1}, innermost first."""
    stages = [PipelineStage.caputo(params.alpha[0])]
    for nu, alpha in zip(params.nu, params.alpha[1:], strict=True):
        stages.append(PipelineStage.power(nu))
        stages.append(PipelineStage.caputo(alpha))
    return stages


def apply_pipeline(
    params: OperatorParams, s: GenPowerSeries, *, continued: bool = False
) -> GenPowerSeries:
    """Apply the fractional hyper-Bessel operator of params to a series.

    Raises:
        StageError: If any stage fails.
    """
    return apply_stages(build_pipeline(params), s, continued=continued)


def laguerre_derivative_stages(n: int) -> list[PipelineStage]:
    """Laguerre derivative d/dx x d/dx ... x d/dx with n+1 derivatives."""
    if n < 0:
        raise InvalidParams(f"n must be nonnegative, got {n}")
    stages = [PipelineStage.caputo(1.0)]
    for _ in range(n):
        stages += [PipelineStage.power(1.0), PipelineStage.caputo(1.0)]
    return stages


def garra_polito_stages(n: int, nu: float) -> list[PipelineStage]:
    """Fractional Laguerre form d^ν x^ν ... x^ν d^ν with n+1 Caputo derivatives."""
    if n < 0:
        raise InvalidParams(f"n must be nonnegative, got {n}")
    stages = [PipelineStage.caputo(nu)]
    for _ in range(n):
        stages += [PipelineStage.power(nu), PipelineStage.caputo(nu)]
    return stages


def multi_order_stages(exponents: Sequence[float], orders: Sequence[float]) -> list[PipelineStage]:
    """Stages of x^{a_0} d^{δ_1} x^{a_1} ... d^{δ_m} x^{a_m}, innermost first.

    Args:
        exponents: a_0..a_m.
        orders: δ_1..δ_m.

    Raises:
        InvalidParams: If len(exponents) != len(orders) + 1 or orders is empty.
    """
    exponents, orders = tuple(exponents), tuple(orders)
    if not orders or len(exponents) != len(orders) + 1:
        raise InvalidParams(
            f"need m >= 1 orders and m+1 exponents, got {len(orders)} and {len(exponents)}"
        )
    stages = [PipelineStage.power(exponents[-1])]
    for i in range(len(orders) - 1, -1, -1):
        stages.append(PipelineStage.caputo(orders[i]))
        stages.append(PipelineStage.power(exponents[i]))
    return [stage for stage in stages if not (stage.kind is StageKind.POWER and stage.value == 0)]


def hyper_bessel_stages(exponents: Sequence[float]) -> list[PipelineStage]:
    """Integer hyper-Bessel operator x^{a_0} d x^{a_1} ... d x^{a_m} of order m."""
    return multi_order_stages(exponents, [1.0] * (len(exponents) - 1))


def resonant_terms(params: OperatorParams, K: int) -> list[tuple[int, int]]:
    """Find where a fractional stage meets an integer power it annihilates.

    Term k >= 1 of the series enters Caputo stage j with exponent
    p = α_{n+1}·k + b_j - 1. If α_j is fractional and p lands in
    {0..⌈α_j⌉-1}, the stage annihilates a term the eigen-relation needs and
    the relation fails for that parameter set. Vanishing coefficients are
    ignored.

    Args:
        params: Operator parameters.
        K: Highest index checked.

    Returns:
        (j, k) pairs, j the 1-based Caputo stage.
    """
    off = params.offsets
    table = coefficient_table(params, K)
    ks = np.arange(1, K + 1)
    vanishing = (ks < table.limit) & (table.sign[1:] == 0)
    found: list[tuple[int, int]] = []
    for j, alpha in enumerate(params.alpha, 1):
        if nearest_integer(alpha) is not None:
            continue
        p = off.stride * ks + off.b[j - 1] - 1.0
        rounded = np.rint(p)
        hits = integer_mask(p) & (rounded >= 0) & (rounded < math.ceil(alpha)) & ~vanishing
        found.extend((j, int(k)) for k in ks[hits])
    return sorted(found, key=lambda pair: (pair[1], pair[0]))


def caputo_quadrature(f: Callable[[float], float], gamma: float, x: float, steps: int) -> float:
    """Caputo derivative of order γ ∈ (0, 1) at x by the L1 scheme.

    With h = x/N and b_j = (j+1)^{1-γ} - j^{1-γ}:

        D^γ f(x) ≈ h^{-γ}/Γ(2-γ) · Σ_{j=0}^{N-1} b_j (f(x_{N-j}) - f(x_{N-j-1}))

    Exact for linear f; the error is O(h^{2-γ}) for smooth f.

    Raises:
        InvalidParams: If γ is outside (0, 1), x <= 0 or steps < 1.
    """
    if not 0 < gamma < 1:
        raise InvalidParams(f"quadrature order must lie in (0, 1), got {gamma}")
    if not x > 0:
        raise InvalidParams(f"x must be positive, got {x}")
    if steps < 1:
        raise InvalidParams(f"steps must be at least 1, got {steps}")
    h = x / steps
    grid = np.linspace(0.0, x, steps + 1)
    values = np.vectorize(f, otypes=[float])(grid)
    increments = np.diff(values)[::-1]
    j = np.arange(steps, dtype=float)
    weights = (j + 1.0) ** (1.0 - gamma) - j ** (1.0 - gamma)
    total = math.fsum(weights * increments)
    return float(h ** (-gamma) * special.rgamma(2.0 - gamma) * total)


__all__ = [
    "PipelineStage",
    "StageKind",
    "apply_pipeline",
    "apply_stage",
    "apply_stages",
    "build_pipeline",
    "caputo_multipliers",
    "caputo_quadrature",
    "caputo_series",
    "caputo_term",
    "garra_polito_stages",
    "hyper_bessel_stages",
    "laguerre_derivative_stages",
    "multi_order_stages",
    "power_multiply",
    "resonant_terms",
    "rl_integral_series",
]
