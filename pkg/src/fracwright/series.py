"""Series engine for the multi-parameter generalized Wright function.

    𝒲(z) = Σ_k c_k z^k,
    c_k  = [Π_{i=1}^{k} Π_{j=1}^{n} Γ(s·i + a_j) / Γ(s·i + b_j)] / Γ(s·k + b_{n+1}),

with s = α_{n+1}. The double product P_k is accumulated as a running
log-space sum (the recurrence P_k = P_{k-1} · Π_j ratio_j(k)) and the last
Gamma is applied per k, so a pole of Γ(s·k + b_{n+1}) zeroes only c_k while a
pole of a product denominator zeroes every later coefficient.

Coefficients stay as (log|c_k|, sign) pairs and become complex only when
multiplied by z^k.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from fracwright.config import EvalOptions
from fracwright.errors import InvalidParams, NoConvergence, NumeratorPole
from fracwright.gamma import gamma_ratio, log_gamma_array, signed_log_gamma
from fracwright.params import OperatorParams

logger = logging.getLogger("fracwright.series")

_MAX_EXP = 709.0


class CompensatedSum:
    """Running complex sum with Neumaier compensation on each component.

    Every addition splits into the rounded sum and its exact rounding error
    (an error-free transformation); the errors are carried separately and
    folded back in when the value is read.
    """

    def __init__(self) -> None:
        self._re = 0.0
        self._im = 0.0
        self._re_err = 0.0
        self._im_err = 0.0

    @staticmethod
    def _two_sum(total: float, value: float) -> tuple[float, float]:
        s = total + value
        if abs(total) >= abs(value):
            err = (total - s) + value
        else:
            err = (value - s) + total
        return s, err

    def add(self, value: complex) -> None:
        self._re, e = self._two_sum(self._re, value.real)
        self._re_err += e
        self._im, e = self._two_sum(self._im, value.imag)
        self._im_err += e

    def extend(self, values: Iterable[complex]) -> None:
        for v in values:
            self.add(v)

    @property
    def value(self) -> complex:
        return complex(self._re + self._re_err, self._im + self._im_err)


@dataclass(frozen=True)
class EvalResult:
    """A series value with truncation diagnostics.

    Attributes:
        value: The partial sum.
        terms_used: Number of terms summed (k = 0..terms_used-1).
        tail_estimate: Magnitude of the first omitted term.
        pole_truncated: A Gamma pole zeroed the running product, so the
            series terminated as a polynomial.
    """

    value: complex
    terms_used: int
    tail_estimate: float
    pole_truncated: bool = False


@dataclass(frozen=True)
class CoefficientTable:
    """Signed-log coefficients c_0..c_K of one parameter set.

    Built once and shared read-only between point evaluations.

    Attributes:
        params: Parameters the table belongs to.
        log_abs: log|c_k|; -inf where c_k = 0.
        sign: Sign of c_k; 0 where c_k = 0.
        limit: Coefficients with k >= limit are undefined (numerator pole).
        pole: (argument, k, j) of the first relevant numerator pole, or None.
        zero_from: First k from which every coefficient vanishes, or None.
    """

    params: OperatorParams
    log_abs: np.ndarray
    sign: np.ndarray
    limit: int
    pole: tuple[float, int, int] | None = None
    zero_from: int | None = None

    @property
    def size(self) -> int:
        return len(self.log_abs)

    def require(self, k: int) -> None:
        """Raise if c_k is undefined or was not tabulated."""
        if k >= self.limit and self.pole is not None:
            argument, pk, pj = self.pole
            raise NumeratorPole(argument, k=pk, j=pj)
        if k >= self.size:
            raise IndexError(f"coefficient {k} not tabulated (size {self.size})")

    def coefficient(self, k: int) -> float:
        self.require(k)
        if self.sign[k] == 0:
            return 0.0
        return float(self.sign[k]) * math.exp(float(self.log_abs[k]))

    def values(self, count: int | None = None) -> np.ndarray:
        """Materialise c_0..c_{count-1} as complex numbers."""
        count = self.size if count is None else count
        if count > 0:
            self.require(count - 1)
        sign = self.sign[:count]
        with np.errstate(over="ignore"):
            mags = np.exp(np.where(sign == 0, -np.inf, self.log_abs[:count]))
        return (sign * mags).astype(complex)

    def term(self, k: int, log_r: float, phase: complex) -> complex:
        """c_k z^k for z = exp(log_r) * phase; phase is the unit-modulus z^k/|z|^k."""
        self.require(k)
        if self.sign[k] == 0:
            return 0j
        exponent = float(self.log_abs[k]) + k * log_r
        if exponent > _MAX_EXP:
            raise OverflowError(f"term {k} overflows (log magnitude {exponent:.1f})")
        return float(self.sign[k]) * math.exp(exponent) * phase


def coefficient_table(params: OperatorParams, K: int) -> CoefficientTable:
    """Tabulate c_0..c_K in log space.

    A numerator pole does not raise here; it caps `limit` so that callers
    which never reach it (a sum converging earlier) are unaffected. Poles met
    after the running product has vanished are ignored.

    Args:
        params: Operator parameters.
        K: Highest index to tabulate.

    Returns:
        The CoefficientTable.
    """
    if K < 0:
        raise InvalidParams(f"K must be nonnegative, got {K}")
    off = params.offsets
    s = off.stride
    ks = np.arange(1, K + 1, dtype=float)

    factor_log = np.zeros(K)
    factor_sign = np.ones(K, dtype=np.int64)
    pole_k: int | None = None
    pole: tuple[float, int, int] | None = None
    for j, (a_j, b_j) in enumerate(zip(off.a, off.b[:-1], strict=True), 1):
        num_args = s * ks + a_j
        num_log, num_sign = log_gamma_array(num_args)
        den_log, den_sign = log_gamma_array(s * ks + b_j)
        num_poles = np.flatnonzero(num_sign == 0)
        if num_poles.size:
            i = int(num_poles[0])
            if pole_k is None or i + 1 < pole_k:
                pole_k = i + 1
                pole = (float(num_args[i]), i + 1, j)
        ok = (num_sign != 0) & (den_sign != 0)
        factor_log += np.where(ok, num_log - np.where(ok, den_log, 0.0), 0.0)
        factor_sign *= np.where(num_sign == 0, 1, num_sign * den_sign)

    running_log = np.concatenate(([0.0], np.cumsum(factor_log)))
    running_sign = np.concatenate(([1], np.cumprod(factor_sign)))

    zeros = np.flatnonzero(running_sign == 0)
    zero_from = int(zeros[0]) if zeros.size else None
    if pole_k is not None and zero_from is not None and pole_k > zero_from:
        pole_k, pole = None, None

    last_log, last_sign = log_gamma_array(s * np.arange(0, K + 1, dtype=float) + off.b[-1])
    sign = running_sign * last_sign
    log_abs = np.where(sign == 0, -np.inf, running_log - np.where(last_sign == 0, 0.0, last_log))
    limit = pole_k if pole_k is not None else K + 1
    if pole is not None:
        logger.debug("numerator pole for %s at k=%d, j=%d", params.label(), pole[1], pole[2])
    return CoefficientTable(
        params=params,
        log_abs=log_abs,
        sign=sign.astype(np.int64),
        limit=limit,
        pole=pole,
        zero_from=zero_from,
    )


def mpw_coefficients(params: OperatorParams, K: int) -> np.ndarray:
    """Compute c_0..c_K of 𝒲^(ᾱ,ν̄).

    Args:
        params: Operator parameters.
        K: Highest index.

    Returns:
        Complex array of length K+1 (real-valued for real parameters).

    Raises:
        NumeratorPole: If some Γ(s·k + a_j) with k <= K is a pole while the
            running product is still nonzero.
    """
    table = coefficient_table(params, K)
    return table.values(K + 1)


def mpw_coefficient_direct(params: OperatorParams, k: int) -> float:
    """Compute c_k by evaluating the full double product from scratch.

    Independent of the tabulated recurrence; used to cross-check it.

    Raises:
        NumeratorPole: If a numerator Gamma is a pole.
    """
    off = params.offsets
    s = off.stride
    log_abs, sign = 0.0, 1
    for i in range(1, k + 1):
        for j in range(params.n):
            if signed_log_gamma(s * i + off.b[j]).is_pole:
                if signed_log_gamma(s * i + off.a[j]).is_pole:
                    raise NumeratorPole(s * i + off.a[j], k=i, j=j + 1)
                return 0.0
            lr, sr = gamma_ratio(s * i + off.a[j], s * i + off.b[j])
            log_abs += lr
            sign *= sr
    last = signed_log_gamma(s * k + off.b[-1])
    if last.is_pole:
        return 0.0
    return sign * last.sign * math.exp(log_abs - last.log_abs)


def _phase_stepper(z: complex):
    """Yield z^k/|z|^k for k = 0, 1, ...; exact signs for real z."""
    if z.imag == 0.0:
        step = 1.0 if z.real > 0 else -1.0
        phase = 1.0
        while True:
            yield complex(phase)
            phase *= step
    theta = cmath.phase(z)
    k = 0
    while True:
        yield cmath.rect(1.0, k * theta)
        k += 1


def mpw_eval(
    params: OperatorParams,
    z: complex,
    opts: EvalOptions | None = None,
    table: CoefficientTable | None = None,
) -> EvalResult:
    """Evaluate 𝒲^(ᾱ,ν̄)(z) by truncated, compensated summation.

    Summation stops at the first k where two consecutive terms are both at
    most eps·|partial sum|, at a pole termination, or at kmax.

    Args:
        params: Operator parameters.
        z: Complex argument.
        opts: Truncation options (FRACWRIGHT_EPS / FRACWRIGHT_KMAX defaults).
        table: Precomputed coefficients with at least kmax+1 entries.

    Returns:
        EvalResult.

    Raises:
        NumeratorPole: If a needed coefficient is undefined.
        NoConvergence: If kmax is reached with tail > sqrt(eps)·|value|.
    """
    opts = opts or EvalOptions.from_env()
    z = complex(z)
    if table is None or table.size < opts.kmax + 1:
        table = coefficient_table(params, opts.kmax + 1)

    if z == 0:
        return EvalResult(value=complex(table.coefficient(0)), terms_used=1, tail_estimate=0.0)

    log_r = math.log(abs(z))
    phases = _phase_stepper(z)
    acc = CompensatedSum()
    small_run = 0
    k = 0
    try:
        for k in range(opts.kmax):
            phase = next(phases)
            if table.zero_from is not None and k >= table.zero_from:
                logger.debug("series terminated by a Gamma pole at k=%d", k)
                return EvalResult(
                    value=acc.value, terms_used=k, tail_estimate=0.0, pole_truncated=True
                )
            term = table.term(k, log_r, phase)
            acc.add(term)
            small_run = small_run + 1 if abs(term) <= opts.eps * abs(acc.value) else 0
            if small_run >= 2:
                break
        else:
            k = opts.kmax - 1
        tail = _tail(table, k + 1, log_r, next(phases))
    except OverflowError as exc:
        raise NoConvergence(k, acc.value, math.inf) from exc

    value = acc.value
    terms_used = k + 1
    if small_run < 2 and tail > math.sqrt(opts.eps) * abs(value):
        raise NoConvergence(terms_used, value, tail)
    logger.debug("z=%s summed %d terms, tail %.3e", z, terms_used, tail)
    return EvalResult(value=value, terms_used=terms_used, tail_estimate=tail)


def _tail(table: CoefficientTable, k: int, log_r: float, phase: complex) -> float:
    if k >= table.limit or k >= table.size:
        return math.inf
    return abs(table.term(k, log_r, phase))


def ratio_diagnostics(params: OperatorParams, K: int) -> np.ndarray:
    """Ratio-test sequence r_k = |c_{k+1}/c_k| for k = 1..K-1.

    For large k, r_k behaves like Π_{j=1}^{n+1} (α_{n+1} k)^(-α_j), so log r_k
    against log k has slope -Σ α_j.

    Args:
        params: Operator parameters.
        K: Highest coefficient index, at least 2.

    Returns:
        Array of K-1 nonnegative reals (inf where c_k = 0 but c_{k+1} != 0).

    Raises:
        InvalidParams: If K < 2.
        NumeratorPole: As mpw_coefficients.
    """
    if K < 2:
        raise InvalidParams(f"K must be at least 2, got {K}")
    table = coefficient_table(params, K)
    table.require(K)
    log_abs, sign = table.log_abs, table.sign
    out = np.empty(K - 1)
    for idx, k in enumerate(range(1, K)):
        if sign[k + 1] == 0:
            out[idx] = 0.0
        elif sign[k] == 0:
            out[idx] = math.inf
        else:
            out[idx] = math.exp(float(log_abs[k + 1] - log_abs[k]))
    return out


@dataclass
class GenPowerSeries:
    """Truncated generalized power series Σ_i c_i x^(stride·(start+i) + offset).

    Explicit `start` keeps exponents exact after leading terms are dropped
    (the first Caputo stage annihilates k = 0 and the sum then begins at 1).

    Attributes:
        stride: Exponent step ρ > 0.
        offset: Exponent shift σ; may be negative after power multiplications.
        coeffs: Complex coefficients.
        start: Index k of coeffs[0].
    """

    stride: float
    offset: float
    coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex))
    start: int = 0

    def __post_init__(self) -> None:
        if not self.stride > 0:
            raise InvalidParams(f"stride must be positive, got {self.stride}")
        self.coeffs = np.asarray(self.coeffs, dtype=complex)

    @property
    def K(self) -> int:
        """Highest index carried."""
        return self.start + len(self.coeffs) - 1

    def indices(self) -> np.ndarray:
        return np.arange(self.start, self.start + len(self.coeffs), dtype=float)

    def exponents(self) -> np.ndarray:
        return self.stride * self.indices() + self.offset

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def scaled(self, factor: complex) -> GenPowerSeries:
        return GenPowerSeries(self.stride, self.offset, self.coeffs * factor, self.start)

    def __add__(self, other: GenPowerSeries) -> GenPowerSeries:
        if self.stride != other.stride or self.offset != other.offset:
            raise InvalidParams("series with different stride or offset cannot be added")
        lo = min(self.start, other.start)
        hi = max(self.K, other.K)
        coeffs = np.zeros(max(hi - lo + 1, 0), dtype=complex)
        coeffs[self.start - lo : self.start - lo + len(self.coeffs)] += self.coeffs
        coeffs[other.start - lo : other.start - lo + len(other.coeffs)] += other.coeffs
        return GenPowerSeries(self.stride, self.offset, coeffs, lo)

    def evaluate(self, x: float) -> complex:
        """Sum the series at x > 0 with math.fsum on each component."""
        if len(self.coeffs) == 0:
            return 0j
        nonzero = self.coeffs != 0
        if not np.any(nonzero):
            return 0j
        terms = self.coeffs[nonzero] * np.power(float(x), self.exponents()[nonzero])
        return complex(math.fsum(terms.real), math.fsum(terms.imag))


def mpw_series(
    params: OperatorParams,
    lam: complex,
    K: int,
    table: CoefficientTable | None = None,
) -> GenPowerSeries:
    """Series of x ↦ 𝒲(λ x^{α_{n+1}}) in x, truncated at k = K.

    Args:
        params: Operator parameters.
        lam: Scale λ of the argument (complex allowed).
        K: Highest index kept.
        table: Optional precomputed coefficients.

    Returns:
        GenPowerSeries with stride α_{n+1}, offset 0 and coefficients c_k λ^k.
    """
    if table is None or table.size < K + 1:
        table = coefficient_table(params, K)
    coeffs = table.values(K + 1)
    lam = complex(lam)
    powers = np.array([lam**k for k in range(K + 1)], dtype=complex)
    if lam == 0:
        powers[0] = 1.0
    return GenPowerSeries(stride=params.offsets.stride, offset=0.0, coeffs=coeffs * powers)


__all__ = [
    "CoefficientTable",
    "CompensatedSum",
    "EvalOptions",
    "EvalResult",
    "GenPowerSeries",
    "coefficient_table",
    "mpw_coefficient_direct",
    "mpw_coefficients",
    "mpw_eval",
    "mpw_series",
    "ratio_diagnostics",
]
