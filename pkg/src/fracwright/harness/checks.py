"""Identity checks for the generalized Wright function and its operator.

Each check evaluates both sides of an identity through disjoint code paths:
the left side applies the operator pipeline to a truncated series, the right
side sums the series directly (or calls an independent baseline). Errors at
a point never abort a check; the point gets an infinite residual and the
error text goes into the report diagnostics.
"""

from __future__ import annotations

import cmath
import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from fracwright import baselines
from fracwright.config import EvalOptions
from fracwright.errors import FracWrightError, InvalidParams
from fracwright.harness.reports import (
    ABSOLUTE,
    CONTROL,
    PDE,
    REDUCTION,
    RELATIVE,
    SLOPE,
    ResidualReport,
    combined_kind,
    point_residual,
)
from fracwright.operators import apply_pipeline, caputo_quadrature, caputo_term, resonant_terms
from fracwright.params import OperatorParams
from fracwright.series import (
    GenPowerSeries,
    coefficient_table,
    mpw_eval,
    mpw_series,
    ratio_diagnostics,
)

logger = logging.getLogger("fracwright.harness")

DRIFT_TOLERANCE = 1e-12
ISOCHRONY_TOLERANCE = 1e-14
# extra series terms beyond what the right side needed
SERIES_MARGIN = 3


def _positive_points(xs: Sequence[float]) -> list[float]:
    points = [float(x) for x in xs]
    if not points:
        raise InvalidParams("at least one evaluation point is required")
    for x in points:
        if not (math.isfinite(x) and x > 0):
            raise InvalidParams(f"evaluation points must be positive, got {x}")
    return points


def _terms_summary(terms: Sequence[int]) -> dict[str, float]:
    if not terms:
        return {}
    return {"min": min(terms), "max": max(terms), "mean": float(np.mean(terms))}


def _finish(report: ResidualReport) -> ResidualReport:
    if not report.passed:
        logger.warning(
            "%s failed: max residual %.3e > %.1e",
            report.check_name,
            report.max_residual,
            report.tolerance,
        )
    return report


def _lam_diagnostic(lam: complex) -> float | complex:
    return lam.real if lam.imag == 0 else lam


def _eigen_report(
    name: str,
    params: OperatorParams,
    lam: complex,
    xs: Sequence[float],
    tol: float,
    opts: EvalOptions | None,
    with_power: bool,
) -> ResidualReport:
    """Shared body of the eigen-type checks.

    Right side λ·x^drift·𝒲(λx^s) per point (x^drift dropped when
    with_power is false); left side the pipeline applied to the series of
    𝒲(λx^s) truncated a few terms past the longest right-side sum.
    """
    opts = opts or EvalOptions.from_env()
    lam = complex(lam)
    points = _positive_points(xs)
    off = params.offsets
    table = coefficient_table(params, opts.kmax + 1)
    diagnostics: dict = {
        "params": params.to_dict(),
        "lambda": _lam_diagnostic(lam),
        "drift": off.drift,
        "exponent_rule": "continued",
        "extension": lam.imag != 0,
    }
    errors: list[str] = []

    rhs: list[complex | None] = []
    terms: list[int] = []
    for x in points:
        if lam == 0:
            rhs.append(0j)
            terms.append(1)
            continue
        try:
            result = mpw_eval(params, lam * x**off.stride, opts, table)
        except FracWrightError as exc:
            errors.append(f"x={x:g}: {exc}")
            rhs.append(None)
            continue
        factor = x**off.drift if with_power else 1.0
        rhs.append(lam * factor * result.value)
        terms.append(result.terms_used)

    K = min(max(terms, default=1) + SERIES_MARGIN, opts.kmax)
    diagnostics["series_order"] = K
    diagnostics["terms_used"] = _terms_summary(terms)
    diagnostics["resonant_terms"] = resonant_terms(params, K)

    lhs_series: GenPowerSeries | None = None
    try:
        lhs_series = apply_pipeline(params, mpw_series(params, lam, K, table), continued=True)
    except FracWrightError as exc:
        errors.append(f"pipeline: {exc}")

    residuals: list[float] = []
    kinds: list[str] = []
    for x, right in zip(points, rhs, strict=True):
        if right is None or lhs_series is None:
            residuals.append(math.inf)
            continue
        if lam == 0:
            residuals.append(abs(lhs_series.evaluate(x)))
            kinds.append(ABSOLUTE)
            continue
        value, kind = point_residual(lhs_series.evaluate(x), right)
        residuals.append(value)
        kinds.append(kind)
    if errors:
        diagnostics["errors"] = errors
    return _finish(
        ResidualReport(
            check_name=name,
            grid=points,
            residuals=residuals,
            tolerance=tol,
            residual_kind=combined_kind(kinds),
            diagnostics=diagnostics,
        )
    )


def check_eigen(
    params: OperatorParams,
    lam: complex,
    xs: Sequence[float],
    tol: float,
    opts: EvalOptions | None = None,
) -> ResidualReport:
    """Check D 𝒲(λx^{α_{n+1}}) = λ x^drift 𝒲(λx^{α_{n+1}}) on a grid.

    Args:
        params: Operator parameters.
        lam: Eigenvalue λ; complex values are tagged "extension".
        xs: Positive evaluation points.
        tol: Pass threshold on the max residual.
        opts: Truncation options.

    Returns:
        ResidualReport named "eigen".
    """
    return _eigen_report("eigen", params, lam, xs, tol, opts, with_power=True)


def check_corollary(
    params: OperatorParams,
    lam: complex,
    xs: Sequence[float],
    tol: float,
    opts: EvalOptions | None = None,
) -> ResidualReport:
    """Check the pure eigen-relation D 𝒲(λx^s) = λ 𝒲(λx^s) of a zero-drift set.

    Raises:
        InvalidParams: If |drift| > 1e-12.
    """
    drift = params.offsets.drift
    if abs(drift) > DRIFT_TOLERANCE:
        raise InvalidParams(f"corollary check needs zero drift, got {drift:.3g}")
    return _eigen_report("corollary", params, lam, xs, tol, opts, with_power=False)


def check_proposition_n1(
    alpha: float,
    beta: float,
    nu: float,
    xs: Sequence[float],
    tol: float,
    opts: EvalOptions | None = None,
) -> ResidualReport:
    """Check d^β(x^ν d^α f) = x^{ν-α} f for f = 𝒲_{α,β,ν}(x^β).

    Raises:
        InvalidParams: If α or β is outside (0, 1] or ν <= 0.
    """
    for label, value in (("alpha", alpha), ("beta", beta)):
        if not 0 < value <= 1:
            raise InvalidParams(f"{label} must lie in (0, 1], got {value}")
    params = OperatorParams(alpha=(alpha, beta), nu=(nu,))
    return _eigen_report("proposition-n1", params, 1.0, xs, tol, opts, with_power=True)


class ReductionKind(Enum):
    LAGUERRE_EXP = "laguerre-exp"
    NML = "nml"
    CLASSICAL_WRIGHT = "classical-wright"
    TRICOMI = "tricomi"
    BESSEL_J0 = "bessel-j0"


@dataclass(frozen=True)
class ReductionCase:
    """A special case where 𝒲 reduces to a classical function.

    Attributes:
        kind: Which reduction.
        n: Order of LaguerreExp and NML.
        nu: ν of NML and ClassicalWright.
        beta: β of ClassicalWright.
    """

    kind: ReductionKind
    n: int = 1
    nu: float = 1.0
    beta: float = 1.0

    def __post_init__(self) -> None:
        if self.kind in (ReductionKind.LAGUERRE_EXP, ReductionKind.NML) and self.n < 1:
            raise InvalidParams(f"{self.kind.value} needs n >= 1, got {self.n}")
        if not self.nu > 0 or not self.beta > 0:
            raise InvalidParams(f"nu and beta must be positive, got {self.nu}, {self.beta}")

    @classmethod
    def laguerre_exp(cls, n: int) -> ReductionCase:
        return cls(ReductionKind.LAGUERRE_EXP, n=n)

    @classmethod
    def nml(cls, n: int, nu: float) -> ReductionCase:
        return cls(ReductionKind.NML, n=n, nu=nu)

    @classmethod
    def classical_wright(cls, beta: float, nu: float) -> ReductionCase:
        return cls(ReductionKind.CLASSICAL_WRIGHT, nu=nu, beta=beta)

    @classmethod
    def tricomi(cls) -> ReductionCase:
        return cls(ReductionKind.TRICOMI)

    @classmethod
    def bessel_j0(cls) -> ReductionCase:
        return cls(ReductionKind.BESSEL_J0)

    def label(self) -> str:
        match self.kind:
            case ReductionKind.LAGUERRE_EXP:
                return f"laguerre-exp(n={self.n})"
            case ReductionKind.NML:
                return f"nml(n={self.n}, nu={self.nu:g})"
            case ReductionKind.CLASSICAL_WRIGHT:
                return f"classical-wright(beta={self.beta:g}, nu={self.nu:g})"
        return self.kind.value

    def params(self) -> OperatorParams:
        """Parameterization of 𝒲 that reduces to this case."""
        match self.kind:
            case ReductionKind.LAGUERRE_EXP:
                return OperatorParams(alpha=(1.0,) * (self.n + 1), nu=(1.0,) * self.n)
            case ReductionKind.NML:
                return OperatorParams(alpha=(self.nu,) * (self.n + 1), nu=(self.nu,) * self.n)
            case ReductionKind.CLASSICAL_WRIGHT:
                return OperatorParams(alpha=(1.0, self.beta), nu=(self.nu,))
        return OperatorParams(alpha=(1.0, 1.0), nu=(1.0,))

    def sides(self, z: complex, opts: EvalOptions) -> tuple[complex, complex, int]:
        """(generalized Wright side, baseline side, terms used) at z."""
        params = self.params()
        match self.kind:
            case ReductionKind.LAGUERRE_EXP:
                left = mpw_eval(params, z, opts)
                return left.value, baselines.laguerre_exp(self.n, z, opts), left.terms_used
            case ReductionKind.NML:
                left = mpw_eval(params, z, opts)
                right = baselines.n_mittag_leffler(self.n, self.nu, z, opts)
                return left.value, right, left.terms_used
            case ReductionKind.CLASSICAL_WRIGHT:
                left = mpw_eval(params, self.beta * z, opts)
                return left.value, baselines.wright(self.beta, self.nu, z, opts), left.terms_used
            case ReductionKind.TRICOMI:
                left = mpw_eval(params, z, opts)
                return left.value, baselines.tricomi_c0(z, opts), left.terms_used
        if complex(z).imag != 0:
            raise InvalidParams(f"bessel-j0 reduction takes real x, got {z}")
        x = complex(z).real
        left = mpw_eval(params, -x * x / 4.0, opts)
        return left.value, baselines.bessel_j(0.0, x, opts), left.terms_used


def check_reduction(
    case: ReductionCase,
    zs: Sequence[complex],
    tol: float,
    opts: EvalOptions | None = None,
) -> ResidualReport:
    """Compare 𝒲 under a reducing parameterization with its classical function.

    Residuals are absolute: |𝒲 - baseline|.

    Raises:
        InvalidParams: If zs is empty.
    """
    opts = opts or EvalOptions.from_env()
    points = [complex(z) for z in zs]
    if not points:
        raise InvalidParams("at least one evaluation point is required")
    residuals: list[float] = []
    terms: list[int] = []
    errors: list[str] = []
    for z in points:
        try:
            left, right, used = case.sides(z, opts)
        except FracWrightError as exc:
            errors.append(f"z={z}: {exc}")
            residuals.append(math.inf)
            continue
        residuals.append(abs(left - right))
        terms.append(used)
    diagnostics: dict = {"case": case.label(), "terms_used": _terms_summary(terms)}
    if errors:
        diagnostics["errors"] = errors
    grid = [z.real if z.imag == 0 else z for z in points]
    return _finish(
        ResidualReport(
            check_name=f"reduction/{case.label()}",
            grid=grid,
            residuals=residuals,
            tolerance=tol,
            residual_kind=REDUCTION,
            diagnostics=diagnostics,
        )
    )


@dataclass(frozen=True)
class PdeParams:
    """Parameters of the isochronous Laguerre-type PDE.

    u_t + iωu = d^β(x^ν d^α u) + i·k·x^{ν-α}·u, solved by
    u = exp(σ iωt)·𝒲_{α,β,ν}(-ik x^β) with σ = time_sign.

    Attributes:
        alpha: Inner Caputo order in (0, 1).
        beta: Outer Caputo order in (0, 1).
        nu: Power weight, positive.
        omega: Angular frequency, positive.
        kcoef: The real constant k.
        time_sign: σ; -1 solves the equation, +1 leaves the residual 2iωu.
    """

    alpha: float
    beta: float
    nu: float
    omega: float
    kcoef: float
    time_sign: int = -1

    def __post_init__(self) -> None:
        for label, value in (("alpha", self.alpha), ("beta", self.beta)):
            if not 0 < value < 1:
                raise InvalidParams(f"{label} must lie in (0, 1), got {value}")
        if not self.nu > 0:
            raise InvalidParams(f"nu must be positive, got {self.nu}")
        if not self.omega > 0:
            raise InvalidParams(f"omega must be positive, got {self.omega}")
        if not math.isfinite(self.kcoef):
            raise InvalidParams(f"kcoef must be finite, got {self.kcoef}")
        if self.time_sign not in (-1, 1):
            raise InvalidParams(f"time_sign must be -1 or +1, got {self.time_sign}")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega

    @property
    def operator_params(self) -> OperatorParams:
        return OperatorParams(alpha=(self.alpha, self.beta), nu=(self.nu,))

    @property
    def lam(self) -> complex:
        return -1j * self.kcoef

    def phase(self, t: float) -> complex:
        return cmath.exp(self.time_sign * 1j * self.omega * t)


def check_pde(
    p: PdeParams,
    xgrid: Sequence[float],
    tgrid: Sequence[float],
    tol: float,
    opts: EvalOptions | None = None,
) -> ResidualReport:
    """Substitute u(x, t) into the isochronous PDE on an (x, t) grid.

    The spatial side applies the n=1 pipeline to the complex-coefficient
    series of 𝒲(-ik x^β); u_t = σiωu is exact. Residuals are normalised by
    |ωu| + |k x^{ν-α} u|. Isochrony |u(x, t+T) - u(x, t)| / max(1, |u|) must stay
    within ISOCHRONY_TOLERANCE; each point's residual is the larger of the PDE
    residual and the isochrony rescaled so that ISOCHRONY_TOLERANCE maps to tol.
    """
    opts = opts or EvalOptions.from_env()
    xs = _positive_points(xgrid)
    ts = [float(t) for t in tgrid]
    if not ts:
        raise InvalidParams("at least one time point is required")
    params = p.operator_params
    lam = p.lam
    drift = p.nu - p.alpha
    table = coefficient_table(params, opts.kmax + 1)
    errors: list[str] = []

    values: list[complex | None] = []
    terms: list[int] = []
    for x in xs:
        try:
            result = mpw_eval(params, lam * x**p.beta, opts, table)
        except FracWrightError as exc:
            errors.append(f"x={x:g}: {exc}")
            values.append(None)
            continue
        values.append(result.value)
        terms.append(result.terms_used)

    K = min(max(terms, default=1) + SERIES_MARGIN, opts.kmax)
    spatial: GenPowerSeries | None = None
    try:
        spatial = apply_pipeline(params, mpw_series(params, lam, K, table), continued=True)
    except FracWrightError as exc:
        errors.append(f"pipeline: {exc}")

    grid: list[tuple[float, float]] = []
    residuals: list[float] = []
    isochrony = 0.0
    for x, w in zip(xs, values, strict=True):
        spatial_w = spatial.evaluate(x) if (spatial is not None and w is not None) else None
        for t in ts:
            grid.append((x, t))
            if w is None or spatial_w is None:
                residuals.append(math.inf)
                continue
            u = p.phase(t) * w
            u_t = p.time_sign * 1j * p.omega * u
            potential = 1j * p.kcoef * x**drift * u
            residual = u_t + 1j * p.omega * u - p.phase(t) * spatial_w - potential
            scale = abs(p.omega * u) + abs(potential)
            pde_residual = abs(residual) / scale if scale > 0 else abs(residual)
            shifted = p.phase(t + p.period) * w
            period_gap = abs(shifted - u) / max(1.0, abs(u))
            isochrony = max(isochrony, period_gap)
            residuals.append(max(pde_residual, period_gap * tol / ISOCHRONY_TOLERANCE))

    diagnostics: dict = {
        "pde": {
            "alpha": p.alpha,
            "beta": p.beta,
            "nu": p.nu,
            "omega": p.omega,
            "kcoef": p.kcoef,
            "time_sign": p.time_sign,
        },
        "exponent_rule": "continued",
        "extension": p.kcoef != 0,
        "series_order": K,
        "terms_used": _terms_summary(terms),
        "isochrony_max": isochrony,
        "isochronous": isochrony <= ISOCHRONY_TOLERANCE,
    }
    if errors:
        diagnostics["errors"] = errors
    return _finish(
        ResidualReport(
            check_name="pde",
            grid=grid,
            residuals=residuals,
            tolerance=tol,
            residual_kind=PDE,
            diagnostics=diagnostics,
        )
    )


def check_negative_control(report: ResidualReport, name: str) -> ResidualReport:
    """Turn a report that must fail into one that passes when it does.

    The residual is tolerance / max_residual of the inner report, so the
    control passes exactly when the inner check exceeded its tolerance.
    """
    worst = report.max_residual
    residual = 0.0 if math.isinf(worst) else (math.inf if worst == 0 else report.tolerance / worst)
    return ResidualReport(
        check_name=name,
        grid=[report.check_name],
        residuals=[residual],
        tolerance=1.0,
        residual_kind=CONTROL,
        diagnostics={"inner_max_residual": worst, "inner_tolerance": report.tolerance},
    )


def check_ratio_slope(
    params_list: Sequence[OperatorParams],
    tol: float = 0.05,
    k_lo: int = 100,
    k_hi: int = 500,
    decay_bound: float = 1e-6,
) -> ResidualReport:
    """Fit log r_k against log k over [k_lo, k_hi]; the slope should be -Σα_j.

    Residual per set is |slope + Σα_j|. A set whose final ratio r_{k_hi-1}
    is not below decay_bound gets an infinite residual.
    """
    residuals: list[float] = []
    grid: list[str] = []
    slopes: list[float] = []
    finals: list[float] = []
    errors: list[str] = []
    for params in params_list:
        grid.append(params.label())
        try:
            r = ratio_diagnostics(params, k_hi)
        except FracWrightError as exc:
            errors.append(f"{params.label()}: {exc}")
            residuals.append(math.inf)
            continue
        ks = np.arange(1, k_hi, dtype=float)
        window = (ks >= k_lo) & (r > 0) & np.isfinite(r)
        slope = float(np.polyfit(np.log(ks[window]), np.log(r[window]), 1)[0])
        final = float(r[-1])
        slopes.append(slope)
        finals.append(final)
        if not final < decay_bound:
            residuals.append(math.inf)
            errors.append(f"{params.label()}: r_{k_hi - 1} = {final:.3e}")
            continue
        residuals.append(abs(slope + math.fsum(params.alpha)))
    diagnostics: dict = {"slopes": slopes, "final_ratios": finals, "window": [k_lo, k_hi]}
    if errors:
        diagnostics["errors"] = errors
    return _finish(
        ResidualReport(
            check_name="ratio-test",
            grid=grid,
            residuals=residuals,
            tolerance=tol,
            residual_kind=SLOPE,
            diagnostics=diagnostics,
        )
    )


def _monomial(p: float) -> Callable[[float], float]:
    return lambda t: t**p


def check_quadrature(
    cases: Sequence[tuple[float, float, float]],
    steps: int = 4096,
    tol: float = 1e-3,
    refine: int = 4,
    min_reduction: float = 2.0,
) -> ResidualReport:
    """Compare the Caputo power rule with the L1 quadrature on monomials.

    Each case (p, γ, x) contributes the relative error at `steps`. The error
    at refine·steps must shrink by at least min_reduction; a case that does
    not gets an infinite residual.
    """
    grid: list[tuple[float, float, float]] = []
    residuals: list[float] = []
    reductions: list[float] = []
    errors: list[str] = []
    for p, gamma, x in cases:
        grid.append((p, gamma, x))
        multiplier, exponent = caputo_term(p, gamma)
        exact = multiplier * x**exponent
        f = _monomial(p)
        coarse = abs(caputo_quadrature(f, gamma, x, steps) - exact) / abs(exact)
        fine = abs(caputo_quadrature(f, gamma, x, refine * steps) - exact) / abs(exact)
        reduction = coarse / fine if fine > 0 else math.inf
        reductions.append(reduction)
        if reduction < min_reduction:
            errors.append(f"p={p:g}, gamma={gamma:g}, x={x:g}: error shrank only {reduction:.2f}x")
            residuals.append(math.inf)
            continue
        residuals.append(coarse)
    diagnostics: dict = {
        "steps": steps,
        "refined_steps": refine * steps,
        "reductions": reductions,
        "min_reduction": min(reductions, default=math.inf),
    }
    if errors:
        diagnostics["errors"] = errors
    return _finish(
        ResidualReport(
            check_name="caputo-quadrature",
            grid=grid,
            residuals=residuals,
            tolerance=tol,
            residual_kind=RELATIVE,
            diagnostics=diagnostics,
        )
    )


__all__ = [
    "PdeParams",
    "ReductionCase",
    "ReductionKind",
    "check_corollary",
    "check_eigen",
    "check_negative_control",
    "check_pde",
    "check_proposition_n1",
    "check_quadrature",
    "check_ratio_slope",
    "check_reduction",
]
