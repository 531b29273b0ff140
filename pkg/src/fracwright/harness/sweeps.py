"""Parameter grids and seeded random draws for the verification suite."""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence

import numpy as np

from fracwright.config import EvalOptions
from fracwright.gamma import pole_mask
from fracwright.harness.checks import (
    PdeParams,
    ReductionCase,
    check_corollary,
    check_eigen,
    check_pde,
    check_quadrature,
    check_ratio_slope,
)
from fracwright.harness.reports import ResidualReport, combined_kind, merge_reports
from fracwright.operators import resonant_terms
from fracwright.params import OperatorParams
from fracwright.series import coefficient_table

logger = logging.getLogger("fracwright.harness")

GRID_VALUES = (0.3, 0.5, 0.7, 1.0)
LAMBDAS = (-1.0, 1.0)
DEFAULT_XS = tuple(float(x) for x in np.linspace(0.1, 2.0, 8))
PDE_XS = tuple(float(x) for x in np.linspace(0.2, 1.5, 10))
PDE_TS = (0.0, 1.0, 3.0)

SKIP_NUMERATOR_POLE = "numerator-pole"
SKIP_RESONANT = "resonant"
SKIP_LAST_GAMMA_POLE = "last-gamma-pole"


def eigen_grid(
    n: int, values: Sequence[float] = GRID_VALUES, alpha1: float | None = None
) -> Iterator[OperatorParams]:
    """All parameter sets with every α_j and ν_j drawn from values.

    Args:
        n: Number of power weights.
        values: Allowed entries.
        alpha1: Pin α_1 to this value (one slice of the grid).
    """
    firsts = values if alpha1 is None else (alpha1,)
    for first in firsts:
        for rest in itertools.product(values, repeat=2 * n):
            alpha = (first, *rest[:n])
            yield OperatorParams(alpha=alpha, nu=tuple(rest[n:]))


def skip_reason(params: OperatorParams, K: int) -> str | None:
    """Why the eigen-relation is out of reach for params, or None.

    A numerator pole leaves coefficients undefined. A pole of the last
    Gamma Γ(s·k + b_{n+1}) zeroes c_k while c_{k-1} survives, so the term
    that should reproduce c_{k-1} is gone. A resonant stage annihilates a
    term the relation needs.
    """
    table = coefficient_table(params, K)
    if table.pole is not None:
        return SKIP_NUMERATOR_POLE
    off = params.offsets
    ks = np.arange(1, K + 1, dtype=float)
    lost = ks[pole_mask(off.stride * ks + off.b[-1])].astype(int)
    if any(table.sign[k - 1] != 0 for k in lost):
        return SKIP_LAST_GAMMA_POLE
    if resonant_terms(params, K):
        return SKIP_RESONANT
    return None


def eigen_sweep(
    n: int,
    lam: float,
    xs: Sequence[float] = DEFAULT_XS,
    tol: float = 1e-8,
    opts: EvalOptions | None = None,
    *,
    alpha1: float | None = None,
    sample: int | None = None,
    seed: int = 0,
) -> ResidualReport:
    """Run check_eigen over the grid (or a seeded sample of it).

    The report has one point per checked parameter set, valued by that set's
    max residual. Skipped sets are counted by reason.
    """
    opts = opts or EvalOptions.from_env()
    grid = list(eigen_grid(n, alpha1=alpha1))
    if sample is not None and sample < len(grid):
        rng = np.random.default_rng(seed)
        picks = np.sort(rng.choice(len(grid), size=sample, replace=False))
        grid = [grid[i] for i in picks]

    labels: list[str] = []
    residuals: list[float] = []
    kinds: list[str] = []
    skipped = {SKIP_NUMERATOR_POLE: 0, SKIP_LAST_GAMMA_POLE: 0, SKIP_RESONANT: 0}
    failing: list[str] = []
    for params in grid:
        reason = skip_reason(params, opts.kmax)
        if reason is not None:
            logger.debug("skipping %s: %s", params.label(), reason)
            skipped[reason] += 1
            continue
        report = check_eigen(params, lam, xs, tol, opts)
        labels.append(params.label())
        residuals.append(report.max_residual)
        kinds.append(report.residual_kind)
        if not report.passed:
            failing.append(f"{params.label()}: {report.max_residual:.3e}")

    name = f"eigen-sweep/n={n}/lambda={lam:+g}"
    if alpha1 is not None:
        name += f"/alpha1={alpha1:g}"
    diagnostics: dict = {"checked": len(labels), "skipped": skipped, "sampled": sample}
    if failing:
        diagnostics["errors"] = failing
    return ResidualReport(
        check_name=name,
        grid=labels,
        residuals=residuals,
        tolerance=tol,
        residual_kind=combined_kind(kinds),
        diagnostics=diagnostics,
    )


def drift_zero_params(rng: np.random.Generator, n: int, K: int = 500) -> OperatorParams:
    """Draw a zero-drift parameter set; the weights are a permutation of α_1..α_n."""
    while True:
        head = rng.uniform(0.2, 1.0, size=n)
        last = rng.uniform(0.3, 1.0)
        params = OperatorParams(alpha=(*head, last), nu=tuple(rng.permutation(head)))
        if skip_reason(params, K) is None:
            return params


def ratio_params(rng: np.random.Generator) -> OperatorParams:
    """Parameter set with Σα large enough for r_k < 1e-6 by k = 500."""
    n = int(rng.integers(2, 4))
    return OperatorParams(
        alpha=tuple(rng.uniform(1.0, 1.5, size=n + 1)),
        nu=tuple(rng.uniform(0.8, 1.2, size=n)),
    )


def quadrature_cases(rng: np.random.Generator, count: int) -> list[tuple[float, float, float]]:
    """(p, γ, x) with p ∈ [0.5, 3], γ ∈ (0.1, 0.9), x ∈ [0.5, 2].

    Exponents within 0.05 of 1 are redrawn: the L1 scheme is exact on
    linear functions, so the error there is rounding noise.
    """
    cases = []
    while len(cases) < count:
        p = float(rng.uniform(0.5, 3.0))
        if abs(p - 1.0) < 0.05:
            continue
        cases.append((p, float(rng.uniform(0.1, 0.9)), float(rng.uniform(0.5, 2.0))))
    return cases


def pde_draws(rng: np.random.Generator, count: int) -> list[PdeParams]:
    return [
        PdeParams(
            alpha=float(rng.uniform(0.2, 0.9)),
            beta=float(rng.uniform(0.2, 0.9)),
            nu=float(rng.uniform(0.2, 1.5)),
            omega=float(rng.uniform(0.5, 2.0)),
            kcoef=float(rng.uniform(-2.0, 2.0)),
        )
        for _ in range(count)
    ]


def reduction_points(count: int = 25, radius: float = 3.0, seed: int = 0) -> list[complex]:
    """Points with |z| <= radius: the first half real, the rest complex."""
    rng = np.random.default_rng(seed)
    real_count = count // 2
    reals = [complex(v) for v in rng.uniform(-radius, radius, size=real_count)]
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, size=count - real_count))
    theta = rng.uniform(-np.pi, np.pi, size=count - real_count)
    return reals + [complex(v) for v in r * np.exp(1j * theta)]


def bessel_points(count: int = 25, radius: float = 3.0) -> list[complex]:
    return [complex(v) for v in np.linspace(radius / count, radius, count)]


DEFAULT_REDUCTIONS = (
    ReductionCase.laguerre_exp(2),
    ReductionCase.laguerre_exp(3),
    ReductionCase.nml(2, 0.5),
    ReductionCase.nml(3, 0.7),
    ReductionCase.classical_wright(0.5, 1.0),
    ReductionCase.classical_wright(0.7, 1.3),
    ReductionCase.tricomi(),
    ReductionCase.bessel_j0(),
)


def corollary_sweep(
    count: int = 20,
    seed: int = 0,
    xs: Sequence[float] = DEFAULT_XS,
    tol: float = 1e-8,
    opts: EvalOptions | None = None,
) -> ResidualReport:
    """check_corollary on constructed zero-drift sets, n cycling through 1..3."""
    rng = np.random.default_rng(seed)
    reports = []
    for i in range(count):
        params = drift_zero_params(rng, 1 + i % 3)
        reports.append(check_corollary(params, 1.0, xs, tol, opts))
    merged = merge_reports("corollary-sweep", reports, tol)
    merged.grid = [
        (r.diagnostics["params"]["alpha"], r.diagnostics["params"]["nu"], x)
        for r in reports
        for x in r.grid
    ]
    return merged


def pde_sweep(
    count: int = 10,
    seed: int = 0,
    xs: Sequence[float] = PDE_XS,
    ts: Sequence[float] = PDE_TS,
    tol: float = 1e-6,
    opts: EvalOptions | None = None,
) -> ResidualReport:
    """check_pde over seeded random draws; a non-isochronous draw fails the sweep."""
    rng = np.random.default_rng(seed)
    reports = [check_pde(p, xs, ts, tol, opts) for p in pde_draws(rng, count)]
    merged = merge_reports("pde-sweep", reports, tol)
    merged.diagnostics["isochronous"] = all(r.diagnostics["isochronous"] for r in reports)
    merged.diagnostics["isochrony_max"] = max(r.diagnostics["isochrony_max"] for r in reports)
    return merged


def ratio_sweep(count: int = 20, seed: int = 0, tol: float = 0.05) -> ResidualReport:
    rng = np.random.default_rng(seed)
    return check_ratio_slope([ratio_params(rng) for _ in range(count)], tol=tol)


def quadrature_sweep(
    count: int = 50, seed: int = 0, tol: float = 1e-3, steps: int = 4096
) -> ResidualReport:
    rng = np.random.default_rng(seed)
    return check_quadrature(quadrature_cases(rng, count), steps=steps, tol=tol)


__all__ = [
    "DEFAULT_REDUCTIONS",
    "DEFAULT_XS",
    "GRID_VALUES",
    "LAMBDAS",
    "PDE_TS",
    "PDE_XS",
    "bessel_points",
    "corollary_sweep",
    "drift_zero_params",
    "eigen_grid",
    "eigen_sweep",
    "pde_draws",
    "pde_sweep",
    "quadrature_cases",
    "quadrature_sweep",
    "ratio_params",
    "ratio_sweep",
    "reduction_points",
    "skip_reason",
]
