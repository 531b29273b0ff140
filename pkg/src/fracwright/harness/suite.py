"""The full verification suite.

Checks are independent, so the suite builds a flat list of tasks (functools
partials of module-level functions, which pickle cleanly) and maps them over
a multiprocessing pool. Pool.map keeps task order, and the final reports are
sorted by check name, so output never depends on completion order.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass, field
from datetime import datetime
from functools import partial
from multiprocessing import Pool

from fracwright.config import EvalOptions, default_workers
from fracwright.errors import InvalidParams
from fracwright.harness.checks import (
    PdeParams,
    ReductionKind,
    check_corollary,
    check_negative_control,
    check_pde,
    check_proposition_n1,
    check_reduction,
)
from fracwright.harness.reports import ResidualReport, SuiteResults, merge_reports
from fracwright.harness.sweeps import (
    DEFAULT_REDUCTIONS,
    DEFAULT_XS,
    GRID_VALUES,
    LAMBDAS,
    PDE_TS,
    PDE_XS,
    bessel_points,
    corollary_sweep,
    eigen_sweep,
    pde_sweep,
    quadrature_sweep,
    ratio_sweep,
    reduction_points,
)
from fracwright.presets import COROLLARY_TWO_STAGE

logger = logging.getLogger("fracwright.harness")

Task = Callable[[], ResidualReport]


@dataclass(frozen=True)
class SuiteConfig:
    """Settings of a suite run.

    Attributes:
        tol_eigen: Tolerance of the eigen sweeps.
        tol_corollary: Tolerance of the zero-drift checks.
        tol_reduction: Tolerance of the reduction identities.
        tol_pde: Tolerance of the PDE checks.
        tol_ratio: Allowed deviation of the ratio-test slope.
        tol_quadrature: Allowed relative error of the L1 quadrature.
        eigen_orders: Values of n covered by the eigen sweep.
        eigen_sample: Parameter sets sampled per grid slice; None runs all.
        seed: Seed of every random draw.
        workers: Worker processes; 1 runs in-process.
        opts: Truncation options.
    """

    tol_eigen: float = 1e-8
    tol_corollary: float = 1e-8
    tol_reduction: float = 1e-12
    tol_pde: float = 1e-6
    tol_ratio: float = 0.05
    tol_quadrature: float = 1e-3
    eigen_orders: tuple[int, ...] = (1, 2, 3)
    eigen_sample: int | None = None
    seed: int = 0
    workers: int = field(default_factory=default_workers)
    opts: EvalOptions = field(default_factory=EvalOptions.from_env)

    def __post_init__(self) -> None:
        for name, value in self.tolerances().items():
            if not value > 0:
                raise InvalidParams(f"tol-{name} must be positive, got {value}")
        if any(n < 1 for n in self.eigen_orders):
            raise InvalidParams(f"eigen orders must be >= 1, got {self.eigen_orders}")
        if self.eigen_sample is not None and self.eigen_sample < 1:
            raise InvalidParams(f"eigen sample must be >= 1, got {self.eigen_sample}")
        if self.workers < 1:
            raise InvalidParams(f"workers must be >= 1, got {self.workers}")

    def tolerances(self) -> dict[str, float]:
        return {
            "eigen": self.tol_eigen,
            "corollary": self.tol_corollary,
            "reduction": self.tol_reduction,
            "pde": self.tol_pde,
            "ratio": self.tol_ratio,
            "quadrature": self.tol_quadrature,
        }


def _pde_control(tol: float, opts: EvalOptions) -> ResidualReport:
    """The printed phase e^{+iωt} with k = 0 is not a solution; the check must fail."""
    control = PdeParams(alpha=0.5, beta=0.5, nu=0.5, omega=1.0, kcoef=0.0, time_sign=1)
    inner = check_pde(control, PDE_XS, PDE_TS, tol, opts)
    return check_negative_control(inner, "pde-negative-control")


def suite_tasks(config: SuiteConfig) -> list[tuple[str | None, Task]]:
    """Build (merge group, task) pairs; tasks sharing a group are merged."""
    opts = config.opts
    tasks: list[tuple[str | None, Task]] = []
    for n in config.eigen_orders:
        for lam in LAMBDAS:
            group = f"eigen-sweep/n={n}/lambda={lam:+g}"
            for alpha1 in GRID_VALUES:
                task = partial(
                    eigen_sweep,
                    n,
                    lam,
                    DEFAULT_XS,
                    config.tol_eigen,
                    opts,
                    alpha1=alpha1,
                    sample=config.eigen_sample,
                    seed=config.seed,
                )
                tasks.append((group, task))

    tasks.append(
        (None, partial(check_corollary, COROLLARY_TWO_STAGE.params, 1.0, DEFAULT_XS,
                       config.tol_corollary, opts))
    )
    tasks.append(
        (None, partial(corollary_sweep, 20, config.seed, DEFAULT_XS, config.tol_corollary, opts))
    )
    tasks.append(
        (None, partial(check_proposition_n1, 0.5, 0.5, 0.5, DEFAULT_XS, config.tol_eigen, opts))
    )
    for case in DEFAULT_REDUCTIONS:
        if case.kind is ReductionKind.BESSEL_J0:
            points = bessel_points()
        else:
            points = reduction_points(seed=config.seed)
        tasks.append((None, partial(check_reduction, case, points, config.tol_reduction, opts)))
    tasks.append((None, partial(pde_sweep, 10, config.seed, PDE_XS, PDE_TS, config.tol_pde, opts)))
    tasks.append((None, partial(_pde_control, config.tol_pde, opts)))
    tasks.append((None, partial(ratio_sweep, 20, config.seed, config.tol_ratio)))
    tasks.append((None, partial(quadrature_sweep, 50, config.seed, config.tol_quadrature)))
    return tasks


def _call(task: Task) -> ResidualReport:
    return task()


def run_suite(config: SuiteConfig | None = None) -> SuiteResults:
    """Run every check and collect the reports.

    Returns:
        SuiteResults with reports sorted by check name.
    """
    config = config or SuiteConfig()
    results = SuiteResults(tolerances=config.tolerances())
    pairs = suite_tasks(config)
    tasks = [task for _, task in pairs]
    logger.info("running %d suite tasks on %d worker(s)", len(tasks), config.workers)
    if config.workers > 1:
        with Pool(processes=config.workers) as pool:
            outputs = pool.map(_call, tasks)
    else:
        outputs = [_call(task) for task in tasks]

    grouped: dict[str, list[ResidualReport]] = {}
    reports: list[ResidualReport] = []
    for (group, _), report in zip(pairs, outputs, strict=True):
        if group is None:
            reports.append(report)
        else:
            grouped.setdefault(group, []).append(report)
    for group, parts in grouped.items():
        reports.append(merge_reports(group, parts, parts[0].tolerance))

    results.reports = sorted(reports, key=lambda r: r.check_name)
    results.completed_at = datetime.now()
    logger.info("suite finished with %d failure(s)", results.failures)
    return results


__all__ = ["SuiteConfig", "run_suite", "suite_tasks"]
