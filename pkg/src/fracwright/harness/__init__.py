"""Verification harness: identity checks, residual reports and the suite runner."""

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
from fracwright.harness.reports import (
    ResidualReport,
    SuiteResults,
    SuiteWriter,
    merge_reports,
    point_residual,
)
from fracwright.harness.suite import SuiteConfig, run_suite

__all__ = [
    "PdeParams",
    "ReductionCase",
    "ReductionKind",
    "ResidualReport",
    "SuiteConfig",
    "SuiteResults",
    "SuiteWriter",
    "check_corollary",
    "check_eigen",
    "check_negative_control",
    "check_pde",
    "check_proposition_n1",
    "check_quadrature",
    "check_ratio_slope",
    "check_reduction",
    "merge_reports",
    "point_residual",
    "run_suite",
]
