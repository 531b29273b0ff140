"""The fracwright command line.

Commands:

- eval: evaluate 𝒲 (or a baseline with --kind) at --z or over --grid
- coeffs: dump c_0..c_K
- ratio: dump the ratio-test sequence r_1..r_{K-1}
- verify-eigen / verify-reduction / verify-pde: run one check, print its report
- suite: run every check; the exit code is the number of failures

Exit codes: 0 on success, 1 when a check fails or a computation breaks
down, 2 on parse or validation errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, TextIO

from fracwright.baselines import BaselineSpec, evaluate_baseline
from fracwright.cli import (
    error_exit,
    load_params_document,
    params_from_document,
    parse_complex,
    parse_grid,
    parse_vector,
    points_from_document,
    resolve_output_path,
)
from fracwright.config import DEFAULT_EPS, DEFAULT_KMAX, EvalOptions, configure_logging
from fracwright.errors import FracWrightError, InvalidParams
from fracwright.harness.checks import (
    PdeParams,
    ReductionCase,
    ReductionKind,
    check_eigen,
    check_pde,
    check_reduction,
)
from fracwright.harness.reports import ResidualReport, SuiteWriter
from fracwright.harness.suite import SuiteConfig, run_suite
from fracwright.harness.sweeps import DEFAULT_XS, PDE_TS, PDE_XS, bessel_points, reduction_points
from fracwright.params import OperatorParams
from fracwright.presets import load_preset, preset_names
from fracwright.series import mpw_coefficients, mpw_eval, ratio_diagnostics

MAX_EXIT_CODE = 255


class Command(Enum):
    EVAL = "eval"
    COEFFS = "coeffs"
    RATIO = "ratio"
    VERIFY_EIGEN = "verify-eigen"
    VERIFY_REDUCTION = "verify-reduction"
    VERIFY_PDE = "verify-pde"
    SUITE = "suite"


# commands that need (ᾱ, ν̄)
_NEEDS_PARAMS = {Command.COEFFS, Command.RATIO, Command.VERIFY_EIGEN}

_DEFAULT_TOLERANCE = {
    Command.VERIFY_EIGEN: 1e-8,
    Command.VERIFY_REDUCTION: 1e-12,
    Command.VERIFY_PDE: 1e-6,
}


@dataclass(frozen=True)
class CliConfig:
    """A fully parsed command line.

    Attributes:
        command: The subcommand.
        params: Operator parameters, when the command takes them.
        points: Evaluation points in grid order.
        output: "json" or "csv".
        opts: Truncation options.
        baseline: Baseline to evaluate instead of 𝒲 (eval only).
        K: Highest coefficient index (coeffs, ratio).
        lam: Eigenvalue (verify-eigen).
        tol: Tolerance override of a verify command.
        reduction: Reduction case (verify-reduction).
        pde: PDE parameters (verify-pde).
        times: Time grid (verify-pde).
        suite: Suite settings (suite).
        summary: Markdown summary path (suite).
    """

    command: Command
    params: OperatorParams | None = None
    points: tuple[complex, ...] = ()
    output: str = "json"
    opts: EvalOptions = field(default_factory=EvalOptions)
    baseline: BaselineSpec | None = None
    K: int = 20
    lam: complex = 1.0
    tol: float | None = None
    reduction: ReductionCase | None = None
    pde: PdeParams | None = None
    times: tuple[float, ...] = PDE_TS
    suite: SuiteConfig | None = None
    summary: Path | None = None

    def __post_init__(self) -> None:
        if self.output not in ("json", "csv"):
            raise InvalidParams(f"format must be json or csv, got {self.output!r}")
        if self.command in _NEEDS_PARAMS and self.params is None:
            raise InvalidParams(f"{self.command.value} needs --alpha/--nu, --params or --preset")
        if self.command is Command.EVAL:
            if not self.points:
                raise InvalidParams("eval needs --z, --grid or points in --params")
            if self.params is None and self.baseline is None:
                raise InvalidParams("eval needs parameters or a baseline --kind")
        if self.command in (Command.COEFFS, Command.RATIO) and self.K < (
            2 if self.command is Command.RATIO else 0
        ):
            raise InvalidParams(f"K is too small for {self.command.value}: {self.K}")
        if self.command is Command.VERIFY_REDUCTION and self.reduction is None:
            raise InvalidParams("verify-reduction needs --case")
        if self.command is Command.VERIFY_PDE and self.pde is None:
            raise InvalidParams("verify-pde needs PDE parameters")
        if self.tol is not None and not self.tol > 0:
            raise InvalidParams(f"tolerance must be positive, got {self.tol}")

    @property
    def tolerance(self) -> float:
        return self.tol if self.tol is not None else _DEFAULT_TOLERANCE.get(self.command, 1e-8)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--alpha", help="Caputo orders a1,...,a_{n+1}")
    parser.add_argument("--nu", help="power weights v1,...,vn")
    parser.add_argument("--params", help='inline JSON or JSON file {"alpha": [...], "nu": [...]}')
    parser.add_argument("--preset", help=f"named parameters ({', '.join(preset_names())})")
    parser.add_argument("--z", help="single point re[,im]")
    parser.add_argument("--grid", help="real grid start:stop:count[:log]")
    parser.add_argument("--eps", type=float, default=None, help=f"truncation target (default {DEFAULT_EPS:g})")
    parser.add_argument("--kmax", type=int, default=None, help=f"term cap (default {DEFAULT_KMAX})")
    parser.add_argument("--format", choices=["json", "csv"], default="json", dest="output")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracwright",
        description="Generalized Wright functions and fractional hyper-Bessel operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate the series or a baseline")
    _add_common(p)
    p.add_argument("--kind", help="baseline family instead of the generalized Wright function")
    p.add_argument("--args", default="", help="baseline parameters, comma-separated")

    for name, help_text in (("coeffs", "dump coefficients c_0..c_K"), ("ratio", "ratio-test sequence")):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
        p.add_argument("--K", type=int, default=20 if name == "coeffs" else DEFAULT_KMAX)

    p = sub.add_parser("verify-eigen", help="check the eigen-relation")
    _add_common(p)
    p.add_argument("--lambda", dest="lam", default="1", help="eigenvalue re[,im]")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("verify-reduction", help="compare with a classical function")
    _add_common(p)
    p.add_argument("--case", required=True, choices=[k.value for k in ReductionKind])
    p.add_argument("--args", default="", help="case parameters: n | n,nu | beta,nu")
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("verify-pde", help="substitute the solution into the isochronous PDE")
    _add_common(p)
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--kcoef", type=float, default=1.0)
    p.add_argument("--time-sign", type=int, choices=[-1, 1], default=-1)
    p.add_argument("--times", default=",".join(f"{t:g}" for t in PDE_TS))
    p.add_argument("--tol", type=float, default=None)

    p = sub.add_parser("suite", help="run the full verification suite")
    _add_common(p)
    defaults = SuiteConfig.__dataclass_fields__
    for family in ("eigen", "corollary", "reduction", "pde", "ratio", "quadrature"):
        p.add_argument(
            f"--tol-{family}", type=float, default=defaults[f"tol_{family}"].default
        )
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eigen-sample", type=int, default=None, help="sample sets per grid slice")
    p.add_argument("--summary", type=Path, default=None, help="write a markdown summary")
    return parser


def _params(args: argparse.Namespace, document: dict[str, Any] | None) -> OperatorParams | None:
    sources = sum(x is not None for x in (args.alpha or args.nu or None, args.params, args.preset))
    if sources > 1:
        raise InvalidParams("give only one of --alpha/--nu, --params or --preset")
    if args.preset is not None:
        return load_preset(args.preset).params
    if document is not None:
        return params_from_document(document)
    if args.alpha is None and args.nu is None:
        return None
    if args.alpha is None or args.nu is None:
        raise InvalidParams("--alpha and --nu must be given together")
    return OperatorParams(alpha=parse_vector(args.alpha, "alpha"), nu=parse_vector(args.nu, "nu"))


def _points(args: argparse.Namespace, document: dict[str, Any] | None) -> tuple[complex, ...]:
    if args.z is not None and args.grid is not None:
        raise InvalidParams("give either --z or --grid, not both")
    if args.z is not None:
        return (parse_complex(args.z),)
    if args.grid is not None:
        return tuple(complex(x) for x in parse_grid(args.grid))
    if document is not None:
        points = points_from_document(document)
        if points is not None:
            return tuple(points)
    return ()


def _options(args: argparse.Namespace) -> EvalOptions:
    base = EvalOptions.from_env()
    return EvalOptions(
        eps=base.eps if args.eps is None else args.eps,
        kmax=base.kmax if args.kmax is None else args.kmax,
    )


def _reduction_case(kind: str, text: str) -> ReductionCase:
    values = parse_vector(text, "args") if text.strip() else ()
    expected = {
        ReductionKind.LAGUERRE_EXP: 1,
        ReductionKind.NML: 2,
        ReductionKind.CLASSICAL_WRIGHT: 2,
        ReductionKind.TRICOMI: 0,
        ReductionKind.BESSEL_J0: 0,
    }
    parsed = ReductionKind(kind)
    if len(values) != expected[parsed]:
        raise InvalidParams(f"{kind} takes {expected[parsed]} argument(s), got {len(values)}")
    match parsed:
        case ReductionKind.LAGUERRE_EXP:
            return ReductionCase.laguerre_exp(int(values[0]))
        case ReductionKind.NML:
            return ReductionCase.nml(int(values[0]), values[1])
        case ReductionKind.CLASSICAL_WRIGHT:
            return ReductionCase.classical_wright(values[0], values[1])
        case ReductionKind.TRICOMI:
            return ReductionCase.tricomi()
    return ReductionCase.bessel_j0()


def _pde_params(args: argparse.Namespace) -> PdeParams:
    if args.alpha is None or args.nu is None:
        raise InvalidParams("verify-pde needs --alpha a,b and --nu v")
    orders = parse_vector(args.alpha, "alpha")
    weights = parse_vector(args.nu, "nu")
    if len(orders) != 2 or len(weights) != 1:
        raise InvalidParams("verify-pde takes --alpha a,b (two orders) and --nu v (one weight)")
    return PdeParams(
        alpha=orders[0],
        beta=orders[1],
        nu=weights[0],
        omega=args.omega,
        kcoef=args.kcoef,
        time_sign=args.time_sign,
    )


def config_from_args(args: argparse.Namespace) -> CliConfig:
    """Turn parsed arguments into a validated CliConfig.

    Raises:
        InvalidParams: On any inconsistent or invalid value.
        ValueError: On an unknown preset.
    """
    command = Command(args.command)
    document = load_params_document(args.params) if args.params is not None else None
    opts = _options(args)
    common: dict[str, Any] = {"command": command, "output": args.output, "opts": opts}

    if command is Command.VERIFY_PDE:
        times = parse_vector(args.times, "times")
        points = tuple(complex(x) for x in parse_grid(args.grid)) if args.grid else ()
        return CliConfig(
            **common, pde=_pde_params(args), points=points, times=times, tol=args.tol
        )

    params = _params(args, document)
    points = _points(args, document)
    match command:
        case Command.EVAL:
            baseline = None
            if args.kind is not None:
                values = parse_vector(args.args, "args") if args.args.strip() else ()
                baseline = BaselineSpec.parse(args.kind, values)
            return CliConfig(**common, params=params, points=points, baseline=baseline)
        case Command.COEFFS | Command.RATIO:
            return CliConfig(**common, params=params, K=args.K)
        case Command.VERIFY_EIGEN:
            return CliConfig(
                **common, params=params, points=points, lam=parse_complex(args.lam), tol=args.tol
            )
        case Command.VERIFY_REDUCTION:
            return CliConfig(
                **common,
                points=points,
                reduction=_reduction_case(args.case, args.args),
                tol=args.tol,
            )
    suite = SuiteConfig(
        tol_eigen=args.tol_eigen,
        tol_corollary=args.tol_corollary,
        tol_reduction=args.tol_reduction,
        tol_pde=args.tol_pde,
        tol_ratio=args.tol_ratio,
        tol_quadrature=args.tol_quadrature,
        eigen_sample=args.eigen_sample,
        seed=args.seed,
        opts=opts,
        **({} if args.workers is None else {"workers": args.workers}),
    )
    return CliConfig(**common, suite=suite, summary=args.summary)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_table(
    columns: Sequence[str],
    rows: Sequence[Sequence[Any]],
    output: str,
    out: TextIO,
    meta: dict[str, Any] | None = None,
) -> None:
    """Write rows as CSV (header row, 17 significant digits) or as JSON records."""
    if output == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
        return
    document = dict(meta or {})
    document["rows"] = [dict(zip(columns, row, strict=True)) for row in rows]
    out.write(json.dumps(document, indent=2) + "\n")


def _write_report(report: ResidualReport, output: str, out: TextIO) -> None:
    if output == "csv":
        rows = [
            (json.dumps(point) if not isinstance(point, float) else point, r)
            for point, r in zip(report.to_dict()["grid"], report.residuals, strict=True)
        ]
        write_table(["point", "residual"], rows, "csv", out)
        return
    out.write(report.to_json() + "\n")


def _run_eval(config: CliConfig, out: TextIO) -> int:
    rows = []
    for z in config.points:
        if config.baseline is not None:
            value = complex(evaluate_baseline(config.baseline, z, config.opts))
            rows.append((z.real, z.imag, value.real, value.imag, None, None))
            continue
        assert config.params is not None
        result = mpw_eval(config.params, z, config.opts)
        rows.append(
            (
                z.real,
                z.imag,
                result.value.real,
                result.value.imag,
                result.terms_used,
                result.tail_estimate,
            )
        )
    meta: dict[str, Any] = {"command": "eval"}
    if config.baseline is not None:
        meta["baseline"] = {"kind": config.baseline.kind.value, "params": list(config.baseline.params)}
    else:
        assert config.params is not None
        meta["params"] = config.params.to_dict()
    columns = ["z_re", "z_im", "re", "im", "terms_used", "tail_estimate"]
    write_table(columns, rows, config.output, out, meta)
    return 0


def _run_coeffs(config: CliConfig, out: TextIO) -> int:
    assert config.params is not None
    coeffs = mpw_coefficients(config.params, config.K)
    rows = [(k, float(c.real)) for k, c in enumerate(coeffs)]
    meta = {"command": "coeffs", "params": config.params.to_dict()}
    write_table(["k", "c_k"], rows, config.output, out, meta)
    return 0


def _run_ratio(config: CliConfig, out: TextIO) -> int:
    assert config.params is not None
    ratios = ratio_diagnostics(config.params, config.K)
    rows = [(k, float(r)) for k, r in enumerate(ratios, 1)]
    meta = {"command": "ratio", "params": config.params.to_dict()}
    write_table(["k", "r_k"], rows, config.output, out, meta)
    return 0


def _real_points(config: CliConfig, default: Sequence[float]) -> list[float]:
    if not config.points:
        return list(default)
    if any(z.imag != 0 for z in config.points):
        raise InvalidParams("this check takes real x points")
    return [z.real for z in config.points]


def _run_verify(config: CliConfig, out: TextIO) -> int:
    tol = config.tolerance
    match config.command:
        case Command.VERIFY_EIGEN:
            assert config.params is not None
            xs = _real_points(config, DEFAULT_XS)
            report = check_eigen(config.params, config.lam, xs, tol, config.opts)
        case Command.VERIFY_REDUCTION:
            assert config.reduction is not None
            points = list(config.points)
            if not points:
                if config.reduction.kind is ReductionKind.BESSEL_J0:
                    points = bessel_points()
                else:
                    points = reduction_points()
            report = check_reduction(config.reduction, points, tol, config.opts)
        case _:
            assert config.pde is not None
            xs = _real_points(config, PDE_XS)
            report = check_pde(config.pde, xs, config.times, tol, config.opts)
    _write_report(report, config.output, out)
    return 0 if report.passed else 1


def _run_suite(config: CliConfig, out: TextIO) -> int:
    assert config.suite is not None
    results = run_suite(config.suite)
    if config.summary is not None:
        path = resolve_output_path(config.summary)
        assert path is not None
        SuiteWriter().write(results, path)
    if config.output == "csv":
        rows = [
            (r.check_name, len(r.residuals), r.max_residual, r.tolerance, r.residual_kind, r.passed)
            for r in results.reports
        ]
        columns = ["check_name", "points", "max_residual", "tolerance", "residual_kind", "passed"]
        write_table(columns, rows, "csv", out)
    else:
        out.write(json.dumps(results.to_dict(), indent=2) + "\n")
    return min(results.failures, MAX_EXIT_CODE)


def run(config: CliConfig, out: TextIO | None = None) -> int:
    """Execute a parsed command and write its output.

    Args:
        config: The parsed command line.
        out: Output stream (default: standard output).

    Returns:
        Exit code: 0 on success, 1 when a check fails, the failure count
        for suite.
    """
    out = out or sys.stdout
    try:
        match config.command:
            case Command.EVAL:
                return _run_eval(config, out)
            case Command.COEFFS:
                return _run_coeffs(config, out)
            case Command.RATIO:
                return _run_ratio(config, out)
            case Command.SUITE:
                return _run_suite(config, out)
        return _run_verify(config, out)
    except InvalidParams as exc:
        error_exit(str(exc), code=2)
    except FracWrightError as exc:
        error_exit(str(exc), code=1)
    return 1


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the fracwright console script."""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        error_exit(str(exc), code=2)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
