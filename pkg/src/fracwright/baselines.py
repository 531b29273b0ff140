"""Classical special functions used as independent oracles.

Each function is a direct power-series summation with its own coefficient
generator. Nothing here calls the Wright series engine; the only shared
pieces are the Gamma kernel, EvalOptions and the error types, so a bug in the
engine cannot hide behind an identical bug in its oracle.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum

from fracwright.config import EvalOptions
from fracwright.errors import DenominatorPole, InvalidParams, NoConvergence, NumeratorPole
from fracwright.gamma import gamma_ratio, is_pole, nearest_integer, signed_log_gamma

logger = logging.getLogger("fracwright.baselines")

_MAX_EXP = 700.0

# (log|c_k|, sign); sign 0 is a vanishing coefficient
Coefficient = tuple[float, int]


def _reciprocal_gammas(*args: float) -> Coefficient:
    """1 / Π Γ(arg) as a signed logarithm; any pole makes it 0."""
    log_abs, sign = 0.0, 1
    for arg in args:
        g = signed_log_gamma(arg)
        if g.is_pole:
            return -math.inf, 0
        log_abs -= g.log_abs
        sign *= g.sign
    return log_abs, sign


def _sum_series(coefficients: Iterator[Coefficient], z: complex, opts: EvalOptions | None) -> complex:
    """Sum Σ c_k z^k with the engine's two-consecutive-small-terms rule.

    Terms are exp(log|c_k| + k log|z|) times a unit phase; a term whose
    magnitude overflows raises NoConvergence with an infinite tail.
    Vanishing coefficients neither extend nor reset the run of small terms.
    The generator may stop early, which marks a terminating series.
    """
    opts = opts or EvalOptions.from_env()
    z = complex(z)
    first = next(coefficients)
    c0 = complex(first[1] * math.exp(first[0])) if first[1] else 0j
    if z == 0:
        return c0

    log_r = math.log(abs(z))
    unit = z / abs(z)
    re_terms, im_terms = [c0.real], [c0.imag]
    running = c0
    phase = 1 + 0j
    small_run = 0
    for k, (log_abs, sign) in enumerate(coefficients, 1):
        phase *= unit
        exponent = log_abs + k * log_r
        if sign and exponent > _MAX_EXP:
            value = complex(math.fsum(re_terms), math.fsum(im_terms))
            raise NoConvergence(k, value, math.inf)
        if k >= opts.kmax:
            tail = math.exp(exponent) if sign else 0.0
            value = complex(math.fsum(re_terms), math.fsum(im_terms))
            if small_run < 2 and tail > math.sqrt(opts.eps) * abs(value):
                raise NoConvergence(k, value, tail)
            return value
        if sign == 0:
            continue
        term = sign * math.exp(exponent) * phase
        re_terms.append(term.real)
        im_terms.append(term.imag)
        running += term
        small_run = small_run + 1 if abs(term) <= opts.eps * abs(running) else 0
        if small_run >= 2:
            break
    return complex(math.fsum(re_terms), math.fsum(im_terms))


def _gamma_product_coefficients(factors: Callable[[int], Sequence[float]]) -> Iterator[Coefficient]:
    """c_k = 1 / Π Γ(factors(k)) for k = 0, 1, ..."""
    k = 0
    while True:
        yield _reciprocal_gammas(*factors(k))
        k += 1


def wright(beta: float, nu: float, z: complex, opts: EvalOptions | None = None) -> complex:
    """Classical Wright function W_{β,ν}(z) = Σ z^k / (k! Γ(βk + ν)).

    Args:
        beta: β > 0.
        nu: Real ν.
        z: Complex argument.
        opts: Truncation options.

    Raises:
        InvalidParams: If β <= 0.
        NoConvergence: If kmax is reached with a significant tail.
    """
    if not beta > 0:
        raise InvalidParams(f"wright requires beta > 0, got {beta}")
    return _sum_series(_gamma_product_coefficients(lambda k: (k + 1.0, beta * k + nu)), z, opts)


def mittag_leffler2(alpha: float, beta: float, z: complex, opts: EvalOptions | None = None) -> complex:
    """Two-parameter Mittag-Leffler function E_{α,β}(z) = Σ z^k / Γ(αk + β)."""
    if not alpha > 0:
        raise InvalidParams(f"mittag_leffler2 requires alpha > 0, got {alpha}")
    return _sum_series(_gamma_product_coefficients(lambda k: (alpha * k + beta,)), z, opts)


def multi_index_ml(
    alphas: Sequence[float],
    betas: Sequence[float],
    z: complex,
    opts: EvalOptions | None = None,
) -> complex:
    """Multi-index Mittag-Leffler function Σ z^k / Π_i Γ(α_i k + β_i).

    Raises:
        InvalidParams: If the vectors differ in length, are empty, or some α_i <= 0.
    """
    alphas, betas = tuple(alphas), tuple(betas)
    if not alphas or len(alphas) != len(betas):
        raise InvalidParams(
            f"alphas and betas must be nonempty and of equal length, got {len(alphas)} and {len(betas)}"
        )
    if any(not a > 0 for a in alphas):
        raise InvalidParams(f"multi_index_ml requires every alpha > 0, got {alphas}")
    pairs = tuple(zip(alphas, betas, strict=True))
    return _sum_series(
        _gamma_product_coefficients(lambda k: tuple(a * k + b for a, b in pairs)), z, opts
    )


def _kilbas_saigo_coefficients(alpha: float, mu: float, l: float) -> Iterator[Coefficient]:  # noqa: E741
    log_abs, sign = 0.0, 1
    yield log_abs, sign
    j = 0
    while True:
        try:
            lr, sr = gamma_ratio(alpha * (j * mu + l) + 1.0, alpha * (j * mu + l + 1.0) + 1.0)
        except NumeratorPole as exc:
            raise NumeratorPole(exc.argument, k=j + 1) from exc
        except DenominatorPole:
            logger.debug("Kilbas-Saigo series terminates at k=%d", j + 1)
            return
        log_abs += lr
        sign *= sr
        yield log_abs, sign
        j += 1


def kilbas_saigo(
    alpha: float, mu: float, l: float, z: complex, opts: EvalOptions | None = None  # noqa: E741
) -> complex:
    """Kilbas-Saigo function with c_k = Π_{j<k} Γ(α(jμ+l)+1) / Γ(α(jμ+l+1)+1).

    Raises:
        NumeratorPole: If a numerator Gamma of a needed coefficient is a pole.
        NoConvergence: If kmax is reached with a significant tail.
    """
    return _sum_series(_kilbas_saigo_coefficients(alpha, mu, l), z, opts)


def laguerre_exp(n: int, x: complex, opts: EvalOptions | None = None) -> complex:
    """Laguerre-exponential e_n(x) = Σ x^k / (k!)^{n+1}; e_0 is exp."""
    if n < 0:
        raise InvalidParams(f"laguerre_exp requires n >= 0, got {n}")

    def coefficients() -> Iterator[Coefficient]:
        k = 0
        while True:
            yield -(n + 1) * math.lgamma(k + 1.0), 1
            k += 1

    return _sum_series(coefficients(), x, opts)


def n_mittag_leffler(n: int, nu: float, x: complex, opts: EvalOptions | None = None) -> complex:
    """n-Mittag-Leffler function Σ x^k / Γ(νk + 1)^{n+1}."""
    if n < 0:
        raise InvalidParams(f"n_mittag_leffler requires n >= 0, got {n}")
    if not nu > 0:
        raise InvalidParams(f"n_mittag_leffler requires nu > 0, got {nu}")
    return _sum_series(_gamma_product_coefficients(lambda k: (nu * k + 1.0,) * (n + 1)), x, opts)


def tricomi_c0(x: complex, opts: EvalOptions | None = None) -> complex:
    """Tricomi function C_0(x) = Σ x^k / (k!)^2."""
    return laguerre_exp(1, x, opts)


def bessel_j(nu: float, x: float, opts: EvalOptions | None = None) -> float:
    """Bessel function J_ν(x) = (x/2)^ν Σ (-x²/4)^k / (k! Γ(k+ν+1)).

    Negative x is accepted for integer ν through J_ν(-x) = (-1)^ν J_ν(x).

    Raises:
        InvalidParams: If ν <= -1, or x < 0 with non-integer ν.
    """
    if not nu > -1:
        raise InvalidParams(f"bessel_j requires nu > -1, got {nu}")
    x = float(x)
    if x < 0:
        order = nearest_integer(nu)
        if order is None:
            raise InvalidParams(f"bessel_j of non-integer order {nu} needs x >= 0, got {x}")
        return (-1) ** order * bessel_j(nu, -x, opts)
    if x == 0:
        return 1.0 if nu == 0 else (0.0 if nu > 0 else math.inf)
    series = _sum_series(
        _gamma_product_coefficients(lambda k: (k + 1.0, k + nu + 1.0)), -(x * x) / 4.0, opts
    )
    return (x / 2.0) ** nu * series.real


def _delerue_coefficients(nus: Sequence[float]) -> Iterator[Coefficient]:
    """1 / (k! Π (ν_i + 1)_k) via Pochhammer (a)_k = Γ(a+k)/Γ(a)."""
    k = 0
    while True:
        log_abs, sign = -math.lgamma(k + 1.0), 1
        for nu in nus:
            lr, sr = gamma_ratio(nu + 1.0 + k, nu + 1.0)
            log_abs -= lr
            sign *= sr
        yield log_abs, sign
        k += 1


def delerue_hb(
    nus: Sequence[float], x: float, normalized: bool, opts: EvalOptions | None = None
) -> float:
    """Delerue hyper-Bessel function of order m = len(nus).

    The normalized form is j(x) = ₀F_m((ν_i+1); -(x/(m+1))^{m+1}). The
    unnormalized form multiplies by (x/(m+1))^{Σν} / Π Γ(ν_i+1), which for
    m = 1 is the Bessel function J_ν.

    Raises:
        InvalidParams: If nus is empty, or the unnormalized form gets x < 0.
        NumeratorPole: If some ν_i + 1 is a nonpositive integer.
    """
    nus = tuple(float(v) for v in nus)
    if not nus:
        raise InvalidParams("delerue_hb needs at least one order")
    for nu in nus:
        if is_pole(nu + 1.0):
            raise NumeratorPole(nu + 1.0)
    m = len(nus)
    x = float(x)
    scaled = x / (m + 1)
    series = _sum_series(_delerue_coefficients(nus), -(scaled ** (m + 1)), opts).real
    if normalized:
        return series
    if x < 0:
        raise InvalidParams(f"unnormalized delerue_hb needs x >= 0, got {x}")
    prefactor_log, prefactor_sign = 0.0, 1
    for nu in nus:
        g = signed_log_gamma(nu + 1.0)
        prefactor_log -= g.log_abs
        prefactor_sign *= g.sign
    power = scaled ** sum(nus) if x > 0 else (1.0 if sum(nus) == 0 else 0.0)
    return prefactor_sign * math.exp(prefactor_log) * power * series


class BaselineKind(Enum):
    """Baseline function families, valued by their CLI names."""

    WRIGHT = "wright"
    MITTAG_LEFFLER2 = "mittag-leffler2"
    MULTI_INDEX_ML = "multi-index-ml"
    KILBAS_SAIGO = "kilbas-saigo"
    LAGUERRE_EXP = "laguerre-exp"
    N_MITTAG_LEFFLER = "n-mittag-leffler"
    TRICOMI = "tricomi"
    BESSEL_J = "bessel-j"
    DELERUE_HB = "delerue-hb"
    DELERUE_HB_NORMALIZED = "delerue-hb-normalized"


# exact parameter count per kind; None means checked separately
_ARITY: dict[BaselineKind, int | None] = {
    BaselineKind.WRIGHT: 2,
    BaselineKind.MITTAG_LEFFLER2: 2,
    BaselineKind.MULTI_INDEX_ML: None,
    BaselineKind.KILBAS_SAIGO: 3,
    BaselineKind.LAGUERRE_EXP: 1,
    BaselineKind.N_MITTAG_LEFFLER: 2,
    BaselineKind.TRICOMI: 0,
    BaselineKind.BESSEL_J: 1,
    BaselineKind.DELERUE_HB: None,
    BaselineKind.DELERUE_HB_NORMALIZED: None,
}


@dataclass(frozen=True)
class BaselineSpec:
    """A baseline function together with its parameters.

    Attributes:
        kind: The function family.
        params: Kind-specific parameters. MultiIndexML holds the alphas
            followed by the betas; the Delerue kinds hold ν_1..ν_m;
            LaguerreExp holds n; NMittagLeffler holds (n, ν).
    """

    kind: BaselineKind
    params: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        count = len(self.params)
        arity = _ARITY[self.kind]
        if arity is not None and count != arity:
            raise InvalidParams(f"{self.kind.value} takes {arity} parameter(s), got {count}")
        if self.kind is BaselineKind.MULTI_INDEX_ML:
            if count < 2 or count % 2:
                raise InvalidParams(f"multi-index-ml takes 2m parameters (alphas, betas), got {count}")
            if any(not a > 0 for a in self.params[: count // 2]):
                raise InvalidParams("multi-index-ml requires every alpha > 0")
        if self.kind in (BaselineKind.DELERUE_HB, BaselineKind.DELERUE_HB_NORMALIZED) and count < 1:
            raise InvalidParams(f"{self.kind.value} takes at least one order")
        if self.kind in (BaselineKind.LAGUERRE_EXP, BaselineKind.N_MITTAG_LEFFLER):
            n = nearest_integer(self.params[0])
            if n is None or n < 0:
                raise InvalidParams(f"{self.kind.value} needs a nonnegative integer n, got {self.params[0]}")

    @classmethod
    def parse(cls, kind: str, params: Sequence[float] = ()) -> BaselineSpec:
        """Build a spec from a CLI kind name.

        Raises:
            InvalidParams: If the kind is unknown or the arity is wrong.
        """
        try:
            parsed = BaselineKind(kind)
        except ValueError as exc:
            valid = ", ".join(k.value for k in BaselineKind)
            raise InvalidParams(f"Unknown baseline '{kind}'. Valid: {valid}") from exc
        return cls(kind=parsed, params=tuple(params))


def _real_argument(spec: BaselineSpec, z: complex) -> float:
    z = complex(z)
    if z.imag != 0.0:
        raise InvalidParams(f"{spec.kind.value} takes a real argument, got {z}")
    return z.real


def evaluate_baseline(spec: BaselineSpec, z: complex, opts: EvalOptions | None = None) -> complex:
    """Evaluate the baseline named by spec at z.

    Raises:
        InvalidParams: If a real-only baseline receives a complex z.
    """
    p = spec.params
    match spec.kind:
        case BaselineKind.WRIGHT:
            return wright(p[0], p[1], z, opts)
        case BaselineKind.MITTAG_LEFFLER2:
            return mittag_leffler2(p[0], p[1], z, opts)
        case BaselineKind.MULTI_INDEX_ML:
            half = len(p) // 2
            return multi_index_ml(p[:half], p[half:], z, opts)
        case BaselineKind.KILBAS_SAIGO:
            return kilbas_saigo(p[0], p[1], p[2], z, opts)
        case BaselineKind.LAGUERRE_EXP:
            return laguerre_exp(int(round(p[0])), z, opts)
        case BaselineKind.N_MITTAG_LEFFLER:
            return n_mittag_leffler(int(round(p[0])), p[1], z, opts)
        case BaselineKind.TRICOMI:
            return tricomi_c0(z, opts)
        case BaselineKind.BESSEL_J:
            return complex(bessel_j(p[0], _real_argument(spec, z), opts))
        case BaselineKind.DELERUE_HB:
            return complex(delerue_hb(p, _real_argument(spec, z), normalized=False, opts=opts))
        case BaselineKind.DELERUE_HB_NORMALIZED:
            return complex(delerue_hb(p, _real_argument(spec, z), normalized=True, opts=opts))
    raise InvalidParams(f"unhandled baseline kind {spec.kind}")


__all__ = [
    "BaselineKind",
    "BaselineSpec",
    "bessel_j",
    "delerue_hb",
    "evaluate_baseline",
    "kilbas_saigo",
    "laguerre_exp",
    "mittag_leffler2",
    "multi_index_ml",
    "n_mittag_leffler",
    "tricomi_c0",
    "wright",
]
