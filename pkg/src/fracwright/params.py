"""Parameter vectors of the fractional hyper-Bessel operator.

The operator

    D = d^{α_{n+1}} x^{ν_n} d^{α_n} ... x^{ν_1} d^{α_1}

is described by n+1 Caputo orders α and n power weights ν. The series of
its eigenfunction uses two offset sequences derived from them (α₀ = ν₀ = 0):

    a_j = 1 + Σ_{m=1}^{j} (ν_{m-1} - α_m)          j = 1..n
    b_j = 1 + Σ_{m=1}^{j} (ν_{m-1} - α_{m-1})      j = 1..n+1

so b_1 = 1 always and b_{n+1} = 1 + drift with drift = Σ_{s=1}^{n} (ν_s - α_s).
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Any

from fracwright.errors import InvalidParams


@dataclass(frozen=True)
class OffsetTable:
    """Offsets a_j, b_j plus the stride and drift of an OperatorParams.

    Attributes:
        a: a_1..a_n.
        b: b_1..b_{n+1}.
        stride: α_{n+1}, the exponent step of the series in x.
        drift: Σ (ν_s - α_s), the power on the right side of the eigen-relation.
    """

    a: tuple[float, ...]
    b: tuple[float, ...]
    stride: float
    drift: float


@dataclass(frozen=True)
class OperatorParams:
    """Validated (ᾱ, ν̄) of a fractional hyper-Bessel operator.

    Attributes:
        alpha: Caputo orders α_1..α_{n+1}, all positive.
        nu: Power weights ν_1..ν_n, all positive.
    """

    alpha: tuple[float, ...]
    nu: tuple[float, ...]

    def __post_init__(self) -> None:
        alpha = tuple(float(a) for a in self.alpha)
        nu = tuple(float(v) for v in self.nu)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "nu", nu)
        if len(nu) < 1:
            raise InvalidParams("nu must hold at least one weight (n >= 1)")
        if len(alpha) != len(nu) + 1:
            raise InvalidParams(
                f"alpha must have len(nu) + 1 = {len(nu) + 1} entries, got {len(alpha)}"
            )
        for j, a in enumerate(alpha, 1):
            if not (math.isfinite(a) and a > 0):
                raise InvalidParams(f"alpha_{j} must be a positive real, got {a}")
        for j, v in enumerate(nu, 1):
            if not (math.isfinite(v) and v > 0):
                raise InvalidParams(f"nu_{j} must be a positive real, got {v}")

    @property
    def n(self) -> int:
        return len(self.nu)

    @cached_property
    def offsets(self) -> OffsetTable:
        """Offsets computed once per parameter set."""
        return derive_offsets(self)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> OperatorParams:
        """Build params from a JSON-style mapping {"alpha": [...], "nu": [...]}.

        Raises:
            InvalidParams: If a key is missing or a value is not numeric.
        """
        missing = [key for key in ("alpha", "nu") if key not in data]
        if missing:
            raise InvalidParams(f"parameter mapping is missing {', '.join(missing)}")
        try:
            return cls(alpha=tuple(data["alpha"]), nu=tuple(data["nu"]))
        except TypeError as exc:
            raise InvalidParams(f"alpha and nu must be lists of numbers: {exc}") from exc

    def to_dict(self) -> dict[str, list[float]]:
        return {"alpha": list(self.alpha), "nu": list(self.nu)}

    def label(self) -> str:
        """Compact label used in reports, e.g. 'a=(0.5,0.5) v=(0.5)'."""
        a = ",".join(f"{x:g}" for x in self.alpha)
        v = ",".join(f"{x:g}" for x in self.nu)
        return f"a=({a}) v=({v})"


def derive_offsets(params: OperatorParams) -> OffsetTable:
    """Derive a_j, b_j, stride and drift from the parameter vectors.

    Prefix sums use math.fsum so that b_{n+1} - 1 - drift vanishes to
    rounding of a single addition.

    Args:
        params: Validated parameters.

    Returns:
        The OffsetTable.
    """
    alpha, nu, n = params.alpha, params.nu, params.n
    nu0 = (0.0, *nu)
    alpha0 = (0.0, *alpha)
    a = tuple(1.0 + math.fsum(nu0[m - 1] - alpha0[m] for m in range(1, j + 1)) for j in range(1, n + 1))
    b = tuple(
        1.0 + math.fsum(nu0[m - 1] - alpha0[m - 1] for m in range(1, j + 1)) for j in range(1, n + 2)
    )
    drift = math.fsum(nu[s] - alpha[s] for s in range(n))
    return OffsetTable(a=a, b=b, stride=alpha[n], drift=drift)


def uniform_params(n: int, order: float, weight: float | None = None) -> OperatorParams:
    """Parameters with every α equal to order and every ν equal to weight (default order)."""
    if n < 1:
        raise InvalidParams(f"n must be at least 1, got {n}")
    w = order if weight is None else weight
    return OperatorParams(alpha=(order,) * (n + 1), nu=(w,) * n)


def params_from_vectors(alpha: Sequence[float], nu: Sequence[float]) -> OperatorParams:
    """Convenience constructor accepting any sequences."""
    return OperatorParams(alpha=tuple(alpha), nu=tuple(nu))


__all__ = [
    "OffsetTable",
    "OperatorParams",
    "derive_offsets",
    "params_from_vectors",
    "uniform_params",
]
