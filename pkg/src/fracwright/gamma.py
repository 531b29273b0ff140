"""Real-argument Gamma machinery in log space.

Every series coefficient in the package is a product of Gamma ratios, so the
kernel works with (log|Γ(x)|, sign) pairs and signals poles in-band with
sign 0 instead of raising. scipy.special supplies log|Γ| and the sign; this
module adds pole classification and ratio arithmetic on top.

Arguments within POLE_TOLERANCE (relative, floor 1) of a nonpositive integer
are treated as poles. The same tolerance classifies exponents as integers in
fracwright.operators, which keeps both sides of an identity check in
agreement on degenerate points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from fracwright.errors import DenominatorPole, NumeratorPole

POLE_TOLERANCE = 1e-12


def nearest_integer(x: float, tol: float = POLE_TOLERANCE) -> int | None:
    """Get the integer x rounds to, if x is within tolerance of it.

    Args:
        x: A finite real.
        tol: Relative tolerance with an absolute floor of tol.

    Returns:
        The integer, or None when x is not (numerically) an integer.
    """
    if not math.isfinite(x):
        return None
    r = round(x)
    if abs(x - r) <= tol * max(1.0, abs(x)):
        return int(r)
    return None


def is_pole(x: float) -> bool:
    """Check whether Γ has a pole at x (a nonpositive integer)."""
    n = nearest_integer(x)
    return n is not None and n <= 0


def integer_mask(x: np.ndarray, tol: float = POLE_TOLERANCE) -> np.ndarray:
    """Vectorised nearest_integer test: True where x is numerically an integer."""
    x = np.asarray(x, dtype=float)
    r = np.rint(x)
    return np.isfinite(x) & (np.abs(x - r) <= tol * np.maximum(1.0, np.abs(x)))


def pole_mask(x: np.ndarray) -> np.ndarray:
    """Vectorised is_pole."""
    x = np.asarray(x, dtype=float)
    return integer_mask(x) & (np.rint(x) <= 0)


@dataclass(frozen=True)
class SignedLogGamma:
    """Γ(x) as a signed logarithm.

    Attributes:
        log_abs: Natural log of |Γ(x)|; +inf at a pole.
        sign: -1, 0 or +1; 0 marks a pole.
    """

    log_abs: float
    sign: int

    @property
    def is_pole(self) -> bool:
        return self.sign == 0

    @property
    def value(self) -> float:
        """Γ(x) itself; inf at a pole."""
        if self.sign == 0:
            return math.inf
        return self.sign * math.exp(self.log_abs)

    @property
    def reciprocal(self) -> float:
        """1/Γ(x); exactly 0 at a pole."""
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(-self.log_abs)


def signed_log_gamma(x: float) -> SignedLogGamma:
    """Compute (log|Γ(x)|, sign Γ(x)) for a finite real x.

    For x < 0 scipy applies the reflection formula, so the sign follows
    (-1)^ceil(-x) for non-integer x. Poles never raise.

    Args:
        x: A finite real.

    Returns:
        SignedLogGamma with sign 0 when x is a nonpositive integer.
    """
    x = float(x)
    if is_pole(x):
        return SignedLogGamma(math.inf, 0)
    return SignedLogGamma(float(special.gammaln(x)), int(special.gammasgn(x)))


def recip_gamma(x: float) -> float:
    """Compute 1/Γ(x), returning exactly 0 at the poles of Γ."""
    x = float(x)
    if is_pole(x):
        return 0.0
    return float(special.rgamma(x))


def gamma_ratio(num: float, den: float) -> tuple[float, int]:
    """Compute Γ(num)/Γ(den) as a signed logarithm.

    Working in log space keeps ratios such as Γ(100.5)/Γ(100) finite even
    though both Gammas overflow a double.

    Args:
        num: Numerator argument.
        den: Denominator argument.

    Returns:
        (log|ratio|, sign).

    Raises:
        NumeratorPole: If num is a nonpositive integer.
        DenominatorPole: If den is a nonpositive integer.
    """
    top = signed_log_gamma(num)
    if top.is_pole:
        raise NumeratorPole(num)
    bottom = signed_log_gamma(den)
    if bottom.is_pole:
        raise DenominatorPole(den)
    return top.log_abs - bottom.log_abs, top.sign * bottom.sign


def log_gamma_array(x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised signed_log_gamma.

    Args:
        x: Array of finite reals.

    Returns:
        (log_abs, sign) arrays; poles carry log_abs=+inf and sign=0.
    """
    x = np.asarray(x, dtype=float)
    poles = pole_mask(x)
    safe = np.where(poles, 1.0, x)
    log_abs = np.where(poles, np.inf, special.gammaln(safe))
    sign = np.where(poles, 0, special.gammasgn(safe)).astype(np.int64)
    return log_abs, sign


__all__ = [
    "POLE_TOLERANCE",
    "SignedLogGamma",
    "gamma_ratio",
    "integer_mask",
    "is_pole",
    "log_gamma_array",
    "nearest_integer",
    "pole_mask",
    "recip_gamma",
    "signed_log_gamma",
]
