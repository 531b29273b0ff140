"""Runtime configuration and logging setup.

Environment variables (read at import time):

- FRACWRIGHT_DEBUG: "1", "true" or "yes" turns on DEBUG logging
- FRACWRIGHT_EPS: default relative truncation target for series evaluation
- FRACWRIGHT_KMAX: default hard cap on the number of series terms
- FRACWRIGHT_WORKERS: default number of worker processes for the suite
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass

from fracwright.errors import InvalidParams

DEBUG = os.environ.get("FRACWRIGHT_DEBUG", "").lower() in ("1", "true", "yes")

DEFAULT_EPS = 1e-15
DEFAULT_KMAX = 500

logger = logging.getLogger("fracwright")


def _env_number(name: str, default: float, cast: type) -> float:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise InvalidParams(f"{name}={raw!r} is not a valid {cast.__name__}") from exc


def default_workers() -> int:
    """Get the default worker count for the verification suite.

    Returns:
        Value of FRACWRIGHT_WORKERS, or 1 when unset.
    """
    return max(1, int(_env_number("FRACWRIGHT_WORKERS", 1, int)))


def configure_logging(verbose: bool = False) -> None:
    """Attach a stream handler to the fracwright logger tree.

    Library modules only create loggers; the CLI calls this once.

    Args:
        verbose: Force DEBUG level even when FRACWRIGHT_DEBUG is unset.
    """
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("[%(levelname)s] %(name)s: %(message)s"))
        logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if (verbose or DEBUG) else logging.WARNING)


@dataclass(frozen=True)
class EvalOptions:
    """Truncation control for every power series in the package.

    Attributes:
        eps: Relative truncation target; a sum stops once two consecutive
            terms are at most eps times the partial sum.
        kmax: Hard cap on the number of terms.
    """

    eps: float = DEFAULT_EPS
    kmax: int = DEFAULT_KMAX

    def __post_init__(self) -> None:
        if not 0.0 < self.eps < 1.0:
            raise InvalidParams(f"eps must lie in (0, 1), got {self.eps}")
        if self.kmax < 1:
            raise InvalidParams(f"kmax must be at least 1, got {self.kmax}")

    @classmethod
    def from_env(cls) -> EvalOptions:
        """Build options from FRACWRIGHT_EPS / FRACWRIGHT_KMAX, falling back to defaults."""
        return cls(
            eps=float(_env_number("FRACWRIGHT_EPS", DEFAULT_EPS, float)),
            kmax=int(_env_number("FRACWRIGHT_KMAX", DEFAULT_KMAX, int)),
        )


__all__ = [
    "DEBUG",
    "DEFAULT_EPS",
    "DEFAULT_KMAX",
    "EvalOptions",
    "configure_logging",
    "default_workers",
]
