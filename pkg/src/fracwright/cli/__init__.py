"""CLI utility functions: argument parsing helpers and error exits."""

from __future__ import annotations

import json
import math
import sys
from pathlib import Path
from typing import Any

import numpy as np

from fracwright.errors import InvalidParams
from fracwright.params import OperatorParams


def error_exit(message: str, code: int = 1) -> None:
    """Print error message to stderr and exit with specified code.

    Args:
        message: Error message to display.
        code: Exit code (default: 1).
    """
    print(f"Error: {message}", file=sys.stderr)
    sys.exit(code)


def parse_vector(text: str, name: str = "vector") -> tuple[float, ...]:
    """Parse a comma-separated list of reals such as "0.5,1,1.5".

    Raises:
        InvalidParams: If an entry is not a finite number.
    """
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(p == "" for p in parts):
        raise InvalidParams(f"{name} must be a comma-separated list of numbers, got {text!r}")
    try:
        values = tuple(float(p) for p in parts)
    except ValueError as exc:
        raise InvalidParams(f"{name} must be a comma-separated list of numbers, got {text!r}") from exc
    if not all(math.isfinite(v) for v in values):
        raise InvalidParams(f"{name} entries must be finite, got {text!r}")
    return values


def parse_complex(text: str) -> complex:
    """Parse "re" or "re,im" into a complex number."""
    values = parse_vector(text, "z")
    if len(values) > 2:
        raise InvalidParams(f"z takes re[,im], got {text!r}")
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def parse_grid(text: str) -> list[float]:
    """Parse a real grid "start:stop:count[:log]".

    The grid includes both ends; "log" spaces the points geometrically and
    needs positive ends. A count of 1 gives [start].

    Raises:
        InvalidParams: If the spec is malformed or count < 1.
    """
    parts = text.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
        raise InvalidParams(f"grid must be start:stop:count[:log], got {text!r}")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError as exc:
        raise InvalidParams(f"grid must be start:stop:count[:log], got {text!r}") from exc
    if count < 1:
        raise InvalidParams(f"grid count must be at least 1, got {count}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise InvalidParams(f"grid ends must be finite, got {text!r}")
    if len(parts) == 4:
        if start <= 0 or stop <= 0:
            raise InvalidParams(f"log grid needs positive ends, got {text!r}")
        return [float(v) for v in np.geomspace(start, stop, count)]
    return [float(v) for v in np.linspace(start, stop, count)]


def load_params_document(source: str) -> dict[str, Any]:
    """Load a parameter document from inline JSON or a JSON file path.

    Raises:
        InvalidParams: If the file is missing or the JSON is malformed.
    """
    text = source
    if not source.lstrip().startswith("{"):
        path = Path(source)
        if not path.is_file():
            raise InvalidParams(f"Parameter file does not exist: {path}")
        text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParams(f"invalid parameter JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidParams("parameter JSON must be an object with 'alpha' and 'nu'")
    return data


def params_from_document(data: dict[str, Any]) -> OperatorParams:
    return OperatorParams.from_mapping(data)


def points_from_document(data: dict[str, Any]) -> list[complex] | None:
    """Optional "points" entry: numbers or [re, im] pairs."""
    raw = data.get("points")
    if raw is None:
        return None
    if not isinstance(raw, list) or not raw:
        raise InvalidParams("'points' must be a non-empty list")
    points = []
    for entry in raw:
        if isinstance(entry, int | float):
            points.append(complex(entry))
        elif isinstance(entry, list) and len(entry) == 2:
            points.append(complex(float(entry[0]), float(entry[1])))
        else:
            raise InvalidParams(f"point entries must be numbers or [re, im], got {entry!r}")
    return points


def resolve_output_path(path: Path | None) -> Path | None:
    """Resolve an output file path, creating its parent directory if needed.

    Args:
        path: Output file path, or None.

    Returns:
        Resolved absolute path, or None.
    """
    if path is None:
        return None
    resolved = path.resolve()
    resolved.parent.mkdir(parents=True, exist_ok=True)
    return resolved


__all__ = [
    "error_exit",
    "load_params_document",
    "params_from_document",
    "parse_complex",
    "parse_grid",
    "parse_vector",
    "points_from_document",
    "resolve_output_path",
]
