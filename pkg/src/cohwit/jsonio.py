"""Shared JSON plumbing for the file formats and the CLI.

All numeric output is rounded to 12 significant digits, NaN/Infinity are
rejected on input, and dumps are deterministic (sorted keys, fixed layout)
so identical invocations produce identical bytes.
"""

from __future__ import annotations

import json
import math
from pathlib import Path


def round12(x: float) -> float:
    """Round to 12 significant digits (the precision of all emitted numbers)."""
    return float(f"{float(x):.12g}")


def round_floats(obj):
    """Recursively round every float in a JSON-ready structure."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round12(obj)
    if isinstance(obj, dict):
        return {k: round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(v) for v in obj]
    return obj


def _reject_constant(token: str):
    raise ValueError(f"non-finite number in JSON input: {token}")


def loads_strict(text: str):
    """Parse JSON, rejecting NaN/Infinity literals."""
    return json.loads(text, parse_constant=_reject_constant)


def load_file(path):
    return loads_strict(Path(path).read_text(encoding="utf-8"))


def dumps(obj) -> str:
    """Deterministic dump: sorted keys, two-space indent, trailing newline."""
    return json.dumps(round_floats(obj), indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_file(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def require_finite(value, what: str) -> float:
    x = float(value)
    if not math.isfinite(x):
        raise ValueError(f"{what} must be finite, got {value!r}")
    return x


def pair_to_complex(pair, what: str) -> complex:
    """Decode a [re, im] pair, rejecting malformed or non-finite entries."""
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError(f"{what} must be a [re, im] pair, got {pair!r}")
    return complex(require_finite(pair[0], what), require_finite(pair[1], what))


def complex_to_pair(z: complex) -> list[float]:
    return [round12(z.real), round12(z.imag)]
