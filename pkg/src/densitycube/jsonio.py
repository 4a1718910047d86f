"""Canonical JSON helpers shared by the serializers and the CLI."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any


def canonical_dumps(obj: Any) -> str:
    """Serialize to JSON with sorted keys and stable float formatting.

    Floats are written in Python's shortest round-trip representation, which
    is exact at double precision, so identical data always produces
    byte-identical output.
    """
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_json(path: str | Path, obj: Any) -> Path:
    path = Path(path)
    path.write_text(canonical_dumps(obj), encoding="utf-8")
    return path


def read_json(path: str | Path) -> Any:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def complex_pair(z: complex) -> list[float]:
    """Encode a complex number as a [re, im] pair."""
    z = complex(z)
    return [float(z.real), float(z.imag)]


def pair_complex(pair: Any) -> complex:
    re, im = pair
    return complex(float(re), float(im))
