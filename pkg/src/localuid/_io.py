"""JSON helpers shared by the file formats."""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .errors import ParseError

SCHEMA_VERSION = "localuid/1"


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def dumps(obj: Any) -> str:
    # allow_nan=False keeps every output valid JSON; float repr round-trips exactly.
    return json.dumps(obj, allow_nan=False, separators=(",", ": ")) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def require(obj: Any, key: str, kind: type | tuple[type, ...], where: str) -> Any:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected a JSON object")
    if key not in obj:
        raise ParseError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not _is_kind(value, kind):
        raise ParseError(f"{where}: key {key!r} has wrong type")
    return value


def _is_kind(value: Any, kind: type | tuple[type, ...]) -> bool:
    kinds = kind if isinstance(kind, tuple) else (kind,)
    # bool is an int subclass; never accept it where a number is wanted
    if isinstance(value, bool) and bool not in kinds:
        return False
    return isinstance(value, kinds)


def as_int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def as_float(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{where}: expected a number, got {value!r}")
    return float(value)


def is_finite(x: float) -> bool:
    return math.isfinite(x)
