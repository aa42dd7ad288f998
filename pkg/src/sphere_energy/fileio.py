"""Text file formats: functions, point sets, trace CSVs, JSON reports.

A function file is a header line ``n=<int>`` followed by lines
``<bitstring> <value>``; omitted points are zero. A set file is the same
header followed by one bitstring per line. Bitstrings have length n and are
read as binary numerals (most significant bit first, so the rightmost
character is the coefficient of e_1). Values are written with 17 significant
digits, which round-trips doubles bit-exactly.
"""

from __future__ import annotations

import json
import math
from typing import Iterable

import numpy as np

from .hypercube import Point
from .spectral import DenseFunction


class FileFormatError(ValueError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, path: str, line_no: int, message: str):
        self.path = path
        self.line_no = line_no
        self.message = message
        super().__init__(f"{path}:{line_no}: {message}")


def point_to_bitstring(x: Point, n: int) -> str:
    return format(x, f"0{n}b")


def _parse_header(path: str, lines: list[str]) -> int:
    if not lines:
        raise FileFormatError(path, 1, "empty file; expected header 'n=<int>'")
    head = lines[0].strip()
    if not head.startswith("n="):
        raise FileFormatError(path, 1, f"expected header 'n=<int>', got {head!r}")
    try:
        n = int(head[2:])
    except ValueError:
        raise FileFormatError(path, 1, f"dimension is not an integer: {head!r}") from None
    if not 1 <= n <= 24:
        raise FileFormatError(path, 1, f"dimension must be in [1, 24], got {n}")
    return n


def _parse_bitstring(path: str, line_no: int, token: str, n: int) -> Point:
    if len(token) != n or any(c not in "01" for c in token):
        raise FileFormatError(
            path, line_no, f"expected a bitstring of length {n}, got {token!r}"
        )
    return int(token, 2)


def parse_function_file(path: str) -> DenseFunction:
    """Read a function file; rejects duplicates and all-zero functions."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    n = _parse_header(path, lines)
    values = np.zeros(1 << n)
    seen: set[Point] = set()
    any_nonzero = False
    for line_no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FileFormatError(path, line_no, f"expected '<bitstring> <value>', got {raw!r}")
        x = _parse_bitstring(path, line_no, parts[0], n)
        if x in seen:
            raise FileFormatError(path, line_no, f"duplicate point {parts[0]}")
        seen.add(x)
        try:
            v = float(parts[1])
        except ValueError:
            raise FileFormatError(path, line_no, f"value is not a number: {parts[1]!r}") from None
        if not math.isfinite(v):
            raise FileFormatError(path, line_no, f"value must be finite, got {parts[1]}")
        values[x] = v
        if v != 0.0:
            any_nonzero = True
    if not any_nonzero:
        raise FileFormatError(path, len(lines), "function file holds no nonzero value")
    return DenseFunction(n, values)


def parse_set_file(path: str) -> tuple[int, list[Point]]:
    """Read a set file; rejects duplicates. Returns (n, sorted points)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    n = _parse_header(path, lines)
    seen: set[Point] = set()
    for line_no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        x = _parse_bitstring(path, line_no, line, n)
        if x in seen:
            raise FileFormatError(path, line_no, f"duplicate point {line}")
        seen.add(x)
    return n, sorted(seen)


def function_to_text(f: DenseFunction, include_zeros: bool = False) -> str:
    """Serialize a function in the function-file format (17 significant digits)."""
    if f.n < 1:
        raise ValueError("function files need n >= 1")
    lines = [f"n={f.n}"]
    indices = range(f.values.shape[0]) if include_zeros else np.flatnonzero(f.values)
    for x in indices:
        lines.append(f"{point_to_bitstring(int(x), f.n)} {f.values[x]:.17g}")
    return "\n".join(lines) + "\n"


def set_to_text(points: Iterable[Point], n: int) -> str:
    if n < 1:
        raise ValueError("set files need n >= 1")
    lines = [f"n={n}"] + [point_to_bitstring(x, n) for x in sorted(set(points))]
    return "\n".join(lines) + "\n"


def write_function_file(f: DenseFunction, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(function_to_text(f))


def write_set_file(points: Iterable[Point], n: int, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(set_to_text(points, n))


def trace_to_csv(trace) -> str:
    """CSV for a CompressionTrace: sweep, pair_i, pair_j, max_change, u2_fourth, l2."""
    rows = ["sweep,pair_i,pair_j,max_change,u2_fourth,l2"]
    for r in trace.sweeps:
        rows.append(
            f"{r.sweep},{r.pair[0]},{r.pair[1]},{r.max_change:.17g},{r.u2_fourth:.17g},{r.l2:.17g}"
        )
    return "\n".join(rows) + "\n"


def dump_json(obj: dict, path: str) -> None:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(obj, sort_keys=True, indent=2))
        fh.write("\n")
