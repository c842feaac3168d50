"""Deterministic JSON/CSV emission with 17-significant-digit floats.

The stdlib json module formats floats with repr, which is roundtrip-exact
but not stable across int-valued floats vs ints; all numbers here go
through one formatter so repeated runs are byte-identical.
"""

from __future__ import annotations

import math


def fmt_float(x: float) -> str:
    if isinstance(x, bool):  # bools are ints; keep them out of the float path
        raise TypeError("bool is not a float")
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite float in output")
    return format(float(x), ".17g")


def _emit(obj) -> str:
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        # json string escaping, minimal: our keys/values are plain ascii
        out = obj.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
        return f'"{out}"'
    if isinstance(obj, dict):
        items = ", ".join(f"{_emit(str(k))}: {_emit(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_emit(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    return _emit(obj) + "\n"


def dumps_csv(rows, header: str = "t,x,u") -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(fmt_float(v) for v in row))
    return "\n".join(lines) + "\n"
