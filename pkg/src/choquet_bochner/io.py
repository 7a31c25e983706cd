"""JSON file formats for capacities, functions and reports.

Capacity file::

    {"ground_size": N, "value_kind": "scalar" | {"vector": n} | {"sym": n},
     "values": [{"subset": [sorted indices], "value": <value>}, ...]}

The empty-set entry may be omitted; every other subset must appear exactly
once.  Function file: ``{"ground_size": N, "values": [f_0, ..., f_{N-1}]}``.
Numbers are written with 17 significant digits so files round-trip exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .capacity import SetFunction, subset_indices, subset_mask
from .errors import FormatError
from .integral import GroundFunction
from .ordered_values import kind_from_json, kind_to_json
from .reports import jsonable


def format_number(x, digits: int = 17) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("non-finite number in JSON output")
    if x == 0.0:
        return "0.0" if math.copysign(1.0, x) > 0 else "-0.0"
    s = format(x, f".{digits}g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def dumps(obj, digits: int = 17, indent: int | None = 2) -> str:
    """Deterministic JSON text; floats use ``digits`` significant digits.

    Lists of numbers stay on one line so matrices remain readable.
    """
    obj = jsonable(obj)

    def scalar(o):
        return o is None or isinstance(o, (bool, int, float, str))

    def enc(o, level):
        if o is None:
            return "null"
        if isinstance(o, (bool, int, float)):
            return format_number(o, digits)
        if isinstance(o, str):
            return json.dumps(o)
        pad = "" if indent is None else "\n" + " " * (indent * (level + 1))
        end = "" if indent is None else "\n" + " " * (indent * level)
        sep = "," if indent is None else ","
        if isinstance(o, list):
            if not o:
                return "[]"
            if all(scalar(v) for v in o) or all(isinstance(v, list) and all(scalar(w) for w in v) for v in o):
                return "[" + ", ".join(enc(v, level + 1) for v in o) + "]"
            return "[" + sep.join(pad + enc(v, level + 1) for v in o) + end + "]"
        if isinstance(o, dict):
            if not o:
                return "{}"
            items = [pad + json.dumps(str(k)) + ": " + enc(v, level + 1) for k, v in o.items()]
            return "{" + sep.join(items) + end + "}"
        raise TypeError(f"cannot encode {type(o).__name__}")

    return enc(obj, 0) + "\n"


def _read(source):
    if isinstance(source, dict):
        return source
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {source}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: invalid JSON ({exc})") from exc


def set_function_to_json(sf: SetFunction) -> dict:
    n = sf.ground_size
    values = []
    start = 0 if np.any(sf.table[0] != 0.0) else 1
    for mask in range(start, 1 << n):
        values.append({"subset": subset_indices(mask, n), "value": sf.value(mask).to_json()})
    return {"ground_size": n, "value_kind": kind_to_json(sf.kind), "values": values}


def set_function_from_json(obj) -> SetFunction:
    try:
        n = obj["ground_size"]
        kind = kind_from_json(obj["value_kind"])
        entries = obj["values"]
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad capacity file: {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise FormatError("ground_size must be a positive integer")
    table = np.zeros((1 << n,) + kind.shape)
    seen = set()
    for entry in entries:
        try:
            idx = entry["subset"]
            value = np.asarray(entry["value"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad capacity entry {entry!r}") from exc
        if any(not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < n for i in idx):
            raise FormatError(f"subset {idx!r} has indices outside 0..{n - 1}")
        if list(idx) != sorted(set(idx)):
            raise FormatError(f"subset {idx!r} must be sorted without repeats")
        mask = subset_mask(idx)
        if mask in seen:
            raise FormatError(f"subset {idx!r} listed twice")
        if value.shape != kind.shape:
            raise FormatError(f"value for subset {idx!r} does not match kind {kind}")
        seen.add(mask)
        table[mask] = value
    missing = [m for m in range(1, 1 << n) if m not in seen]
    if missing:
        raise FormatError(f"missing subset {subset_indices(missing[0], n)} ({len(missing)} missing in total)")
    try:
        return SetFunction(n, kind, table)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def load_set_function(source) -> SetFunction:
    return set_function_from_json(_read(source))


def save_set_function(sf: SetFunction, path) -> None:
    Path(path).write_text(dumps(set_function_to_json(sf)))


def function_to_json(f) -> dict:
    v = f.values if isinstance(f, GroundFunction) else np.asarray(f, dtype=float)
    return {"ground_size": int(v.size), "values": v.tolist()}


def load_function(source) -> GroundFunction:
    obj = _read(source)
    try:
        n = obj["ground_size"]
        values = obj["values"]
        f = GroundFunction(values)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad function file: {exc}") from exc
    if f.ground_size != n:
        raise FormatError(f"function file declares {n} points but lists {f.ground_size}")
    return f


def load_json(source):
    return _read(source)
