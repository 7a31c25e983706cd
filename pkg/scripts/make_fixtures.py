"""Regenerate the small JSON fixtures under fixtures/ used by the CLI tests and README."""

import argparse
import json
from pathlib import Path

import numpy as np

from choquet_bochner import additive_measure, unanimity
from choquet_bochner.generators import random_capacity, random_submodular
from choquet_bochner.io import dumps, function_to_json, set_function_to_json
from choquet_bochner.ordered_values import OrderedValue, ValueKind


def write(folder: Path, name: str, obj):
    (folder / name).write_text(dumps(obj))
    print(f"wrote {folder / name}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "fixtures"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    write(out, "unanimity.json", set_function_to_json(unanimity(2, [0, 1])))
    write(out, "unanimity3.json", set_function_to_json(unanimity(3, [0, 1, 2])))
    write(out, "additive3.json", set_function_to_json(additive_measure([0.25, 0.25, 0.5])))
    write(out, "sym_additive2.json", set_function_to_json(
        additive_measure([OrderedValue.sym(np.eye(2) / 2), OrderedValue.sym(np.diag([0.5, 1.0]))])))
    write(out, "vector3.json", set_function_to_json(random_capacity(1, 3, ValueKind.vector(2), "monotone")))
    write(out, "sym3.json", set_function_to_json(random_capacity(2, 3, ValueKind.sym(2), "monotone")))
    write(out, "submodular4.json", set_function_to_json(random_submodular(3, 4, ValueKind.scalar())))
    write(out, "supermodular3.json", set_function_to_json(random_capacity(4, 3, ValueKind.scalar(), "unanimity")))

    bad_empty = set_function_to_json(unanimity(2, [0, 1]))
    bad_empty["values"].insert(0, {"subset": [], "value": 0.1})
    write(out, "bad_empty.json", bad_empty)
    write(out, "bad_monotone.json", {"ground_size": 2, "value_kind": "scalar", "values": [
        {"subset": [0], "value": 1.0}, {"subset": [1], "value": 0.0}, {"subset": [0, 1], "value": 0.5}]})
    write(out, "signed2.json", {"ground_size": 2, "value_kind": "scalar", "values": [
        {"subset": [0], "value": 1.0}, {"subset": [1], "value": -1.0}, {"subset": [0, 1], "value": 0.0}]})

    write(out, "ones2.json", function_to_json(np.ones(2)))
    write(out, "ones3.json", function_to_json(np.ones(3)))
    write(out, "f2.json", function_to_json([0.5, -1.25]))
    write(out, "f3.json", function_to_json([0.3, -1.2, 2.5]))
    write(out, "f4.json", function_to_json([1.5, -0.5, 0.0, 2.0]))
    (out / "linear_params.json").write_text(json.dumps({"w": [1.0, -1.0]}) + "\n")


if __name__ == "__main__":
    main()
