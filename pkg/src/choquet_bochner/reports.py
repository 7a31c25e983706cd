"""Outcome records for property checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

HOLDS = "holds"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


def jsonable(obj):
    """Recursively convert numpy arrays, OrderedValues and tuples to JSON types."""
    from .ordered_values import OrderedValue

    if isinstance(obj, OrderedValue):
        return obj.to_json()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


@dataclass
class PropertyReport:
    """Verdict of one property check.

    ``cases`` counts the instances examined.  A refuted report always
    carries a ``counterexample`` with ``inputs`` and ``outputs`` entries
    that reproduce the violation when re-evaluated.
    """

    name: str
    verdict: str
    cases: int
    tol: float
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in (HOLDS, REFUTED, INCONCLUSIVE):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.verdict == REFUTED and self.counterexample is None:
            raise ValueError("a refuted report needs a counterexample")

    @property
    def holds(self) -> bool:
        return self.verdict == HOLDS

    @property
    def refuted(self) -> bool:
        return self.verdict == REFUTED

    def to_json(self) -> dict:
        out = {
            "property": self.name,
            "holds": self.holds,
            "verdict": self.verdict,
            "cases": int(self.cases),
            "counterexample": jsonable(self.counterexample),
            "tol": float(self.tol),
        }
        if self.details:
            out["details"] = jsonable(self.details)
        return out

    def summary(self) -> str:
        line = f"{self.name}: {self.verdict} over {self.cases} cases (tol {self.tol:g})"
        if self.counterexample is not None:
            line += f"; counterexample {jsonable(self.counterexample.get('inputs'))}"
        return line
