"""Report envelopes and deterministic serialization helpers."""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    """One named numeric check: value vs tolerance, with provenance."""

    name: str
    value: float
    tolerance: float
    passed: bool
    provenance: str

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value,
                "tolerance": self.tolerance, "passed": self.passed,
                "provenance": self.provenance}


def check_leq(name: str, value: float, tolerance: float, provenance: str) -> Check:
    return Check(name=name, value=float(value), tolerance=float(tolerance),
                 passed=bool(value <= tolerance), provenance=provenance)


def check_geq(name: str, value: float, threshold: float, provenance: str) -> Check:
    return Check(name=name, value=float(value), tolerance=float(threshold),
                 passed=bool(value >= threshold), provenance=provenance)


def check_true(name: str, flag: bool, provenance: str) -> Check:
    return Check(name=name, value=1.0 if flag else 0.0, tolerance=1.0,
                 passed=bool(flag), provenance=provenance)


def jsonable(obj):
    """Recursively convert complex numbers and numpy scalars for JSON."""
    import numpy as np
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.complexfloating):
        c = complex(obj)
        return [c.real, c.imag]
    if isinstance(obj, np.ndarray):
        return [jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    return obj


def stable_dumps(obj) -> str:
    """Deterministic JSON: sorted keys, shortest-roundtrip floats, LF newline."""
    return json.dumps(jsonable(obj), sort_keys=True, indent=2) + "\n"


def write_csv(path, header, rows):
    """CSV with 17-significant-digit floats, UTF-8, LF line endings."""
    def fmt(x):
        if isinstance(x, float):
            return f"{x:.17g}"
        return str(x)

    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(x) for x in row) + "\n")
