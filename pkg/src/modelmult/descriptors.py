"""JSON descriptors for inner functions and atomic measures.

The wire format is versioned by the schema files under schemas/ at the
repository root; descriptor validation errors carry a pointer into the
relevant schema.
"""

from __future__ import annotations

import json

from .clark import AtomicMeasure
from .errors import DescriptorError
from .inner import (AtomicSingular, FiniteBlaschke, FrostmanShift,
                    GeometricZeros, InfiniteBlaschke, InnerFunction,
                    ProductInner)

INNER_SCHEMA = "schemas/inner_function.v1.schema.json"
MEASURE_SCHEMA = "schemas/atomic_measure.v1.schema.json"


def _pair_to_complex(value, pointer: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if (isinstance(value, (list, tuple)) and len(value) == 2
            and all(isinstance(x, (int, float)) for x in value)):
        return complex(value[0], value[1])
    raise DescriptorError(f"expected [re, im] at {pointer}", pointer)


def inner_to_dict(u: InnerFunction) -> dict:
    return u.describe()


def inner_from_dict(data) -> InnerFunction:
    if not isinstance(data, dict) or "kind" not in data:
        raise DescriptorError("descriptor must be an object with a 'kind' tag",
                              f"{INNER_SCHEMA}#/properties/kind")
    kind = data["kind"]
    try:
        if kind == "finite_blaschke":
            zeros = [_pair_to_complex(z, f"{INNER_SCHEMA}#/properties/zeros")
                     for z in data["zeros"]]
            return FiniteBlaschke(zeros)
        if kind == "atomic_singular":
            atoms = [(_pair_to_complex(a["xi"], f"{INNER_SCHEMA}#/properties/atoms"),
                      float(a["weight"])) for a in data["atoms"]]
            return AtomicSingular(atoms)
        if kind == "product":
            return ProductInner(*[inner_from_dict(f) for f in data["factors"]])
        if kind == "frostman_shift":
            base = inner_from_dict(data["base"])
            a = _pair_to_complex(data["a"], f"{INNER_SCHEMA}#/properties/a")
            return FrostmanShift(base, a)
        if kind == "infinite_blaschke":
            rule = data["rule"]
            if rule.get("name") != "radial_geometric":
                raise DescriptorError(
                    f"unknown zero rule {rule.get('name')!r}",
                    f"{INNER_SCHEMA}#/properties/rule/properties/name")
            direction = _pair_to_complex(
                rule.get("direction", [1.0, 0.0]),
                f"{INNER_SCHEMA}#/properties/rule/properties/direction")
            return InfiniteBlaschke(GeometricZeros(float(rule["ratio"]), direction))
    except DescriptorError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DescriptorError(f"malformed {kind} descriptor: {exc}",
                              f"{INNER_SCHEMA}#/definitions/{kind}") from exc
    raise DescriptorError(f"unknown inner function kind {kind!r}",
                          f"{INNER_SCHEMA}#/properties/kind")


def inner_from_json(text: str) -> InnerFunction:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"descriptor is not valid JSON: {exc}",
                              INNER_SCHEMA) from exc
    return inner_from_dict(data)


def measure_from_json(text: str) -> AtomicMeasure:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError(f"measure is not valid JSON: {exc}",
                              MEASURE_SCHEMA) from exc
    try:
        return AtomicMeasure.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise DescriptorError(f"malformed measure: {exc}",
                              f"{MEASURE_SCHEMA}#/properties/atoms") from exc
