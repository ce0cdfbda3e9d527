"""Shipped JSON schemas for the CLI's --format json outputs, plus a
small structural validator covering the subset of JSON Schema they use
(type, properties, required, additionalProperties, items, enum)."""

from __future__ import annotations

import json
from importlib import resources

_TYPES = {
    "object": dict,
    "array": list,
    "string": str,
    "integer": int,
    "boolean": bool,
}


class SchemaError(ValueError):
    pass


def load_schema(name: str) -> dict:
    """Load a shipped schema by bare name, e.g. 'hp_table'."""
    path = resources.files(__package__) / "schemas" / f"{name}.json"
    return json.loads(path.read_text())


def validate(instance, schema: dict, path: str = "$") -> None:
    """Raise SchemaError when the instance does not match the schema."""
    expected = schema.get("type")
    if expected is not None:
        pytype = _TYPES[expected]
        if pytype is int and isinstance(instance, bool):
            raise SchemaError(f"{path}: expected integer, got boolean")
        if not isinstance(instance, pytype):
            raise SchemaError(f"{path}: expected {expected}, got {type(instance).__name__}")
    if "enum" in schema and instance not in schema["enum"]:
        raise SchemaError(f"{path}: {instance!r} not in {schema['enum']}")
    if expected == "object":
        for key in schema.get("required", ()):
            if key not in instance:
                raise SchemaError(f"{path}: missing required key {key!r}")
        props = schema.get("properties", {})
        if schema.get("additionalProperties") is False:
            extra = set(instance) - set(props)
            if extra:
                raise SchemaError(f"{path}: unexpected keys {sorted(extra)}")
        for key, value in instance.items():
            if key in props:
                validate(value, props[key], f"{path}.{key}")
    elif expected == "array" and "items" in schema:
        for i, value in enumerate(instance):
            validate(value, schema["items"], f"{path}[{i}]")
