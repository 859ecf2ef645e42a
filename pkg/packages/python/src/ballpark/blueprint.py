"""blueprint - JSON Document Validation.

Small schema language for the JSON documents ballpark reads: structured
matrix files and settings files. Checks types, ranges, choices and array
items, and reports the failing field by its dotted path.

Example:
    >>> from ballpark import blueprint
    >>> schema = blueprint.COMMON_SCHEMAS["matrix"]
    >>> blueprint.validate({"rows": [[1, 0], [0, 1]]}, schema)

Classes:
    FieldSchema: Rules for a single field (or array item).
    Schema: Named fields plus the extra-field policy.

Functions:
    make_schema: Build a Schema from a plain dict.
    validate: Validate a document, apply defaults, raise SchemaError.
    validate_value: Validate one value against a FieldSchema.

Pre-built Schemas (COMMON_SCHEMAS):
    matrix, settings (the sweep block is nested inside settings)
"""

from dataclasses import dataclass
from typing import Any, Optional

from .mishaps import SchemaError


@dataclass
class FieldSchema:
    """Schema for a single field."""
    type: str = "any"
    required: bool = False
    default: Any = None
    min_value: Optional[float] = None
    max_value: Optional[float] = None
    exclusive_min: bool = False
    min_items: Optional[int] = None
    choices: Optional[list] = None
    items: Optional["FieldSchema"] = None
    nested_schema: Optional[dict] = None


@dataclass
class Schema:
    """Complete schema definition."""
    fields: dict[str, FieldSchema]
    allow_extra: bool = False


def get_type(value: Any) -> str:
    """Get the JSON type name of a value."""
    if isinstance(value, str):
        return "string"
    elif isinstance(value, bool):
        return "boolean"
    elif isinstance(value, int):
        return "integer"
    elif isinstance(value, float):
        return "number"
    elif isinstance(value, list):
        return "array"
    elif isinstance(value, dict):
        return "object"
    elif value is None:
        return "null"
    else:
        return "unknown"


def validate_type(value: Any, expected_type: str, field_name: str) -> None:
    """Validate that a value matches the expected type."""
    if expected_type == "any":
        return

    actual_type = get_type(value)
    if expected_type == "number":
        ok = actual_type in ("integer", "number")
    else:
        ok = actual_type == expected_type
    if not ok:
        raise SchemaError(f"{field_name}: expected {expected_type}, got {actual_type}")


def validate_value(value: Any, schema: FieldSchema, field_name: str) -> Any:
    """Validate a value against a field schema and return it."""
    validate_type(value, schema.type, field_name)

    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if schema.min_value is not None:
            if value < schema.min_value or (schema.exclusive_min and value == schema.min_value):
                bound = "above" if schema.exclusive_min else "at least"
                raise SchemaError(f"{field_name}: value {value} must be {bound} {schema.min_value}")
        if schema.max_value is not None and value > schema.max_value:
            raise SchemaError(f"{field_name}: value {value} is above maximum {schema.max_value}")

    if schema.choices is not None and value not in schema.choices:
        raise SchemaError(f"{field_name}: value '{value}' not in allowed choices {schema.choices}")

    if isinstance(value, list):
        if schema.min_items is not None and len(value) < schema.min_items:
            raise SchemaError(f"{field_name}: needs at least {schema.min_items} items, got {len(value)}")
        if schema.items is not None:
            return [validate_value(item, schema.items, f"{field_name}[{i}]") for i, item in enumerate(value)]

    if schema.nested_schema is not None and isinstance(value, dict):
        return validate(value, make_schema(schema.nested_schema), field_name)

    return value


def validate(data: Any, schema: Schema, prefix: str = "") -> dict:
    """Validate data against a schema.

    Args:
        data: The document to validate
        schema: The schema to validate against
        prefix: Prefix for error messages

    Returns:
        Validated data with defaults applied

    Raises:
        SchemaError: If validation fails
    """
    if not isinstance(data, dict):
        raise SchemaError(f"{prefix or '<document>'}: expected object, got {get_type(data)}")

    validated = {}
    for field_name, field_schema in schema.fields.items():
        full_name = f"{prefix}.{field_name}" if prefix else field_name
        value = data.get(field_name)
        if value is None:
            if field_schema.required:
                raise SchemaError(f"{full_name}: required field is missing")
            if field_schema.default is not None:
                validated[field_name] = field_schema.default
            continue
        validated[field_name] = validate_value(value, field_schema, full_name)

    if not schema.allow_extra:
        extra_fields = set(data.keys()) - set(schema.fields.keys())
        if extra_fields:
            raise SchemaError(f"{prefix or '<document>'}: unexpected fields: {', '.join(sorted(extra_fields))}")

    return validated


def _field(config: Any) -> FieldSchema:
    if isinstance(config, FieldSchema):
        return config
    if isinstance(config, dict):
        config = dict(config)
        if isinstance(config.get("items"), (dict, str)):
            config["items"] = _field(config["items"])
        return FieldSchema(**config)
    return FieldSchema(type=str(config), required=True)


def make_schema(fields: dict, allow_extra: bool = False) -> Schema:
    """Create a Schema from a simpler dict format.

    Args:
        fields: Dict of field_name -> field config (dict, FieldSchema or type name)
        allow_extra: Whether to allow extra fields

    Returns:
        Schema object
    """
    return Schema(fields={name: _field(config) for name, config in fields.items()}, allow_extra=allow_extra)


_SWEEP_FIELDS = {
    "trials": {"type": "integer", "min_value": 0},
    "seed": {"type": "integer", "min_value": 0},
    "n_min": {"type": "integer", "min_value": 1},
    "n_max": {"type": "integer", "min_value": 1},
    "m_extra_max": {"type": "integer", "min_value": 0},
    "entry_range": {"type": "array", "min_items": 2, "items": "number"},
    "r_grid": {"type": "array", "min_items": 1,
               "items": {"type": "number", "min_value": 0, "exclusive_min": True, "required": True}},
    "delta_policy": {"type": "string", "choices": ["max_admissible", "fraction"]},
    "delta_fraction": {"type": "number", "min_value": 0, "max_value": 1, "exclusive_min": True},
    "output_format": {"type": "string", "choices": ["csv", "structured"]},
    "workers": {"type": "integer", "min_value": 1},
    "count_ceiling": {"type": "number", "min_value": 1},
}


COMMON_SCHEMAS = {
    "matrix": make_schema({
        "rows": {
            "type": "array",
            "required": True,
            "min_items": 1,
            "items": {"type": "array", "required": True, "min_items": 1, "items": "number"},
        },
        "comment": {"type": "string"},
    }),

    "settings": make_schema({
        "version": {"type": "string"},
        "rank_tol": {"type": "number", "min_value": 0, "exclusive_min": True},
        "boundary_tol_rel": {"type": "number", "min_value": 0},
        "count_ceiling": {"type": "number", "min_value": 1},
        "slack_rel": {"type": "number", "min_value": 0},
        "hypothesis_tol": {"type": "number", "min_value": 0},
        "output_format": {"type": "string", "choices": ["csv", "structured"]},
        "sweep": {"type": "object", "nested_schema": _SWEEP_FIELDS},
    }),
}
