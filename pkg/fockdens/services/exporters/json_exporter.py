"""JSON exporter for full reports."""

import json
import math
from collections.abc import Sequence
from enum import Enum
from typing import Any

import numpy as np
from pydantic import BaseModel

from fockdens.constants import REPORT_FORMAT_VERSION
from fockdens.models.algebra import HermitianForm


def _jsonable(value: Any) -> Any:
    """Complex numbers as ``[re, im]``, forms as matrices of pairs, non-finite floats as strings."""
    if isinstance(value, BaseModel):
        return {name: _jsonable(getattr(value, name)) for name in type(value).model_fields}
    if isinstance(value, HermitianForm):
        return _jsonable(value.matrix.tolist())
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, bool | int | str) or value is None:
        return value
    if isinstance(value, complex | np.complexfloating):
        return [_jsonable(float(value.real)), _jsonable(float(value.imag))]
    if isinstance(value, float | np.floating):
        x = float(value)
        return x if math.isfinite(x) else repr(x)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple | np.ndarray):
        return [_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def export_json(reports: Sequence[BaseModel], *, indent: int = 2) -> str:
    """Export reports with a small metadata header.

    Args:
        reports: Reports of one command run
        indent: Indentation width (default: 2)

    Returns:
        JSON string

    Raises:
        ValueError: If reports list is empty
    """
    if not reports:
        raise ValueError("reports cannot be empty")
    output = {
        "metadata": {
            "format_version": REPORT_FORMAT_VERSION,
            "report_type": type(reports[0]).__name__,
            "count": len(reports),
        },
        "reports": [_jsonable(r) for r in reports],
    }
    return json.dumps(output, indent=indent, ensure_ascii=False) + "\n"
