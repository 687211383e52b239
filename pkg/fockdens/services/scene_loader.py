"""Scene file loading and serialization."""

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from fockdens.exceptions import SceneValidationError
from fockdens.models.hypersurface import Hypersurface
from fockdens.models.scene import (
    HypersurfaceSpec,
    ProductSpec,
    Scene,
    SceneDefaults,
    SequenceSpec,
    WeightSpec,
)
from fockdens.models.sequence import ProductSequence, Sequence1D
from fockdens.models.weight import Weight

logger = logging.getLogger(__name__)


def _field_name(loc: tuple[int | str, ...]) -> str:
    return ".".join(str(part) for part in loc) if loc else "scene"


def scene_from_dict(data: object) -> Scene:
    """Validate parsed JSON as a scene.

    Raises:
        SceneValidationError: Naming the first offending field
    """
    try:
        return Scene.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        details = "; ".join(
            f"{_field_name(err['loc'])}: {err['msg']}" for err in e.errors()
        )
        raise SceneValidationError(_field_name(first["loc"]), details) from e


def parse_scene(path: Path) -> Scene:
    """Load and validate a JSON scene file.

    Raises:
        SceneValidationError: If the file is missing, is not valid JSON, or
            fails validation (unknown fields included)
    """
    if not path.is_file():
        raise SceneValidationError(str(path), "file not found")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SceneValidationError(path.name, f"malformed JSON: {e}") from e
    scene = scene_from_dict(data)
    logger.debug("loaded scene %s (n=%d)", path, scene.dimension)
    return scene


def build_scene(
    weight: Weight,
    hypersurface: Hypersurface | None = None,
    sequences: list[Sequence1D] | None = None,
    products: list[ProductSequence] | None = None,
    defaults: SceneDefaults | None = None,
) -> Scene:
    """Assemble a scene from value objects; sequences are keyed by label."""
    seq_specs = {
        (s.label or f"sequence{k}"): SequenceSpec(points=[(p.real, p.imag) for p in s.points])
        for k, s in enumerate(sequences or [])
    }
    prod_specs = {
        (p.label or f"product{k}"): ProductSpec(
            gamma=[(g.real, g.imag) for g in p.gamma.points],
            lambdas=[[(x.real, x.imag) for x in fiber.points] for fiber in p.lambdas],
        )
        for k, p in enumerate(products or [])
    }
    return scene_from_dict(
        {
            "dimension": weight.n,
            "weight": WeightSpec.from_weight(weight).model_dump(),
            "hypersurface": (
                HypersurfaceSpec.from_hypersurface(hypersurface).model_dump()
                if hypersurface is not None
                else None
            ),
            "sequences": {k: v.model_dump() for k, v in seq_specs.items()},
            "products": {k: v.model_dump() for k, v in prod_specs.items()},
            "defaults": (defaults or SceneDefaults()).model_dump(),
        }
    )


def dump_scene(scene: Scene) -> str:
    """Serialize a scene to JSON text that :func:`parse_scene` reads back."""
    return json.dumps(scene.model_dump(mode="json"), indent=2) + "\n"
