"""Tests for scene loading and serialization."""

import json

import pytest

from fockdens.exceptions import SceneValidationError
from fockdens.models import Hypersurface, MultiPoly, ProductSequence, Sequence1D, Weight
from fockdens.models.scene import SceneDefaults
from fockdens.models.weight import WeightKind
from fockdens.services.scene_loader import build_scene, dump_scene, parse_scene, scene_from_dict


class TestParseScene:
    """Tests for parse_scene."""

    def test_hyperplane_scene(self, hyperplane_scene):
        """A hypersurface scene builds its weight, surface and defaults."""
        scene = parse_scene(hyperplane_scene)
        assert scene.dimension == 2
        assert scene.defaults.budget == 800
        assert scene.defaults.seed == 7
        assert scene.build_weight().kind is WeightKind.EUCLIDEAN
        H = scene.build_hypersurface()
        assert H is not None
        assert H.T([3.0 + 1j, 0j])[0] == 0

    def test_product_scene(self, product_scene):
        """Quadratic weights and product sequences are built."""
        scene = parse_scene(product_scene)
        w = scene.build_weight()
        assert w.Q[0, 0].real == pytest.approx(2.0)
        assert w.Q[0, 1].real == pytest.approx(1.0)
        ps = scene.build_product()
        assert ps is not None
        assert ps.label == "split"
        assert [len(f) for f in ps.lambdas] == [2]
        assert scene.build_hypersurface() is None

    def test_sequence_scene(self, sequence_scene):
        """Named and first-sequence lookup agree."""
        scene = parse_scene(sequence_scene)
        assert scene.build_sequence().points == scene.build_sequence("sparse").points
        assert scene.build_sequence("other") is None

    def test_missing_file(self, tmp_path):
        """A missing scene file is a validation error."""
        with pytest.raises(SceneValidationError, match="file not found"):
            parse_scene(tmp_path / "absent.json")

    def test_malformed_json(self, tmp_path):
        """Unparsable JSON names the file."""
        path = tmp_path / "broken.json"
        path.write_text("{dimension: 2", encoding="utf-8")
        with pytest.raises(SceneValidationError, match="malformed JSON") as exc_info:
            parse_scene(path)
        assert exc_info.value.field == "broken.json"


class TestSceneValidation:
    """Tests for scene schema validation."""

    def test_field_name_reported(self):
        """Errors inside nested models carry a dotted field name."""
        with pytest.raises(SceneValidationError) as exc_info:
            scene_from_dict(
                {
                    "dimension": 2,
                    "weight": {"kind": "quadratic", "Q": [[[1.0, 0.0], [2.0, 0.0]], [[0.0, 0.0]]]},
                    "hypersurface": {"dimension": 2, "terms": [[[0, 1], 1.0, 0.0]]},
                }
            )
        assert exc_info.value.field == "weight.Q"
        assert "square" in str(exc_info.value)

    def test_non_hermitian_levi(self):
        """An asymmetric Q is rejected."""
        with pytest.raises(SceneValidationError, match="Hermitian"):
            scene_from_dict(
                {
                    "dimension": 2,
                    "weight": {
                        "kind": "quadratic",
                        "Q": [[[1.0, 0.0], [0.5, 0.0]], [[0.0, 0.0], [1.0, 0.0]]],
                    },
                    "hypersurface": {"dimension": 2, "terms": [[[0, 1], 1.0, 0.0]]},
                }
            )

    def test_degenerate_levi(self):
        """A Levi form with a non-positive eigenvalue is rejected."""
        with pytest.raises(SceneValidationError, match="degenerate Levi form"):
            scene_from_dict(
                {
                    "dimension": 1,
                    "weight": {"kind": "quadratic", "Q": [[[0.0, 0.0]]]},
                    "hypersurface": {"dimension": 1, "terms": [[[1], 1.0, 0.0]]},
                }
            )

    def test_extra_fields_forbidden(self):
        """Unknown keys are errors, not silently ignored."""
        with pytest.raises(SceneValidationError) as exc_info:
            scene_from_dict(
                {
                    "dimension": 2,
                    "hypersurface": {"dimension": 2, "terms": [[[0, 1], 1.0, 0.0]]},
                    "colour": "blue",
                }
            )
        assert exc_info.value.field == "colour"

    def test_dimension_mismatch(self):
        """The hypersurface must live in the scene dimension."""
        with pytest.raises(SceneValidationError, match="differs from scene dimension"):
            scene_from_dict(
                {"dimension": 3, "hypersurface": {"dimension": 2, "terms": [[[0, 1], 1.0, 0.0]]}}
            )

    def test_multi_index_length(self):
        """Term multi-indices must match the polynomial dimension."""
        with pytest.raises(SceneValidationError, match="expected 2"):
            scene_from_dict(
                {"dimension": 2, "hypersurface": {"dimension": 2, "terms": [[[1], 1.0, 0.0]]}}
            )

    def test_zero_polynomial(self):
        """A vanishing defining polynomial is rejected."""
        with pytest.raises(SceneValidationError, match="must not vanish"):
            scene_from_dict(
                {"dimension": 2, "hypersurface": {"dimension": 2, "terms": [[[0, 1], 0.0, 0.0]]}}
            )

    def test_needs_a_target(self):
        """A scene without surface or sequences has nothing to analyse."""
        with pytest.raises(SceneValidationError, match="needs a hypersurface"):
            scene_from_dict({"dimension": 2})

    def test_sequences_need_dimension_one(self):
        """Planar sequences only live in scenes on C."""
        with pytest.raises(SceneValidationError, match="dimension 1"):
            scene_from_dict({"dimension": 2, "sequences": {"s": {"points": [[0.0, 0.0]]}}})

    def test_product_fiber_alignment(self):
        """One fiber per gamma point."""
        with pytest.raises(SceneValidationError, match="fibers"):
            scene_from_dict(
                {"dimension": 2, "products": {"p": {"gamma": [[0.0, 0.0]], "lambdas": []}}}
            )

    def test_defaults_ranges(self):
        """Budgets must be positive."""
        with pytest.raises(SceneValidationError) as exc_info:
            scene_from_dict(
                {
                    "dimension": 2,
                    "hypersurface": {"dimension": 2, "terms": [[[0, 1], 1.0, 0.0]]},
                    "defaults": {"budget": 0},
                }
            )
        assert exc_info.value.field == "defaults.budget"


class TestBuildScene:
    """Tests for build_scene and dump_scene."""

    def test_dump_and_reload(self, tmp_path, parabola):
        """A dumped scene reloads to the same surface and weight."""
        w = Weight.from_levi([[2.0, 1.0], [1.0, 1.0]])
        scene = build_scene(w, parabola, defaults=SceneDefaults(budget=123, seed=5))
        path = tmp_path / "scene.json"
        path.write_text(dump_scene(scene), encoding="utf-8")

        reloaded = parse_scene(path)
        assert reloaded == scene
        assert reloaded.defaults.budget == 123
        H = reloaded.build_hypersurface()
        assert H is not None
        assert H.T([2.0, 4.0])[0] == pytest.approx(0.0)
        assert reloaded.build_weight().Q[0, 1].real == pytest.approx(1.0)

    def test_build_scene_with_sequences(self):
        """Sequences are keyed by label."""
        s = Sequence1D(points=[0j, 1j], label="pair")
        scene = build_scene(Weight.euclidean(1), sequences=[s])
        assert list(scene.sequences) == ["pair"]
        assert scene.build_sequence("pair").points == [0j, 1j]

    def test_build_scene_with_products(self):
        """Unlabelled products get positional keys."""
        ps = ProductSequence(
            gamma=Sequence1D(points=[0j]), lambdas=[Sequence1D(points=[0j, 2j])]
        )
        scene = build_scene(Weight.euclidean(2), products=[ps])
        assert list(scene.products) == ["product0"]

    def test_dump_is_json(self):
        """The dump is plain JSON with [re, im] pairs."""
        H = Hypersurface(MultiPoly.coordinate(2, 1))
        data = json.loads(dump_scene(build_scene(Weight.euclidean(2), H)))
        assert data["dimension"] == 2
        assert data["hypersurface"]["terms"] == [[[0, 1], 1.0, 0.0]]
