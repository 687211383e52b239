"""Shared test fixtures for fockdens."""

import json
from pathlib import Path

import pytest

from fockdens.models import Hypersurface, MultiPoly, Weight


@pytest.fixture
def euclidean2() -> Weight:
    """Euclidean weight |z|^2 on C^2."""
    return Weight.euclidean(2)


@pytest.fixture
def hyperplane() -> Hypersurface:
    """W = {z2 = 0}."""
    return Hypersurface(MultiPoly.coordinate(2, 1))


@pytest.fixture
def parabola() -> Hypersurface:
    """W = {z2 = z1^2}."""
    return Hypersurface(MultiPoly(2, (((0, 1), 1.0), ((2, 0), -1.0))))


@pytest.fixture
def hyperbola() -> Hypersurface:
    """W = {z1 z2 = 1}."""
    return Hypersurface(MultiPoly(2, (((1, 1), 1.0), ((0, 0), -1.0))))


@pytest.fixture
def test_hypersurfaces(
    hyperplane: Hypersurface, parabola: Hypersurface, hyperbola: Hypersurface
) -> list[Hypersurface]:
    """The three reference hypersurfaces of C^2."""
    return [hyperplane, parabola, hyperbola]


def write_scene(path: Path, data: dict[str, object]) -> Path:
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


@pytest.fixture
def hyperplane_scene(tmp_path: Path) -> Path:
    """Scene with W = {z2 = 0} and the euclidean weight."""
    return write_scene(
        tmp_path / "hyperplane.json",
        {
            "dimension": 2,
            "hypersurface": {"dimension": 2, "terms": [[[0, 1], 1.0, 0.0]]},
            "defaults": {"budget": 800, "seed": 7},
        },
    )


@pytest.fixture
def sequence_scene(tmp_path: Path) -> Path:
    """Scene with one planar sequence and the euclidean weight on C."""
    return write_scene(
        tmp_path / "sequence.json",
        {
            "dimension": 1,
            "sequences": {
                "sparse": {"points": [[0.5, 0.0], [0.0, 0.5], [2.0, 0.0], [0.0, 3.0]]}
            },
        },
    )


@pytest.fixture
def product_scene(tmp_path: Path) -> Path:
    """Scene with phi = |z|^2 + |z + w|^2 and Gamma = {0}."""
    return write_scene(
        tmp_path / "product.json",
        {
            "dimension": 2,
            "weight": {
                "kind": "quadratic",
                "Q": [[[2.0, 0.0], [1.0, 0.0]], [[1.0, 0.0], [1.0, 0.0]]],
            },
            "products": {"split": {"gamma": [[0.0, 0.0]], "lambdas": [[[0.0, 0.0], [1.0, 0.0]]]}},
        },
    )


@pytest.fixture
def clean_env(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> Path:
    """Environment without FOCKDENS_* overrides; returns the report directory."""
    for name in (
        "FOCKDENS_THREADS",
        "FOCKDENS_SEED",
        "FOCKDENS_BUDGET",
        "FOCKDENS_LEAK_TOLERANCE",
    ):
        monkeypatch.delenv(name, raising=False)
    out = tmp_path / "reports"
    monkeypatch.setenv("FOCKDENS_OUTPUT_DIR", str(out))
    return out
