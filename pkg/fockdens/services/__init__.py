"""Services for fockdens."""

from fockdens.services.scene_loader import build_scene, dump_scene, parse_scene

__all__ = ["parse_scene", "build_scene", "dump_scene"]
