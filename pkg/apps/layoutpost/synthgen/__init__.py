"""
Synthetic layout generation package
"""
from .pool import PatchPool, build_pool, parse_patch_catalog
from .generator import generate_layout, generate_dataset
from .emitter import emit_dataset

__all__ = [
    "PatchPool",
    "build_pool",
    "parse_patch_catalog",
    "generate_layout",
    "generate_dataset",
    "emit_dataset",
]
