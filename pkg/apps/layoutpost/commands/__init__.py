"""
CLI subcommands
"""
from .refine import refine_command
from .fuse import fuse_command
from .evaluate import evaluate_command
from .tune import tune_command
from .synth import synth_command

__all__ = [
    "refine_command",
    "fuse_command",
    "evaluate_command",
    "tune_command",
    "synth_command",
]
