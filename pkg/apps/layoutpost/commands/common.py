"""
Options and error handling shared by the subcommands
"""
import functools
from pathlib import Path
from typing import Optional, Sequence

import click

from config import settings
from models.pipeline import PipelineConfig, StageOrder
from services.pipeline import pipeline_service

_FILE = click.Path(dir_okay=False, path_type=Path)


def input_options(command):
    """--config, --gt, --preds, --cells, --scales, --probs, --jobs, --order"""
    options = [
        click.option("--config", "config_path", type=_FILE, default=None, help="JSON run config"),
        click.option("--gt", type=_FILE, default=None, help="COCO ground truth"),
        click.option("--preds", type=_FILE, multiple=True, help="COCO results file, one per model (repeatable)"),
        click.option("--cells", type=_FILE, default=None, help="Text cells JSON"),
        click.option("--scales", type=_FILE, default=None, help="Original page sizes JSON"),
        click.option("--probs", type=_FILE, default=None, help="Document-category probabilities JSON"),
        click.option("--jobs", type=click.IntRange(min=1), default=settings.DEFAULT_JOBS, show_default=True),
        click.option("--order", type=click.Choice([o.value for o in StageOrder]), default=None,
                     help="Stage order (default from config: refine-then-fuse)"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def reports_errors(command):
    """Turn input and config failures into `Error: ...` with exit status 1"""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except (ValueError, OSError) as e:
            raise click.ClickException(str(e)) from e
    return wrapper


def build_config(
    config_path: Optional[Path],
    gt: Optional[Path] = None,
    preds: Sequence[Path] = (),
    cells: Optional[Path] = None,
    scales: Optional[Path] = None,
    probs: Optional[Path] = None,
    order: Optional[str] = None,
) -> PipelineConfig:
    """Config file values with command-line flags taking precedence"""
    cfg = pipeline_service.load_config(config_path)
    updates = {
        "gt": gt,
        "cells": cells,
        "scales": scales,
        "probs": probs,
        "order": StageOrder(order) if order else None,
        "preds": list(preds) if preds else None,
    }
    return cfg.model_copy(update={k: v for k, v in updates.items() if v is not None})
