"""
`fuse`: combine several models' predictions
"""
from pathlib import Path

import click

from commands.common import build_config, input_options, reports_errors
from errors import ConfigError
from ingestion import dump_predictions
from models.fusion import FusionConfig
from services.pipeline import pipeline_service
from storage.files import write_atomic


def _parse_weights(raw: str):
    try:
        return [float(w) for w in raw.split(",")]
    except ValueError:
        raise ConfigError(f"--weights must be comma-separated numbers, got {raw!r}") from None


@click.command("fuse")
@input_options
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), required=True, help="Fused COCO results file")
@click.option("--method", type=click.Choice(["wbf", "nms"]), default="wbf", show_default=True)
@click.option("--iou-threshold", type=float, default=None, help="Fusion IoU threshold")
@click.option("--weights", default=None, help="Comma-separated model weights, in --preds order")
@reports_errors
def fuse_command(config_path, gt, preds, cells, scales, probs, jobs, order, out, method, iou_threshold, weights):
    """Fuse prediction files (refining first or after when --cells is given)"""
    cfg = build_config(config_path, gt, preds, cells, scales, probs, order)
    if not cfg.preds:
        raise ConfigError("fuse needs at least one --preds file")
    
    overrides = {}
    if iou_threshold is not None:
        overrides["iou_threshold"] = iou_threshold
    if weights is not None:
        overrides["weights"] = _parse_weights(weights)
    fusion = FusionConfig(**{**cfg.fusion.model_dump(), **overrides})
    
    inputs = pipeline_service.load_inputs(cfg)
    fused = pipeline_service.process(inputs, cfg, fusion, method, jobs)
    categories = inputs.gt.categories if inputs.gt is not None else None
    write_atomic(out, dump_predictions(fused, categories))
    click.echo(f"{fused.model_id}: {fused.count()} detections on {len(fused.detections)} pages -> {out}")
