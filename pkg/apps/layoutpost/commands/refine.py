"""
`refine`: snap detections onto text cells
"""
from pathlib import Path

import click

from commands.common import build_config, input_options, reports_errors
from errors import ConfigError
from ingestion import dump_predictions
from models.refinement import RefineConfig
from refinement import cell_matcher
from services.pipeline import pipeline_service
from storage.files import write_atomic


@click.command("refine")
@input_options
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True,
              help="Directory for <model>.refined.json and <model>.audit.json")
@click.option("--epsilon", type=float, default=None, help="Edge tolerance at the reference page size")
@reports_errors
def refine_command(config_path, gt, preds, cells, scales, probs, jobs, order, out, epsilon):
    """Refine each prediction file against the page text cells"""
    cfg = build_config(config_path, gt, preds, cells, scales, probs, order)
    if epsilon is not None:
        cfg = cfg.model_copy(update={
            "refine": RefineConfig(epsilon=epsilon, exempt_categories=cfg.refine.exempt_categories)
        })
    if not cfg.preds:
        raise ConfigError("refine needs at least one --preds file")
    if cfg.cells is None:
        raise ConfigError("refine needs --cells")
    
    inputs = pipeline_service.load_inputs(cfg)
    categories = inputs.gt.categories if inputs.gt is not None else None
    for preds_set in inputs.preds:
        refined, outcomes = pipeline_service.refine(preds_set, inputs, cfg, jobs)
        write_atomic(out / f"{preds_set.model_id}.refined.json", dump_predictions(refined, categories))
        write_atomic(out / f"{preds_set.model_id}.audit.json", pipeline_service.refine_audit(preds_set, outcomes))
        counts = cell_matcher.summarize(outcomes)
        click.echo(f"{preds_set.model_id}: " + ", ".join(f"{k}={v}" for k, v in counts.items()))
