"""
`tune`: search ensemble weights and the fusion IoU threshold
"""
from pathlib import Path

import click

from commands.common import build_config, input_options, reports_errors
from errors import ConfigError
from services.pipeline import pipeline_service


@click.command("tune")
@input_options
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True,
              help="Directory for the trial history and best config")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Total trials (resumed ones included)")
@click.option("--seed", type=int, default=None)
@click.option("--method", type=click.Choice(["tpe", "random"]), default="tpe", show_default=True)
@click.option("--per-category", is_flag=True, help="Separate search per document category")
@reports_errors
def tune_command(config_path, gt, preds, cells, scales, probs, jobs, order, out, budget, seed, method, per_category):
    """Maximize the mean per-document-category mAP of the fused ensemble"""
    cfg = build_config(config_path, gt, preds, cells, scales, probs, order)
    if cfg.gt is None or not cfg.preds:
        raise ConfigError("tune needs --gt and at least one --preds file")
    
    tpe_updates = {}
    # --jobs only overrides a config file parallelism when given
    if click.get_current_context().get_parameter_source("jobs") is not click.core.ParameterSource.DEFAULT:
        tpe_updates["parallelism"] = jobs
    if budget is not None:
        tpe_updates["budget"] = budget
    if seed is not None:
        tpe_updates["seed"] = seed
    cfg = cfg.model_copy(update={"tpe": cfg.tpe.model_copy(update=tpe_updates)})
    
    inputs = pipeline_service.load_inputs(cfg)
    results = pipeline_service.tune(inputs, cfg, out, method=method, per_category=per_category)
    for result in results:
        click.echo(
            f"{result.label}: objective {100 * result.objective:.1f} after {result.trials} trials, "
            f"weights {result.point.weights}, iou_threshold {result.point.iou_threshold:.2f}"
        )
