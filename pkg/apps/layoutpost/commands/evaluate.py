"""
`evaluate`: COCO mAP per class and per document category
"""
from pathlib import Path

import click

from commands.common import build_config, input_options, reports_errors
from errors import ConfigError
from evaluation import dump_reports
from models.evaluation import EvalConfig
from services.pipeline import pipeline_service
from storage.files import write_atomic


@click.command("evaluate")
@input_options
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help="Report JSON")
@click.option("--iou", "iou_thresholds", type=float, multiple=True,
              help="IoU threshold (repeatable; default 0.50:0.05:0.95)")
@click.option("--fused", is_flag=True, help="Score the refined and fused ensemble instead of each file")
@reports_errors
def evaluate_command(config_path, gt, preds, cells, scales, probs, jobs, order, out, iou_thresholds, fused):
    """Score prediction files against ground truth"""
    cfg = build_config(config_path, gt, preds, cells, scales, probs, order)
    if cfg.gt is None or not cfg.preds:
        raise ConfigError("evaluate needs --gt and at least one --preds file")
    if iou_thresholds:
        cfg = cfg.model_copy(update={
            "evaluation": EvalConfig(**{**cfg.evaluation.model_dump(), "iou_thresholds": sorted(iou_thresholds)})
        })
    
    inputs = pipeline_service.load_inputs(cfg)
    targets = [pipeline_service.process(inputs, cfg, jobs=jobs)] if fused else inputs.preds
    reports = {}
    for target in targets:
        report = pipeline_service.evaluate(target, inputs, cfg, jobs)
        reports[target.model_id] = report
        click.echo(f"== {target.model_id} ==")
        click.echo(report.to_table())
    
    if out is not None:
        write_atomic(out, dump_reports(reports))
