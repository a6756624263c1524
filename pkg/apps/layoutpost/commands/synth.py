"""
`synth`: generate synthetic layout annotations
"""
from pathlib import Path

import click

from commands.common import reports_errors
from services.pipeline import pipeline_service
from storage.files import read_bytes, write_atomic
from synthgen import build_pool, emit_dataset, generate_dataset, parse_patch_catalog


@click.command("synth")
@click.option("--catalog", type=click.Path(dir_okay=False, path_type=Path), required=True,
              help="Patch catalog JSON")
@click.option("--count", type=click.IntRange(min=0), default=10, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="JSON run config (its `synth` section)")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True,
              help="Directory for annotations.json and manifest.json")
@reports_errors
def synth_command(catalog, count, seed, config_path, out):
    """Compose pages column by column from a catalog of cropped elements"""
    cfg = pipeline_service.load_config(config_path).synth
    if seed is not None:
        cfg = cfg.model_copy(update={"seed": seed})
    
    pool = build_pool(parse_patch_catalog(read_bytes(catalog)))
    layouts = generate_dataset(pool, cfg, count)
    coco, manifest = emit_dataset(layouts)
    write_atomic(out / "annotations.json", coco)
    write_atomic(out / "manifest.json", manifest)
    placements = sum(len(layout.placements) for layout in layouts)
    click.echo(f"{count} pages, {placements} placements -> {out}")
