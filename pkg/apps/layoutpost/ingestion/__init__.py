"""
Ingestion package: COCO ground truth, COCO results, text cells, scale table
"""
from .coco import parse_ground_truth, parse_predictions, dump_ground_truth, dump_predictions
from .cells import parse_cells, dump_cells
from .scales import (
    rescale_boxes,
    rescale_cells,
    parse_scales,
    resolve_page_keys,
    attach_scales,
    restore_cell_scale,
)

__all__ = [
    "parse_ground_truth",
    "parse_predictions",
    "dump_ground_truth",
    "dump_predictions",
    "parse_cells",
    "dump_cells",
    "rescale_boxes",
    "rescale_cells",
    "parse_scales",
    "resolve_page_keys",
    "attach_scales",
    "restore_cell_scale",
]
