"""
Scale side-table and the page-proportion restoration transform
"""
from pathlib import PurePath
from typing import Dict, List, Mapping, Sequence, Tuple, TypeVar, Union

from pydantic import ValidationError

from errors import ParseError
from ingestion._json import load_json
from models.box import BBox, TextCell
from models.sets import CellSet, GroundTruthSet, ScaleInfo

T = TypeVar("T")


def rescale_boxes(
    boxes: Sequence[BBox],
    from_size: Tuple[float, float],
    to_size: Tuple[float, float],
) -> List[BBox]:
    """
    Map boxes from a `from_size` page to a `to_size` page
    
    x' = x * to.width / from.width, y' = y * to.height / from.height
    """
    dims = (*from_size, *to_size)
    if any(not d > 0 for d in dims):
        raise ValueError(f"page dimensions must be positive, got from={from_size} to={to_size}")
    if tuple(from_size) == tuple(to_size):
        return list(boxes)
    sx = to_size[0] / from_size[0]
    sy = to_size[1] / from_size[1]
    return [BBox.of(b.left * sx, b.top * sy, b.right * sx, b.bottom * sy) for b in boxes]


def rescale_cells(
    cells: Sequence[TextCell],
    from_size: Tuple[float, float],
    to_size: Tuple[float, float],
) -> List[TextCell]:
    boxes = rescale_boxes([c.bbox for c in cells], from_size, to_size)
    return [c.model_copy(update={"bbox": b}) for c, b in zip(cells, boxes)]


def parse_scales(data: Union[bytes, str]) -> Dict[str, ScaleInfo]:
    """Parse {page_id: {orig_width, orig_height}}"""
    doc = load_json(data, "scale table")
    if not isinstance(doc, dict):
        raise ParseError("scale table must be a JSON object keyed by page id")
    scales = {}
    for page_id, entry in doc.items():
        try:
            scales[str(page_id)] = ScaleInfo.model_validate(entry)
        except ValidationError as e:
            raise ParseError(f"bad scale entry: {e.errors()[0]['msg']}", ref=f"page {page_id}") from None
    return scales


def resolve_page_keys(mapping: Mapping[str, T], gt: GroundTruthSet) -> Dict[str, T]:
    """Re-key a side-table whose keys may be image file names (with or without extension)"""
    by_name: Dict[str, str] = {}
    for page in gt.pages.values():
        if page.file_name:
            by_name[page.file_name] = page.page_id
            by_name[PurePath(page.file_name).stem] = page.page_id
    resolved = {}
    for key, value in mapping.items():
        if key in gt.pages:
            resolved[key] = value
        else:
            resolved[by_name.get(key, key)] = value
    return resolved


def attach_scales(gt: GroundTruthSet, scales: Mapping[str, ScaleInfo]) -> GroundTruthSet:
    scales = resolve_page_keys(scales, gt)
    pages = {
        pid: page.model_copy(update={"scale_info": scales[pid]}) if pid in scales else page
        for pid, page in gt.pages.items()
    }
    return gt.model_copy(update={"pages": pages})


def restore_cell_scale(cells: CellSet, gt: GroundTruthSet) -> CellSet:
    """Bring cells quoted in original page units onto the page raster"""
    restored = {}
    for page_id, page_cells in cells.cells.items():
        page = gt.pages.get(page_id)
        if page is None or page.scale_info is None:
            restored[page_id] = page_cells
            continue
        info = page.scale_info
        restored[page_id] = rescale_cells(
            page_cells, (info.orig_width, info.orig_height), (page.width, page.height)
        )
    return CellSet(cells=restored)
