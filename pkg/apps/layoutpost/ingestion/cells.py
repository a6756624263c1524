"""
Text-cell files: {page_id: [{bbox: [l, t, r, b], text}, ...]}
"""
import logging
from typing import Dict, List, Union

from pydantic import ValidationError

from errors import ParseError
from ingestion._json import dump_json, load_json
from models.box import BBox, TextCell
from models.sets import CellSet

logger = logging.getLogger("Ingest")


def parse_cells(data: Union[bytes, str]) -> CellSet:
    """Parse a cell file; boxes are corner-encoded"""
    doc = load_json(data, "cells")
    if not isinstance(doc, dict):
        raise ParseError("cells must be a JSON object keyed by page id")
    
    cells: Dict[str, List[TextCell]] = {}
    for page_id, entries in doc.items():
        if not isinstance(entries, list):
            raise ParseError("cell list expected", ref=f"page {page_id}")
        page_cells = []
        for i, entry in enumerate(entries):
            ref = f"page {page_id} cell {i}"
            try:
                page_cells.append(TextCell(bbox=BBox.from_ltrb(entry["bbox"]), text=entry.get("text")))
            except (KeyError, TypeError, AttributeError, ValueError, ValidationError) as e:
                raise ParseError(f"bad cell: {e}", ref=ref) from None
        cells[str(page_id)] = page_cells
    
    logger.info(f"Parsed cells: {sum(len(c) for c in cells.values())} cells on {len(cells)} pages")
    return CellSet(cells=cells)


def dump_cells(cell_set: CellSet) -> bytes:
    return dump_json({
        page_id: [{"bbox": c.bbox.to_ltrb(), "text": c.text} for c in page_cells]
        for page_id, page_cells in cell_set.cells.items()
    })
