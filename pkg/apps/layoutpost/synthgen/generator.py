"""
Column-by-column page composition

The content area (page minus margins) holds, top to bottom: an optional
page header, an optional title, the columns, an optional footnote and an
optional page footer. Every coordinate is an integer pixel so emitted COCO
boxes round-trip exactly.
"""
import logging
from typing import List, Optional, Tuple

import numpy as np

from errors import ConfigError
from models.box import BBox
from models.categories import LayoutCategory
from models.layout import LayoutSpec, PatchRecord, Placement, SynthConfig
from synthgen.pool import PatchPool

logger = logging.getLogger("Synth")

# Tallest band (fraction of content height) for full-width optional elements
_BAND_FRACTION = {
    LayoutCategory.PAGE_HEADER: 0.08,
    LayoutCategory.TITLE: 0.15,
    LayoutCategory.FOOTNOTE: 0.15,
    LayoutCategory.PAGE_FOOTER: 0.08,
}
_TOP_ELEMENTS = (LayoutCategory.PAGE_HEADER, LayoutCategory.TITLE)
_BOTTOM_ELEMENTS = (LayoutCategory.PAGE_FOOTER, LayoutCategory.FOOTNOTE)


def _fit(patch: PatchRecord, max_width: int, max_height: int) -> Tuple[int, int]:
    """Uniform scale of a patch into a max_width x max_height box (at least 1x1)"""
    scale = min(max_width / patch.width, max_height / patch.height)
    return max(1, int(patch.width * scale)), max(1, int(patch.height * scale))


def _draw(records, rng: np.random.Generator) -> PatchRecord:
    return records[int(rng.integers(len(records)))]


def _column_bounds(left: int, width: int, n_columns: int, gap: int) -> List[Tuple[int, int]]:
    col_width = (width - gap * (n_columns - 1)) // n_columns
    if col_width < 1:
        raise ConfigError(f"{n_columns} columns with gap {gap} do not fit in {width}px")
    return [(left + i * (col_width + gap), left + i * (col_width + gap) + col_width) for i in range(n_columns)]


def generate_layout(
    pool: PatchPool,
    cfg: SynthConfig,
    rng: np.random.Generator,
    page_id: str = "1",
) -> LayoutSpec:
    """
    Compose one synthetic page
    
    Args:
        pool: Patch records to draw from (with replacement)
        cfg: Page size, column range, optional-element probabilities, spacing
        rng: Source of all randomness
        page_id: Identifier stored on the layout
    
    Returns:
        LayoutSpec with non-overlapping, in-bounds placements
    """
    left, right = cfg.margin, cfg.page_width - cfg.margin
    top, bottom = cfg.margin, cfg.page_height - cfg.margin
    if right <= left or bottom <= top:
        raise ConfigError(f"margin {cfg.margin} leaves no content area on a {cfg.page_width}x{cfg.page_height} page")
    if not pool.body_records:
        raise ConfigError("patch pool has no body-category patches")
    content_w, content_h = right - left, bottom - top
    
    low, high = cfg.column_range
    n_columns = int(rng.integers(low, high + 1))
    columns = _column_bounds(left, content_w, n_columns, cfg.gap)
    
    # Each optional element gets its own draw whether or not the pool holds it
    wanted = {c: rng.random() < cfg.optional_probs.get(c, 0.0) for c in _TOP_ELEMENTS + _BOTTOM_ELEMENTS}
    
    placements: List[Placement] = []
    
    def band(category: LayoutCategory) -> Optional[Tuple[PatchRecord, int, int]]:
        records = pool.records(category)
        if not wanted[category] or not records:
            return None
        patch = _draw(records, rng)
        w, h = _fit(patch, content_w, max(1, int(content_h * _BAND_FRACTION[category])))
        # Keep at least a pixel of column area
        if h + cfg.gap >= area_bottom - area_top:
            return None
        return patch, w, h
    
    area_top, area_bottom = top, bottom
    for category in _TOP_ELEMENTS:
        fitted = band(category)
        if fitted is None:
            continue
        patch, w, h = fitted
        x = left + (content_w - w) // 2 if category is LayoutCategory.TITLE else left
        placements.append(Placement(patch=patch, bbox=BBox.of(x, area_top, x + w, area_top + h), category=category))
        area_top += h + cfg.gap
    
    for category in _BOTTOM_ELEMENTS:
        fitted = band(category)
        if fitted is None:
            continue
        patch, w, h = fitted
        placements.append(Placement(patch=patch, bbox=BBox.of(left, area_bottom - h, left + w, area_bottom), category=category))
        area_bottom -= h + cfg.gap
    
    for col_left, col_right in columns:
        col_w = col_right - col_left
        y = area_top
        while True:
            patch = _draw(pool.body_records, rng)
            h = max(1, int(round(patch.height * col_w / patch.width)))
            if y + h > area_bottom:
                break
            placements.append(Placement(patch=patch, bbox=BBox.of(col_left, y, col_right, y + h), category=patch.category))
            y += h + cfg.gap
    
    return LayoutSpec(
        page_id=page_id,
        width=cfg.page_width,
        height=cfg.page_height,
        placements=placements,
        columns=columns,
    )


def generate_dataset(pool: PatchPool, cfg: SynthConfig, count: int) -> List[LayoutSpec]:
    """`count` layouts from one generator seeded with cfg.seed, page ids '1'..'count'"""
    rng = np.random.default_rng(cfg.seed)
    layouts = [generate_layout(pool, cfg, rng, page_id=str(i + 1)) for i in range(count)]
    logger.info(f"Generated {count} layouts, {sum(len(l.placements) for l in layouts)} placements")
    return layouts
