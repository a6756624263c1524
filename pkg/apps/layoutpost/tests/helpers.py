"""
Builders for test fixtures
"""
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.box import BBox, TextCell
from models.categories import LayoutCategory
from models.detection import Detection
from models.sets import GroundTruthBox, GroundTruthSet, Page, PredictionSet

TEXT = LayoutCategory.TEXT


def box(coords: Sequence[float]) -> BBox:
    return BBox.from_ltrb(coords)


def det(coords, score=0.9, category=TEXT, page_id="1") -> Detection:
    return Detection(page_id=page_id, bbox=box(coords), category=category, score=score)


def cell(coords, text: Optional[str] = None) -> TextCell:
    return TextCell(bbox=box(coords), text=text)


def gt_set(
    pages: Dict[str, List[Tuple[Sequence[float], LayoutCategory]]],
    size: Tuple[float, float] = (1025, 1025),
    labels: Optional[Dict[str, str]] = None,
) -> GroundTruthSet:
    labels = labels or {}
    return GroundTruthSet(
        pages={
            pid: Page(page_id=pid, width=size[0], height=size[1], doc_label=labels.get(pid))
            for pid in pages
        },
        annotations={
            pid: [GroundTruthBox(bbox=box(c), category=cat, annotation_id=None) for c, cat in boxes]
            for pid, boxes in pages.items()
        },
    )


def perfect_predictions(gt: GroundTruthSet, model_id: str = "perfect", score: float = 1.0) -> PredictionSet:
    return PredictionSet(
        model_id=model_id,
        detections={
            pid: [Detection(page_id=pid, bbox=b.bbox, category=b.category, score=score) for b in boxes]
            for pid, boxes in gt.annotations.items()
        },
    )


def random_box(rng: np.random.Generator, extent: float = 100.0, max_size: float = 40.0) -> BBox:
    left, top = rng.uniform(0, extent, size=2)
    w, h = rng.uniform(0, max_size, size=2)
    return BBox.of(left, top, left + w, top + h)


def random_int_box(rng: np.random.Generator, extent: int = 20) -> BBox:
    x = np.sort(rng.integers(0, extent + 1, size=2))
    y = np.sort(rng.integers(0, extent + 1, size=2))
    return BBox.of(float(x[0]), float(y[0]), float(x[1]), float(y[1]))
