"""
Pure functions on BBox values: area, overlap, containment, envelopes
"""
from typing import Iterable, NamedTuple

from models.box import BBox


class IouResult(NamedTuple):
    value: float
    degenerate: bool  # union area was zero; value is defined as 0


def area(b: BBox) -> float:
    """(right - left) * (bottom - top); zero for degenerate boxes"""
    return (b.right - b.left) * (b.bottom - b.top)


def intersection_area(a: BBox, b: BBox) -> float:
    w = min(a.right, b.right) - max(a.left, b.left)
    h = min(a.bottom, b.bottom) - max(a.top, b.top)
    if w <= 0 or h <= 0:
        return 0.0
    return w * h


def iou_checked(a: BBox, b: BBox) -> IouResult:
    """Intersection over union, flagging the zero-union case"""
    inter = intersection_area(a, b)
    union = area(a) + area(b) - inter
    if union <= 0:
        return IouResult(0.0, True)
    return IouResult(min(1.0, inter / union), False)


def iou(a: BBox, b: BBox) -> float:
    return iou_checked(a, b).value


def contains(outer: BBox, inner: BBox, tolerance: float = 0.0) -> bool:
    """True iff every inner edge lies inside outer or within `tolerance` of it"""
    if tolerance < 0:
        raise ValueError(f"tolerance must be non-negative, got {tolerance}")
    return (
        inner.left >= outer.left - tolerance
        and inner.top >= outer.top - tolerance
        and inner.right <= outer.right + tolerance
        and inner.bottom <= outer.bottom + tolerance
    )


def envelope(boxes: Iterable[BBox]) -> BBox:
    """Smallest box containing all inputs"""
    boxes = list(boxes)
    if not boxes:
        raise ValueError("envelope of an empty box list is undefined")
    return BBox.of(
        min(b.left for b in boxes),
        min(b.top for b in boxes),
        max(b.right for b in boxes),
        max(b.bottom for b in boxes),
    )


def expand(b: BBox, margin: float) -> BBox:
    return BBox.of(b.left - margin, b.top - margin, b.right + margin, b.bottom + margin)
