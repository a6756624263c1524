"""
Box arithmetic shared by every pipeline stage
"""
from .boxes import area, contains, envelope, expand, intersection_area, iou, iou_checked, IouResult

__all__ = [
    "area",
    "contains",
    "envelope",
    "expand",
    "intersection_area",
    "iou",
    "iou_checked",
    "IouResult",
]
