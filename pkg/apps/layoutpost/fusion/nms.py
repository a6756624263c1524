"""
Greedy non-maximum suppression, the contrast baseline for box fusion
"""
from typing import Dict, List, Sequence

from geometry import iou
from models.categories import LayoutCategory
from models.detection import Detection
from models.sets import PredictionSet


def nms_page(detections: Sequence[Detection], iou_threshold: float) -> List[Detection]:
    """
    Per category, keep the highest-scored box and drop every box overlapping a
    kept one by more than `iou_threshold`
    """
    order = sorted(range(len(detections)), key=lambda i: (-detections[i].score, i))
    kept: Dict[LayoutCategory, List[Detection]] = {}
    survivors: List[Detection] = []
    for i in order:
        det = detections[i]
        same_class = kept.setdefault(det.category, [])
        if all(iou(k.bbox, det.bbox) <= iou_threshold for k in same_class):
            same_class.append(det)
            survivors.append(det)
    return survivors


def nms_set(sets: Sequence[PredictionSet], iou_threshold: float) -> PredictionSet:
    """Pool all models' detections per page and suppress"""
    pooled: Dict[str, List[Detection]] = {}
    for s in sets:
        for page_id, dets in s.detections.items():
            pooled.setdefault(page_id, []).extend(dets)
    model_id = "nms(" + "+".join(s.model_id for s in sets) + ")"
    return PredictionSet(
        model_id=model_id,
        detections={pid: nms_page(dets, iou_threshold) for pid, dets in pooled.items()},
    )
