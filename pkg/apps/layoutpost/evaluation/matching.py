"""
Greedy COCO-style matching of detections to ground truth on one page
"""
from typing import List, NamedTuple, Sequence

from geometry import iou
from models.box import BBox
from models.detection import Detection


class MatchResult(NamedTuple):
    scores: List[float]   # detection scores, highest first
    flags: List[bool]     # True = true positive, aligned with `scores`
    unmatched_gt: int


def match_page(
    detections: Sequence[Detection],
    gts: Sequence[BBox],
    iou_threshold: float,
) -> MatchResult:
    """
    Match one page/category: each detection, best score first, takes the
    unmatched ground truth box it overlaps most if that IoU reaches the
    threshold. IoU ties go to the earlier ground truth box.
    """
    order = sorted(range(len(detections)), key=lambda i: (-detections[i].score, i))
    taken = [False] * len(gts)
    scores: List[float] = []
    flags: List[bool] = []
    
    for i in order:
        det = detections[i]
        best, best_iou = -1, -1.0
        for j, gt in enumerate(gts):
            if taken[j]:
                continue
            overlap = iou(det.bbox, gt)
            if overlap >= iou_threshold and overlap > best_iou:
                best, best_iou = j, overlap
        if best >= 0:
            taken[best] = True
        scores.append(det.score)
        flags.append(best >= 0)
    
    return MatchResult(scores=scores, flags=flags, unmatched_gt=taken.count(False))
