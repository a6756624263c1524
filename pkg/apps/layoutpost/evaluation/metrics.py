"""
Interpolated average precision
"""
from typing import Sequence

import numpy as np


def average_precision(flags: Sequence[bool], total_gt: int, recall_points: int = 101) -> float:
    """
    COCO interpolated AP
    
    Args:
        flags: TP/FP flags ordered by detection score, highest first
        total_gt: Number of ground truth boxes
        recall_points: Evenly spaced recall levels in [0, 1]
    
    Returns:
        Mean over recall levels r of the best precision reached at recall >= r;
        0 when there is no ground truth (callers drop such classes)
    """
    if total_gt <= 0:
        return 0.0
    hits = np.asarray(flags, dtype=bool)
    if hits.size == 0:
        return 0.0
    
    tp = np.cumsum(hits)
    fp = np.cumsum(~hits)
    recall = tp / total_gt
    precision = tp / (tp + fp)
    
    # Best precision at any recall at or beyond each position
    envelope = np.maximum.accumulate(precision[::-1])[::-1]
    levels = np.linspace(0.0, 1.0, recall_points)
    first = np.searchsorted(recall, levels, side="left")
    reached = first < recall.size
    interpolated = np.where(reached, envelope[np.minimum(first, recall.size - 1)], 0.0)
    return float(interpolated.mean())
