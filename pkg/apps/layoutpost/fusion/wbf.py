"""
Weighted Boxes Fusion of per-model detections

Per category, detections are taken in order of effective score
(score * model weight) and merged into the first cluster whose running fused
box overlaps them by more than the IoU threshold. A cluster's box is the
score-weighted mean of its members; its score is the mean effective score,
optionally multiplied by min(N, T) / T where T is the sum of model weights.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Mapping, Optional, Sequence

from errors import PageMismatchError
from geometry import iou
from models.box import BBox
from models.categories import DocCategory, LayoutCategory
from models.detection import Detection
from models.fusion import FusionConfig
from models.sets import PredictionSet

logger = logging.getLogger("Fusion")


class Cluster:
    """Same-category detections merged into one running fused box"""
    
    __slots__ = ("category", "members", "_sums", "_total", "fused")
    
    def __init__(self, category: LayoutCategory, model_index: int, detection: Detection, score: float):
        self.category = category
        self.members: List[tuple] = []
        self._sums = [0.0, 0.0, 0.0, 0.0]
        self._total = 0.0
        self.fused: BBox = detection.bbox
        self.add(model_index, detection, score)
    
    def add(self, model_index: int, detection: Detection, score: float) -> None:
        if detection.category is not self.category:
            raise ValueError("cluster members must share one category")
        self.members.append((model_index, detection, score))
        b = detection.bbox
        for k, coord in enumerate((b.left, b.top, b.right, b.bottom)):
            self._sums[k] += score * coord
        self._total += score
        if len(self.members) == 1:
            self.fused = b
        else:
            left, top, right, bottom = (s / self._total for s in self._sums)
            # Guard against rounding past an edge of the member span
            self.fused = BBox.of(left, top, max(left, right), max(top, bottom))
    
    @property
    def size(self) -> int:
        return len(self.members)
    
    @property
    def score_sum(self) -> float:
        return self._total


def _page_of(per_model: Sequence[Sequence[Detection]]) -> Optional[str]:
    page_ids = {d.page_id for dets in per_model for d in dets}
    if len(page_ids) > 1:
        raise PageMismatchError(f"wbf_page got detections from several pages: {sorted(page_ids)}")
    return next(iter(page_ids), None)


def build_clusters(per_model: Sequence[Sequence[Detection]], cfg: FusionConfig) -> List[Cluster]:
    """Greedy first-fit clustering of one page's detections, category by category"""
    weights = cfg.weights_for(len(per_model))
    
    by_category: Dict[LayoutCategory, list] = {}
    for m, dets in enumerate(per_model):
        if weights[m] == 0:
            continue
        for k, det in enumerate(dets):
            score = det.score * weights[m]
            if score <= cfg.skip_threshold:
                continue
            by_category.setdefault(det.category, []).append((score, m, k, det))
    
    clusters: List[Cluster] = []
    for category, entries in by_category.items():
        entries.sort(key=lambda e: (-e[0], e[1], e[2]))
        open_clusters: List[Cluster] = []
        for score, m, _, det in entries:
            for cluster in open_clusters:
                if iou(cluster.fused, det.bbox) > cfg.iou_threshold:
                    cluster.add(m, det, score)
                    break
            else:
                open_clusters.append(Cluster(category, m, det, score))
        clusters.extend(open_clusters)
    return clusters


def wbf_page(per_model: Sequence[Sequence[Detection]], cfg: FusionConfig) -> List[Detection]:
    """
    Fuse the detections several models made on one page
    
    Args:
        per_model: One detection list per model, in weight order
        cfg: Fusion parameters
    
    Returns:
        Fused detections sorted by score (highest first)
    """
    total_weight = sum(cfg.weights_for(len(per_model)))
    page_id = _page_of(per_model)
    if page_id is None:
        return []
    
    fused: List[Detection] = []
    for cluster in build_clusters(per_model, cfg):
        n = cluster.size
        score = cluster.score_sum / n
        if cfg.score_rescale:
            score *= min(n, total_weight) / total_weight
        fused.append(Detection(
            page_id=page_id,
            bbox=cluster.fused,
            category=cluster.category,
            score=min(1.0, max(0.0, score)),
        ))
    
    fused.sort(key=lambda d: -d.score)
    return fused


def _page_universe(sets: Sequence[PredictionSet]) -> List[str]:
    seen: Dict[str, None] = {}
    for s in sets:
        for page_id in s.detections:
            seen.setdefault(page_id, None)
    return list(seen)


def fuse_sets(sets: Sequence[PredictionSet], cfg: FusionConfig, jobs: int = 1) -> PredictionSet:
    """Fuse whole prediction sets page by page; missing pages count as empty"""
    cfg.weights_for(len(sets))
    return _fuse(sets, lambda page_id: cfg, jobs)


def fuse_sets_by_category(
    sets: Sequence[PredictionSet],
    default: FusionConfig,
    by_category: Mapping[DocCategory, FusionConfig],
    page_categories: Mapping[str, DocCategory],
    jobs: int = 1,
) -> PredictionSet:
    """Fuse with a separate config per document category (default where none is set)"""
    for cfg in (default, *by_category.values()):
        cfg.weights_for(len(sets))
    
    def config_for(page_id: str) -> FusionConfig:
        category = page_categories.get(page_id)
        return by_category.get(category, default)
    
    return _fuse(sets, config_for, jobs)


def _fuse(sets: Sequence[PredictionSet], config_for, jobs: int) -> PredictionSet:
    pages = _page_universe(sets)
    
    def run(page_id: str) -> List[Detection]:
        return wbf_page([s.detections_for(page_id) for s in sets], config_for(page_id))
    
    if jobs > 1 and len(pages) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(run, pages))
    else:
        results = [run(p) for p in pages]
    
    model_id = "wbf(" + "+".join(s.model_id for s in sets) + ")"
    fused = PredictionSet(model_id=model_id, detections=dict(zip(pages, results)))
    logger.debug(f"Fused {sum(s.count() for s in sets)} detections into {fused.count()}")
    return fused
