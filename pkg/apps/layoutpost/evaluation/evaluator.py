"""
COCO-style mAP over a prediction set, per class and per document category
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

import numpy as np

from errors import PageMismatchError
from evaluation.doc_categories import resolve_page_categories
from evaluation.matching import match_page
from evaluation.metrics import average_precision
from models.categories import DocCategory, LayoutCategory
from models.evaluation import EvalConfig, MapReport
from models.sets import GroundTruthSet, PredictionSet

logger = logging.getLogger("Eval")


def doc_category_mean(per_doc: Mapping[str, float]) -> float:
    """Arithmetic mean of the document categories present (0 when none)"""
    if not per_doc:
        return 0.0
    return math.fsum(per_doc.values()) / len(per_doc)

# page -> category -> (gt count, [(scores, flags) per IoU threshold])
PageRecords = Dict[LayoutCategory, Tuple[int, List[Tuple[List[float], List[bool]]]]]


class MapEvaluator:
    """Pooled-over-pages average precision, the competition's scoring rule"""
    
    def evaluate(
        self,
        preds: PredictionSet,
        gt: GroundTruthSet,
        page_doc_categories: Optional[Mapping[str, DocCategory]] = None,
        cfg: Optional[EvalConfig] = None,
        jobs: int = 1,
    ) -> MapReport:
        """
        Score predictions against ground truth
        
        Args:
            preds: Detections (pages must exist in the ground truth)
            gt: Ground truth
            page_doc_categories: Document category per page; pages left out
                fall back to their original label, then to Others
            cfg: IoU thresholds, recall levels and detection cap
            jobs: Pages matched concurrently
        
        Returns:
            MapReport with values in [0, 1]
        """
        cfg = cfg or EvalConfig()
        unknown = [pid for pid in preds.detections if pid not in gt.pages]
        if unknown:
            raise PageMismatchError(f"predictions reference pages missing from ground truth: {unknown[:5]}")
        
        page_ids = list(gt.pages)
        if jobs > 1 and len(page_ids) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                records = dict(zip(page_ids, executor.map(lambda p: self._match(preds, gt, p, cfg), page_ids)))
        else:
            records = {pid: self._match(preds, gt, pid, cfg) for pid in page_ids}
        
        per_class_ap = self._pooled_ap(records, page_ids, cfg)
        per_class_map = {c.value: float(np.mean(aps)) for c, aps in per_class_ap.items()}
        overall = float(np.mean(list(per_class_map.values()))) if per_class_map else 0.0
        
        categories = resolve_page_categories(gt, page_doc_categories)
        per_doc: Dict[str, float] = {}
        doc_pages: Dict[str, int] = {}
        for doc_category in DocCategory:
            members = [pid for pid in page_ids if categories[pid] is doc_category]
            if not members:
                continue
            class_aps = self._pooled_ap(records, members, cfg)
            if not class_aps:
                logger.warning(f"{doc_category.value}: {len(members)} pages without ground truth, left out of the mean")
                continue
            per_doc[doc_category.value] = float(np.mean([np.mean(aps) for aps in class_aps.values()]))
            doc_pages[doc_category.value] = len(members)
        doc_mean = doc_category_mean(per_doc)
        
        return MapReport(
            iou_thresholds=list(cfg.iou_thresholds),
            per_class_ap={c.value: aps for c, aps in per_class_ap.items()},
            per_class_map=per_class_map,
            overall_map=overall,
            per_doc_category=per_doc,
            doc_category_pages=doc_pages,
            doc_category_mean=doc_mean,
        )
    
    @staticmethod
    def _match(preds: PredictionSet, gt: GroundTruthSet, page_id: str, cfg: EvalConfig) -> PageRecords:
        gts_by_class: Dict[LayoutCategory, list] = {}
        for box in gt.boxes_for(page_id):
            gts_by_class.setdefault(box.category, []).append(box.bbox)
        dets_by_class: Dict[LayoutCategory, list] = {}
        for det in preds.detections_for(page_id):
            dets_by_class.setdefault(det.category, []).append(det)
        
        records: PageRecords = {}
        for category in LayoutCategory:
            gts = gts_by_class.get(category, [])
            dets = dets_by_class.get(category, [])
            if not gts and not dets:
                continue
            if cfg.max_dets is not None and len(dets) > cfg.max_dets:
                dets = sorted(dets, key=lambda d: -d.score)[:cfg.max_dets]
            per_threshold = []
            for threshold in cfg.iou_thresholds:
                result = match_page(dets, gts, threshold)
                per_threshold.append((result.scores, result.flags))
            records[category] = (len(gts), per_threshold)
        return records
    
    @staticmethod
    def _pooled_ap(
        records: Mapping[str, PageRecords],
        page_ids: Iterable[str],
        cfg: EvalConfig,
    ) -> Dict[LayoutCategory, List[float]]:
        """AP per class and threshold over the given pages; classes without GT are dropped"""
        page_ids = list(page_ids)
        aps: Dict[LayoutCategory, List[float]] = {}
        for category in LayoutCategory:
            total_gt = sum(records[pid][category][0] for pid in page_ids if category in records[pid])
            if total_gt == 0:
                continue
            per_threshold = []
            for t in range(len(cfg.iou_thresholds)):
                pooled = []
                for page_pos, pid in enumerate(page_ids):
                    if category not in records[pid]:
                        continue
                    scores, flags = records[pid][category][1][t]
                    pooled.extend((-s, page_pos, rank, f) for rank, (s, f) in enumerate(zip(scores, flags)))
                pooled.sort()
                per_threshold.append(average_precision([f for *_, f in pooled], total_gt, cfg.recall_points))
            aps[category] = per_threshold
        return aps


# Global evaluator instance
map_evaluator = MapEvaluator()


def evaluate(
    preds: PredictionSet,
    gt: GroundTruthSet,
    page_doc_categories: Optional[Mapping[str, DocCategory]] = None,
    cfg: Optional[EvalConfig] = None,
    jobs: int = 1,
) -> MapReport:
    return map_evaluator.evaluate(preds, gt, page_doc_categories, cfg, jobs)
