"""
Bounding-box refinement by text-cell matching

Each detection is classified by how many of its four edges lie within
epsilon of the same-side edge of a neighbouring text cell:

    0-1 close edges   left alone
    2 close edges     replaced by the closest cell when the two free edges sit
                      inside the matched cells, otherwise the matched cells
                      become snapping candidates (both outside) or nothing
                      happens (mixed)
    3 close edges     replaced by a matched cell that holds the detection,
                      or candidates when the detection holds the matched cells
    4 close edges     replaced by the envelope of the matched cells

A detection left untouched with candidates gets each edge snapped to the
nearest candidate edge within snap_radius.
"""
import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple

from errors import PageMismatchError
from geometry import contains, envelope, expand, intersection_area
from models.box import BBox, TextCell
from models.detection import Detection
from models.refinement import (
    EDGES,
    EdgeMatch,
    EdgeMatchReport,
    RefineConfig,
    RefinementAction,
    RefinementOutcome,
)
from models.sets import CellSet, GroundTruthSet, PredictionSet

logger = logging.getLogger("Refine")

_INSIDE = {
    "left": lambda box, env: box.left >= env.left,
    "top": lambda box, env: box.top >= env.top,
    "right": lambda box, env: box.right <= env.right,
    "bottom": lambda box, env: box.bottom <= env.bottom,
}


def _edge_l1(a: BBox, b: BBox) -> float:
    return sum(abs(getattr(a, e) - getattr(b, e)) for e in EDGES)


def _max_shift(a: BBox, b: BBox) -> float:
    return max(abs(getattr(a, e) - getattr(b, e)) for e in EDGES)


class CellMatcher:
    """Snap detected layout boxes onto text-cell geometry"""

    def classify_edges(
        self,
        detection: Detection,
        cells: Sequence[TextCell],
        cfg: RefineConfig,
    ) -> EdgeMatchReport:
        """
        Find the cells each detection edge is close to

        Only cells overlapping the detection grown by epsilon take part, so a
        distant cell sharing a coordinate by coincidence never matches.
        """
        box = detection.bbox
        region = expand(box, cfg.epsilon)
        neighbors = [i for i, c in enumerate(cells) if intersection_area(region, c.bbox) > 0]

        edges: Dict[str, EdgeMatch] = {}
        for edge in EDGES:
            coord = getattr(box, edge)
            gaps = [(abs(getattr(cells[i].bbox, edge) - coord), i) for i in neighbors]
            matched = [i for gap, i in gaps if gap <= cfg.epsilon]
            edges[edge] = EdgeMatch(
                close=bool(matched),
                cells=matched,
                distance=min(g for g, _ in gaps) if gaps else None,
            )
        return EdgeMatchReport(edges=edges, neighbor_cells=neighbors)

    def refine_detection(
        self,
        detection: Detection,
        cells: Sequence[TextCell],
        cfg: RefineConfig,
    ) -> RefinementOutcome:
        """
        Refine one detection against the text cells of its page

        A changed box is kept only when it moves no edge further than the
        locality radius and is itself left unchanged by another pass.
        Score and category are never touched.
        """
        if detection.category in cfg.exempt_categories:
            return RefinementOutcome(detection=detection)

        proposed, action, candidates, n_close = self._propose(detection, cells, cfg)
        unchanged = RefinementOutcome(detection=detection, candidates=candidates, close_edges=n_close)
        if action is RefinementAction.UNCHANGED or proposed == detection.bbox:
            return unchanged

        if _max_shift(proposed, detection.bbox) > cfg.locality_radius:
            logger.debug(f"Rejected {action.value} on page {detection.page_id}: moves beyond locality radius")
            return unchanged

        settled, _, _, _ = self._propose(detection.with_bbox(proposed), cells, cfg)
        if settled != proposed:
            logger.debug(f"Rejected {action.value} on page {detection.page_id}: result not stable")
            return unchanged

        return RefinementOutcome(
            detection=detection.with_bbox(proposed),
            action=action,
            candidates=candidates,
            close_edges=n_close,
        )

    def refine_page(
        self,
        detections: Sequence[Detection],
        cells: Sequence[TextCell],
        cfg: RefineConfig,
    ) -> Tuple[List[Detection], List[RefinementOutcome]]:
        """Refine every detection of one page independently, preserving order"""
        page_ids = {d.page_id for d in detections}
        if len(page_ids) > 1:
            raise PageMismatchError(f"refine_page got detections from several pages: {sorted(page_ids)}")

        outcomes = [self.refine_detection(d, cells, cfg) for d in detections]
        return [o.detection for o in outcomes], outcomes

    def refine_set(
        self,
        preds: PredictionSet,
        cells: CellSet,
        cfg: RefineConfig,
        gt: Optional[GroundTruthSet] = None,
        jobs: int = 1,
    ) -> Tuple[PredictionSet, Dict[str, List[RefinementOutcome]]]:
        """
        Refine every page of a prediction set

        Args:
            preds: Detections to refine
            cells: Text cells per page
            cfg: Tolerances at the reference page size
            gt: When given, tolerances are scaled to each page's size
            jobs: Pages refined concurrently

        Returns:
            (refined set, outcomes per page)
        """
        page_ids = list(preds.detections)

        def run(page_id: str) -> Tuple[List[Detection], List[RefinementOutcome]]:
            page_cfg = cfg
            if gt is not None and page_id in gt.pages:
                page = gt.pages[page_id]
                page_cfg = cfg.scaled_for(page.width, page.height)
            return self.refine_page(preds.detections[page_id], cells.cells_for(page_id), page_cfg)

        if jobs > 1 and len(page_ids) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as executor:
                results = list(executor.map(run, page_ids))
        else:
            results = [run(pid) for pid in page_ids]

        refined = {pid: dets for pid, (dets, _) in zip(page_ids, results)}
        outcomes = {pid: outs for pid, (_, outs) in zip(page_ids, results)}

        counts = self.summarize(outcomes)
        logger.info(f"Refined '{preds.model_id}': " + ", ".join(f"{k}={v}" for k, v in counts.items()))
        return PredictionSet(model_id=preds.model_id, detections=refined), outcomes

    @staticmethod
    def summarize(outcomes: Dict[str, List[RefinementOutcome]]) -> Dict[str, int]:
        """Outcome counts per action (every action listed, zeros included)"""
        counter = Counter(o.action for outs in outcomes.values() for o in outs)
        return {action.value: counter.get(action, 0) for action in RefinementAction}

    def _propose(
        self,
        detection: Detection,
        cells: Sequence[TextCell],
        cfg: RefineConfig,
    ) -> Tuple[BBox, RefinementAction, List[int], int]:
        """One unguarded pass of the case split"""
        box = detection.bbox
        report = self.classify_edges(detection, cells, cfg)
        close = report.close_edges
        matched = report.matched_cells
        candidates: List[int] = []

        if len(close) == 2:
            env = envelope(cells[i].bbox for i in matched)
            free_inside = [_INSIDE[e](box, env) for e in EDGES if e not in close]
            if all(free_inside):
                # The detector missed part of the cell
                nearest = min(report.neighbor_cells, key=lambda i: (_edge_l1(cells[i].bbox, box), i))
                return cells[nearest].bbox, RefinementAction.REPLACED_BY_CELL, candidates, 2
            if not any(free_inside):
                candidates = matched

        elif len(close) == 3:
            holders = [i for i in matched if contains(cells[i].bbox, box, cfg.epsilon)]
            if holders:
                nearest = min(holders, key=lambda i: (_edge_l1(cells[i].bbox, box), i))
                return cells[nearest].bbox, RefinementAction.REPLACED_BY_CELL, candidates, 3
            if all(contains(box, cells[i].bbox, cfg.epsilon) for i in matched):
                candidates = matched

        elif len(close) == 4:
            boxes = [cells[i].bbox for i in matched]
            action = (
                RefinementAction.REPLACED_BY_CELL
                if len(set(boxes)) == 1
                else RefinementAction.REPLACED_BY_ENVELOPE
            )
            return envelope(boxes), action, candidates, 4

        if candidates:
            snapped = self._snap(box, [cells[i].bbox for i in candidates], cfg.snap_radius)
            if snapped is not None and snapped != box:
                return snapped, RefinementAction.SNAPPED_TO_CANDIDATES, candidates, len(close)
        return box, RefinementAction.UNCHANGED, candidates, len(close)

    @staticmethod
    def _snap(box: BBox, candidates: List[BBox], radius: float) -> Optional[BBox]:
        """Move each edge to the nearest same-side candidate edge within radius"""
        coords = {}
        for edge in EDGES:
            coord = getattr(box, edge)
            best = min(candidates, key=lambda c: abs(getattr(c, edge) - coord))
            target = getattr(best, edge)
            coords[edge] = target if abs(target - coord) <= radius else coord
        if coords["left"] > coords["right"] or coords["top"] > coords["bottom"]:
            return None
        return BBox(**coords)


# Global matcher instance
cell_matcher = CellMatcher()
