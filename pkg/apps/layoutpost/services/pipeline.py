"""
Pipeline service: loads run inputs and wires refine, fuse, evaluate and tune
"""
import logging
import math
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from config import settings
from errors import ConfigError, PageMismatchError
from evaluation import assign_doc_categories, evaluate, parse_probabilities, resolve_page_categories
from fusion import fuse_sets, fuse_sets_by_category, nms_set
from ingestion import (
    attach_scales,
    parse_cells,
    parse_ground_truth,
    parse_predictions,
    parse_scales,
    resolve_page_keys,
    restore_cell_scale,
)
from ingestion._json import dump_json, load_json
from models.categories import DocCategory
from models.evaluation import MapReport
from models.fusion import FusionConfig
from models.pipeline import PipelineConfig, StageOrder
from models.refinement import RefinementOutcome
from models.sets import CellSet, GroundTruthSet, PredictionSet
from models.tuning import HyperSpace, TrialPoint
from refinement import cell_matcher
from storage.files import read_bytes, write_atomic
from storage.history import TrialHistoryStore
from tuning import optimize, random_search

logger = logging.getLogger("Pipeline")


class PipelineInputs(BaseModel):
    """Parsed inputs of one run"""
    
    gt: Optional[GroundTruthSet] = None
    preds: List[PredictionSet] = Field(default_factory=list)
    cells: Optional[CellSet] = None
    page_categories: Dict[str, DocCategory] = Field(default_factory=dict)
    
    def restricted_to(self, page_ids) -> "PipelineInputs":
        keep = set(page_ids)
        return PipelineInputs(
            gt=self.gt.restricted_to(keep) if self.gt is not None else None,
            preds=[p.restricted_to(keep) for p in self.preds],
            cells=CellSet(cells={k: v for k, v in self.cells.cells.items() if k in keep}) if self.cells else None,
            page_categories={k: v for k, v in self.page_categories.items() if k in keep},
        )


class TuneResult(BaseModel):
    """Best point of one search"""
    
    label: str
    point: TrialPoint
    objective: float
    trials: int
    history_path: Optional[Path] = None


class PipelineService:
    """Run-level orchestration shared by the CLI commands"""
    
    def load_config(self, path: Optional[Path]) -> PipelineConfig:
        """
        Read a JSON run config; relative input paths resolve against its directory
        
        Args:
            path: Config file, or None for all defaults
        
        Returns:
            PipelineConfig
        """
        if path is None:
            return PipelineConfig()
        cfg = PipelineConfig.model_validate(load_json(read_bytes(path), "config"))
        base = Path(path).parent
        
        def resolve(p: Optional[Path]) -> Optional[Path]:
            return p if p is None or p.is_absolute() else base / p
        
        return cfg.model_copy(update={
            "gt": resolve(cfg.gt),
            "preds": [resolve(p) for p in cfg.preds],
            "cells": resolve(cfg.cells),
            "scales": resolve(cfg.scales),
            "probs": resolve(cfg.probs),
        })
    
    def load_inputs(self, cfg: PipelineConfig) -> PipelineInputs:
        """Parse every input file the config names"""
        missing = cfg.missing_paths()
        if missing:
            raise ConfigError(f"input files not found: {', '.join(str(p) for p in missing)}")
        
        gt = parse_ground_truth(read_bytes(cfg.gt)) if cfg.gt else None
        if gt is not None and cfg.scales:
            gt = attach_scales(gt, parse_scales(read_bytes(cfg.scales)))
        
        categories = gt.categories if gt is not None else None
        preds = [parse_predictions(read_bytes(p), model_id=p.stem, categories=categories) for p in cfg.preds]
        
        cells = None
        if cfg.cells:
            cells = parse_cells(read_bytes(cfg.cells))
            if gt is not None:
                cells = restore_cell_scale(CellSet(cells=resolve_page_keys(cells.cells, gt)), gt)
        
        assigned: Dict[str, DocCategory] = {}
        if cfg.probs:
            probs = parse_probabilities(read_bytes(cfg.probs))
            if gt is not None:
                probs = resolve_page_keys(probs, gt)
            assigned = assign_doc_categories(probs)
        page_categories = resolve_page_categories(gt, assigned) if gt is not None else assigned
        
        return PipelineInputs(gt=gt, preds=preds, cells=cells, page_categories=page_categories)
    
    def refine(
        self,
        preds: PredictionSet,
        inputs: PipelineInputs,
        cfg: PipelineConfig,
        jobs: int = 1,
    ) -> Tuple[PredictionSet, Dict[str, List[RefinementOutcome]]]:
        cells = inputs.cells or CellSet()
        return cell_matcher.refine_set(preds, cells, cfg.refine, gt=inputs.gt, jobs=jobs)
    
    def fuse(
        self,
        sets: Sequence[PredictionSet],
        inputs: PipelineInputs,
        cfg: PipelineConfig,
        fusion: Optional[FusionConfig] = None,
        method: str = "wbf",
        jobs: int = 1,
    ) -> PredictionSet:
        """WBF with the run's (or the given) config, or NMS at its IoU threshold"""
        fusion = fusion or cfg.fusion
        if method == "nms":
            return nms_set(sets, fusion.iou_threshold)
        if method != "wbf":
            raise ConfigError(f"unknown fusion method {method!r}")
        if cfg.fusion_by_category:
            return fuse_sets_by_category(sets, fusion, cfg.fusion_by_category, inputs.page_categories, jobs)
        return fuse_sets(sets, fusion, jobs)
    
    def process(
        self,
        inputs: PipelineInputs,
        cfg: PipelineConfig,
        fusion: Optional[FusionConfig] = None,
        method: str = "wbf",
        jobs: int = 1,
    ) -> PredictionSet:
        """Refinement (when cells are present) and fusion in the configured order"""
        sets = inputs.preds
        if not sets:
            raise ConfigError("at least one prediction file is required")
        if cfg.order is StageOrder.REFINE_THEN_FUSE:
            if inputs.cells is not None:
                sets = [self.refine(p, inputs, cfg, jobs)[0] for p in sets]
            return self.fuse(sets, inputs, cfg, fusion, method, jobs)
        
        fused = self.fuse(sets, inputs, cfg, fusion, method, jobs)
        if inputs.cells is not None:
            fused = self.refine(fused, inputs, cfg, jobs)[0]
        return fused
    
    def evaluate(
        self,
        preds: PredictionSet,
        inputs: PipelineInputs,
        cfg: PipelineConfig,
        jobs: int = 1,
    ) -> MapReport:
        if inputs.gt is None:
            raise ConfigError("evaluation needs a ground-truth file")
        return evaluate(preds, inputs.gt, inputs.page_categories, cfg.evaluation, jobs)
    
    def make_objective(self, inputs: PipelineInputs, cfg: PipelineConfig) -> Callable[[TrialPoint], float]:
        """
        Trial objective: fuse with the point's weights and IoU threshold, score doc_category_mean
        
        Refinement before fusion does not depend on the point, so it runs once here.
        """
        if inputs.gt is None or not inputs.preds:
            raise ConfigError("tuning needs a ground-truth file and at least one prediction file")
        for preds in inputs.preds:
            unknown = [pid for pid in preds.detections if pid not in inputs.gt.pages]
            if unknown:
                raise PageMismatchError(f"'{preds.model_id}' has pages missing from ground truth: {unknown[:5]}")

        sets = inputs.preds
        refine_after = inputs.cells is not None and cfg.order is StageOrder.FUSE_THEN_REFINE
        if inputs.cells is not None and not refine_after:
            sets = [self.refine(p, inputs, cfg)[0] for p in sets]
        base = cfg.fusion.model_dump(exclude={"weights", "iou_threshold"})
        
        def objective(point: TrialPoint) -> float:
            fusion = FusionConfig(weights=[float(w) for w in point.weights], iou_threshold=point.iou_threshold, **base)
            fused = fuse_sets(sets, fusion)
            if refine_after:
                fused = self.refine(fused, inputs, cfg)[0]
            return evaluate(fused, inputs.gt, inputs.page_categories, cfg.evaluation).doc_category_mean
        
        return objective
    
    def tune(
        self,
        inputs: PipelineInputs,
        cfg: PipelineConfig,
        out_dir: Path,
        method: str = "tpe",
        per_category: bool = False,
    ) -> List[TuneResult]:
        """
        Search fusion weights and IoU threshold, globally or per document category
        
        History files are resumed when present. The best settings are written
        as a config fragment that `--config` accepts.
        
        Returns:
            One TuneResult per search
        """
        if method not in ("tpe", "random"):
            raise ConfigError(f"unknown search method {method!r}")
        search = optimize if method == "tpe" else random_search
        space = HyperSpace(n_models=len(inputs.preds))
        history_name = Path(settings.TUNE_HISTORY_FILENAME)
        
        runs: List[Tuple[str, PipelineInputs, Path]] = []
        if per_category:
            present = sorted(set(inputs.page_categories.values()), key=list(DocCategory).index)
            for category in present:
                pages = [pid for pid, c in inputs.page_categories.items() if c is category]
                path = out_dir / f"{history_name.stem}_{category.value.lower()}{history_name.suffix}"
                runs.append((category.value, inputs.restricted_to(pages), path))
        else:
            runs.append(("all", inputs, out_dir / history_name))
        
        results = []
        for label, run_inputs, path in runs:
            logger.info(f"Tuning '{label}': {len(run_inputs.gt.pages)} pages, {space.n_models} models, "
                        f"budget {cfg.tpe.budget}, parallelism {cfg.tpe.parallelism}")
            store = TrialHistoryStore(path)
            point, value, history = search(self.make_objective(run_inputs, cfg), space, cfg.tpe, store)
            results.append(TuneResult(label=label, point=point, objective=value, trials=len(history), history_path=path))
        
        write_atomic(out_dir / settings.TUNE_BEST_FILENAME, self.best_config_fragment(results, cfg, per_category))
        return results
    
    @staticmethod
    def best_config_fragment(results: Sequence[TuneResult], cfg: PipelineConfig, per_category: bool) -> bytes:
        def fusion_of(result: TuneResult) -> dict:
            fusion = cfg.fusion.model_copy(update={
                "weights": [float(w) for w in result.point.weights],
                "iou_threshold": result.point.iou_threshold,
            })
            return fusion.model_dump(mode="json")
        
        if per_category:
            fragment = {"fusion_by_category": {r.label: fusion_of(r) for r in results}}
        else:
            fragment = {"fusion": fusion_of(results[0])}
        # Every trial failing leaves -inf, which JSON cannot hold
        fragment["objective"] = {r.label: None if r.objective == -math.inf else r.objective for r in results}
        return dump_json(fragment)
    
    @staticmethod
    def refine_audit(original: PredictionSet, outcomes: Dict[str, List[RefinementOutcome]]) -> bytes:
        """Input box, action and output box per detection, plus totals"""
        pages = {
            pid: [
                {
                    "index": i,
                    "input_bbox": original.detections[pid][i].bbox.to_ltrb(),
                    "action": o.action.value,
                    "output_bbox": o.detection.bbox.to_ltrb(),
                    "close_edges": o.close_edges,
                    "candidates": o.candidates,
                }
                for i, o in enumerate(outs)
            ]
            for pid, outs in outcomes.items()
        }
        return dump_json({
            "model_id": original.model_id,
            "counts": cell_matcher.summarize(outcomes),
            "pages": pages,
        })


# Global service instance
pipeline_service = PipelineService()
