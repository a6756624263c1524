"""
Data models package
"""
from .box import BBox, TextCell
from .categories import LayoutCategory, DocCategory
from .detection import Detection
from .sets import Page, ScaleInfo, GroundTruthBox, GroundTruthSet, PredictionSet, CellSet
from .refinement import RefineConfig, EdgeMatch, EdgeMatchReport, RefinementAction, RefinementOutcome
from .fusion import FusionConfig
from .evaluation import EvalConfig, MapReport
from .tuning import HyperSpace, TrialPoint, TrialRecord, TpeConfig
from .layout import PatchRecord, SynthConfig, Placement, LayoutSpec
from .pipeline import PipelineConfig, StageOrder

__all__ = [
    "BBox",
    "TextCell",
    "LayoutCategory",
    "DocCategory",
    "Detection",
    "Page",
    "ScaleInfo",
    "GroundTruthBox",
    "GroundTruthSet",
    "PredictionSet",
    "CellSet",
    "RefineConfig",
    "EdgeMatch",
    "EdgeMatchReport",
    "RefinementAction",
    "RefinementOutcome",
    "FusionConfig",
    "EvalConfig",
    "MapReport",
    "HyperSpace",
    "TrialPoint",
    "TrialRecord",
    "TpeConfig",
    "PatchRecord",
    "SynthConfig",
    "Placement",
    "LayoutSpec",
    "PipelineConfig",
    "StageOrder",
]
