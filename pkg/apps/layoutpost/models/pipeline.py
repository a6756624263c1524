"""
Per-run pipeline configuration (JSON config file + CLI overrides)
"""
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field

from models.categories import DocCategory
from models.evaluation import EvalConfig
from models.fusion import FusionConfig
from models.layout import SynthConfig
from models.refinement import RefineConfig
from models.tuning import TpeConfig


class StageOrder(str, Enum):
    REFINE_THEN_FUSE = "refine-then-fuse"
    FUSE_THEN_REFINE = "fuse-then-refine"


class PipelineConfig(BaseModel):
    """Everything one pipeline run needs; unknown keys are ignored"""
    
    model_config = ConfigDict(extra="ignore")
    
    # Inputs
    gt: Optional[Path] = None
    preds: List[Path] = Field(default_factory=list)
    cells: Optional[Path] = None
    scales: Optional[Path] = None
    probs: Optional[Path] = None
    
    # Stages
    refine: RefineConfig = Field(default_factory=RefineConfig)
    fusion: FusionConfig = Field(default_factory=FusionConfig)
    fusion_by_category: Dict[DocCategory, FusionConfig] = Field(default_factory=dict)
    evaluation: EvalConfig = Field(default_factory=EvalConfig)
    tpe: TpeConfig = Field(default_factory=TpeConfig)
    synth: SynthConfig = Field(default_factory=SynthConfig)
    order: StageOrder = StageOrder.REFINE_THEN_FUSE
    
    def missing_paths(self) -> List[Path]:
        paths = [self.gt, self.cells, self.scales, self.probs, *self.preds]
        return [p for p in paths if p is not None and not p.exists()]
