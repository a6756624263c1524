"""
Cell-matching refinement models
"""
from enum import Enum
from typing import Any, Dict, FrozenSet, List, Optional
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import settings
from models.categories import LayoutCategory
from models.detection import Detection


EDGES = ("left", "top", "right", "bottom")


class RefineConfig(BaseModel):
    """Tolerances for the cell-matching refinement (pixels at page scale)"""
    
    model_config = ConfigDict(frozen=True)
    
    epsilon: float = Field(settings.REFINE_EPSILON, gt=0, description="Edge closeness tolerance")
    snap_radius: float = Field(3.0 * settings.REFINE_EPSILON, description="Candidate snapping radius (default 3 * epsilon)")
    exempt_categories: FrozenSet[LayoutCategory] = Field(
        default_factory=lambda: frozenset({LayoutCategory.PICTURE, LayoutCategory.TABLE})
    )

    @model_validator(mode="before")
    @classmethod
    def _default_radius(cls, data: Any) -> Any:
        if isinstance(data, dict) and data.get("snap_radius") is None:
            data = dict(data)
            data["snap_radius"] = 3.0 * data.get("epsilon", settings.REFINE_EPSILON)
        return data

    @model_validator(mode="after")
    def _check_radius(self) -> "RefineConfig":
        if self.snap_radius < self.epsilon:
            raise ValueError(f"snap_radius ({self.snap_radius}) must be >= epsilon ({self.epsilon})")
        return self
    
    @property
    def locality_radius(self) -> float:
        return max(self.epsilon, self.snap_radius)
    
    def scaled_for(self, width: float, height: float) -> "RefineConfig":
        """Tolerances scaled from the reference page size to a `width` x `height` page"""
        factor = min(width, height) / settings.REFERENCE_PAGE_SIZE
        if factor == 1.0:
            return self
        return RefineConfig(
            epsilon=self.epsilon * factor,
            snap_radius=self.snap_radius * factor,
            exempt_categories=self.exempt_categories,
        )


class EdgeMatch(BaseModel):
    """Closeness of one detection edge to the page's text cells"""
    
    close: bool = False
    cells: List[int] = Field(default_factory=list, description="Indices of cells within epsilon on this side")
    distance: Optional[float] = Field(None, description="Smallest same-side gap among neighbor cells")


class EdgeMatchReport(BaseModel):
    """Per-edge match flags plus the cells that neighbor the detection"""
    
    edges: Dict[str, EdgeMatch]
    neighbor_cells: List[int] = Field(default_factory=list)
    
    @property
    def close_edges(self) -> List[str]:
        return [e for e in EDGES if self.edges[e].close]
    
    @property
    def matched_cells(self) -> List[int]:
        """Union of all per-edge matches, in index order"""
        return sorted({i for e in EDGES for i in self.edges[e].cells})


class RefinementAction(str, Enum):
    UNCHANGED = "Unchanged"
    REPLACED_BY_CELL = "ReplacedByCell"
    REPLACED_BY_ENVELOPE = "ReplacedByEnvelope"
    SNAPPED_TO_CANDIDATES = "SnappedToCandidates"


class RefinementOutcome(BaseModel):
    """Result of refining one detection"""
    
    detection: Detection
    action: RefinementAction = RefinementAction.UNCHANGED
    candidates: List[int] = Field(default_factory=list)
    close_edges: int = 0
