"""
Per-page keyed collections parsed from ground truth, prediction and cell files
"""
from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.box import BBox, TextCell
from models.categories import LayoutCategory
from models.detection import Detection


class ScaleInfo(BaseModel):
    """Original page size from the scale side-table"""
    
    model_config = ConfigDict(frozen=True)
    
    orig_width: float = Field(..., gt=0)
    orig_height: float = Field(..., gt=0)


class Page(BaseModel):
    """One page image of the ground truth"""
    
    model_config = ConfigDict(frozen=True)
    
    page_id: str
    width: float = Field(..., gt=0)
    height: float = Field(..., gt=0)
    file_name: Optional[str] = None
    doc_label: Optional[str] = Field(None, description="Original document label, e.g. 'Scientific Articles'")
    scale_info: Optional[ScaleInfo] = None


class GroundTruthBox(BaseModel):
    """Annotated element"""
    
    model_config = ConfigDict(frozen=True)
    
    bbox: BBox
    category: LayoutCategory
    annotation_id: Optional[int] = None


class GroundTruthSet(BaseModel):
    """COCO ground truth keyed by page"""
    
    model_config = ConfigDict(frozen=True)
    
    pages: Dict[str, Page] = Field(default_factory=dict)
    annotations: Dict[str, List[GroundTruthBox]] = Field(default_factory=dict)
    # COCO category id table used by the source file
    categories: Dict[int, LayoutCategory] = Field(
        default_factory=lambda: {c.id: c for c in LayoutCategory}
    )
    
    @model_validator(mode="after")
    def _check_pages(self) -> "GroundTruthSet":
        orphans = [pid for pid in self.annotations if pid not in self.pages]
        if orphans:
            raise ValueError(f"annotations reference unknown pages: {orphans[:5]}")
        return self
    
    def boxes_for(self, page_id: str) -> List[GroundTruthBox]:
        return self.annotations.get(page_id, [])
    
    def restricted_to(self, page_ids) -> "GroundTruthSet":
        keep = set(page_ids)
        return GroundTruthSet(
            pages={pid: p for pid, p in self.pages.items() if pid in keep},
            annotations={pid: a for pid, a in self.annotations.items() if pid in keep},
            categories=self.categories,
        )


class PredictionSet(BaseModel):
    """Detections of one model (or of a fused ensemble) keyed by page"""
    
    model_config = ConfigDict(frozen=True)
    
    model_id: str = "model"
    detections: Dict[str, List[Detection]] = Field(default_factory=dict)
    
    @model_validator(mode="after")
    def _check_page_keys(self) -> "PredictionSet":
        for page_id, dets in self.detections.items():
            for det in dets:
                if det.page_id != page_id:
                    raise ValueError(f"detection of page {det.page_id!r} filed under {page_id!r}")
        return self
    
    def detections_for(self, page_id: str) -> List[Detection]:
        return self.detections.get(page_id, [])
    
    def count(self) -> int:
        return sum(len(d) for d in self.detections.values())
    
    def restricted_to(self, page_ids) -> "PredictionSet":
        keep = set(page_ids)
        return PredictionSet(
            model_id=self.model_id,
            detections={pid: d for pid, d in self.detections.items() if pid in keep},
        )


class CellSet(BaseModel):
    """Text cells keyed by page"""
    
    model_config = ConfigDict(frozen=True)
    
    cells: Dict[str, List[TextCell]] = Field(default_factory=dict)
    
    def cells_for(self, page_id: str) -> List[TextCell]:
        return self.cells.get(page_id, [])
