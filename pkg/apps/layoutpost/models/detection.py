"""
Scored, categorized detection
"""
from pydantic import BaseModel, ConfigDict, Field

from models.box import BBox
from models.categories import LayoutCategory


class Detection(BaseModel):
    """One model prediction on one page"""
    
    model_config = ConfigDict(frozen=True)
    
    page_id: str = Field(..., description="Opaque page identifier")
    bbox: BBox
    category: LayoutCategory
    score: float = Field(..., ge=0.0, le=1.0, description="Detector confidence")
    
    def with_bbox(self, bbox: BBox) -> "Detection":
        return self.model_copy(update={"bbox": bbox})
