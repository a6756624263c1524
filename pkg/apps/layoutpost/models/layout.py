"""
Synthetic page layout models
"""
from typing import Dict, List, Tuple
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.box import BBox
from models.categories import LayoutCategory, OPTIONAL_CATEGORIES


class PatchRecord(BaseModel):
    """An element cropped from a source document image"""
    
    model_config = ConfigDict(frozen=True)
    
    category: LayoutCategory
    width: float = Field(..., gt=0)
    height: float = Field(..., gt=0)
    source_ref: str = Field("", description="Source image plus crop box")


def _default_optional_probs() -> Dict[LayoutCategory, float]:
    return {
        LayoutCategory.TITLE: 0.5,
        LayoutCategory.PAGE_HEADER: 0.7,
        LayoutCategory.PAGE_FOOTER: 0.7,
        LayoutCategory.FOOTNOTE: 0.3,
    }


class SynthConfig(BaseModel):
    """Page composition parameters"""
    
    model_config = ConfigDict(frozen=True)
    
    page_width: int = Field(1025, gt=0)
    page_height: int = Field(1025, gt=0)
    column_range: Tuple[int, int] = (1, 5)
    optional_probs: Dict[LayoutCategory, float] = Field(default_factory=_default_optional_probs)
    margin: int = Field(40, ge=0)
    gap: int = Field(10, ge=0)
    seed: int = 0
    
    @field_validator("column_range")
    @classmethod
    def _check_columns(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        low, high = value
        if not 1 <= low <= high <= 5:
            raise ValueError(f"column_range must satisfy 1 <= low <= high <= 5, got {value}")
        return value
    
    @field_validator("optional_probs")
    @classmethod
    def _check_probs(cls, probs: Dict[LayoutCategory, float]) -> Dict[LayoutCategory, float]:
        for category, p in probs.items():
            if category not in OPTIONAL_CATEGORIES:
                raise ValueError(f"{category.value} is not an optional page element")
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"probability for {category.value} must lie in [0, 1], got {p}")
        return probs


class Placement(BaseModel):
    """A patch pasted at a page position"""
    
    model_config = ConfigDict(frozen=True)
    
    patch: PatchRecord
    bbox: BBox
    category: LayoutCategory


class LayoutSpec(BaseModel):
    """One synthetic page"""
    
    page_id: str
    width: int
    height: int
    placements: List[Placement] = Field(default_factory=list)
    columns: List[Tuple[int, int]] = Field(default_factory=list, description="(left, right) of each column")
    
    @model_validator(mode="after")
    def _check_bounds(self) -> "LayoutSpec":
        for p in self.placements:
            b = p.bbox
            if b.left < 0 or b.top < 0 or b.right > self.width or b.bottom > self.height:
                raise ValueError(f"placement {b.to_ltrb()} leaves the {self.width}x{self.height} page")
        return self
