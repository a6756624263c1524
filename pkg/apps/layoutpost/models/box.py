"""
Geometric primitives: boxes and text cells
"""
import math
from typing import List, Optional, Sequence
from pydantic import BaseModel, ConfigDict, Field, model_validator


class BBox(BaseModel):
    """Axis-aligned box in page pixels (origin top-left, y grows downward)"""
    
    model_config = ConfigDict(frozen=True)
    
    left: float
    top: float
    right: float
    bottom: float
    
    @model_validator(mode="after")
    def _check_edges(self) -> "BBox":
        coords = (self.left, self.top, self.right, self.bottom)
        if not all(math.isfinite(c) for c in coords):
            raise ValueError(f"box coordinates must be finite, got {list(coords)}")
        if self.left > self.right or self.top > self.bottom:
            raise ValueError(f"box edges inverted: {list(coords)}")
        return self
    
    @classmethod
    def of(cls, left: float, top: float, right: float, bottom: float) -> "BBox":
        return cls(left=left, top=top, right=right, bottom=bottom)
    
    @classmethod
    def from_ltrb(cls, coords: Sequence[float]) -> "BBox":
        if len(coords) != 4:
            raise ValueError(f"expected 4 box coordinates, got {len(coords)}")
        return cls.of(*coords)
    
    @classmethod
    def from_xywh(cls, coords: Sequence[float]) -> "BBox":
        """COCO [x, y, width, height] encoding"""
        if len(coords) != 4:
            raise ValueError(f"expected 4 box coordinates, got {len(coords)}")
        x, y, w, h = coords
        if w < 0 or h < 0:
            raise ValueError(f"negative box size: width={w}, height={h}")
        return cls.of(x, y, x + w, y + h)
    
    @property
    def width(self) -> float:
        return self.right - self.left
    
    @property
    def height(self) -> float:
        return self.bottom - self.top
    
    def to_ltrb(self) -> List[float]:
        return [self.left, self.top, self.right, self.bottom]
    
    def to_xywh(self) -> List[float]:
        return [self.left, self.top, self.width, self.height]


class TextCell(BaseModel):
    """Text-only rectangle extracted from the source PDF (no category)"""
    
    model_config = ConfigDict(frozen=True)
    
    bbox: BBox
    text: Optional[str] = Field(None, description="Cell text, when the extractor kept it")
