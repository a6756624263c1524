"""
Evaluation configuration and the mAP report
"""
from typing import Dict, List, Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator


def _coco_thresholds() -> List[float]:
    return [round(0.50 + 0.05 * k, 2) for k in range(10)]


class EvalConfig(BaseModel):
    """COCO-style AP settings"""
    
    model_config = ConfigDict(frozen=True)
    
    iou_thresholds: List[float] = Field(default_factory=_coco_thresholds)
    recall_points: int = Field(101, ge=2)
    max_dets: Optional[int] = Field(100, ge=1, description="Per page per category cap; None for unlimited")
    
    @field_validator("iou_thresholds")
    @classmethod
    def _check_thresholds(cls, thresholds: List[float]) -> List[float]:
        if not thresholds:
            raise ValueError("at least one IoU threshold is required")
        if any(not 0.0 < t <= 1.0 for t in thresholds):
            raise ValueError(f"IoU thresholds must lie in (0, 1], got {thresholds}")
        if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
            raise ValueError(f"IoU thresholds must be strictly increasing, got {thresholds}")
        return thresholds


class MapReport(BaseModel):
    """Per-class AP, per-document-category mAP and the competition score (all in [0, 1])"""
    
    iou_thresholds: List[float]
    per_class_ap: Dict[str, List[float]] = Field(default_factory=dict, description="AP per IoU threshold")
    per_class_map: Dict[str, float] = Field(default_factory=dict)
    overall_map: float = 0.0
    per_doc_category: Dict[str, float] = Field(default_factory=dict)
    doc_category_pages: Dict[str, int] = Field(default_factory=dict)
    doc_category_mean: float = 0.0
    
    def to_table(self) -> str:
        """Human-readable summary, values x100 at one decimal"""
        rows = [("class", "mAP")]
        rows += [(name, f"{100 * value:.1f}") for name, value in self.per_class_map.items()]
        rows.append(("overall", f"{100 * self.overall_map:.1f}"))
        rows.append(("", ""))
        rows.append(("document category", "mAP"))
        rows += [
            (f"{name} ({self.doc_category_pages.get(name, 0)} pages)", f"{100 * value:.1f}")
            for name, value in self.per_doc_category.items()
        ]
        rows.append(("mean", f"{100 * self.doc_category_mean:.1f}"))
        width = max(len(r[0]) for r in rows) + 2
        return "\n".join(f"{label:<{width}}{value:>6}" if label else "" for label, value in rows)
