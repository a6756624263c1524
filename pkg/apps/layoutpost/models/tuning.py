"""
Search space, trial and TPE configuration models
"""
import math
from typing import List, Optional
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator


WEIGHT_DOMAIN: List[int] = list(range(0, 11))
IOU_DOMAIN: List[float] = [round(k / 100, 2) for k in range(1, 100)]


class HyperSpace(BaseModel):
    """Per-model integer weights 0..10 and the WBF IoU grid 0.01..0.99"""
    
    model_config = ConfigDict(frozen=True)
    
    n_models: int = Field(..., ge=1)
    
    @property
    def weight_domain(self) -> List[int]:
        return WEIGHT_DOMAIN
    
    @property
    def iou_domain(self) -> List[float]:
        return IOU_DOMAIN
    
    def domains(self) -> List[list]:
        """One domain per search dimension: n_models weights, then the IoU threshold"""
        return [WEIGHT_DOMAIN] * self.n_models + [IOU_DOMAIN]
    
    def contains(self, point: "TrialPoint") -> bool:
        return (
            len(point.weights) == self.n_models
            and all(w in WEIGHT_DOMAIN for w in point.weights)
            and point.iou_threshold in IOU_DOMAIN
        )


class TrialPoint(BaseModel):
    """Candidate ensemble setting"""
    
    model_config = ConfigDict(frozen=True)
    
    weights: List[int]
    iou_threshold: float
    
    @field_validator("weights")
    @classmethod
    def _check_weights(cls, weights: List[int]) -> List[int]:
        if any(w not in WEIGHT_DOMAIN for w in weights):
            raise ValueError(f"weights must be integers in 0..10, got {weights}")
        return weights
    
    @field_validator("iou_threshold")
    @classmethod
    def _check_iou(cls, value: float) -> float:
        snapped = round(value, 2)
        if abs(snapped - value) > 1e-9 or snapped not in IOU_DOMAIN:
            raise ValueError(f"iou_threshold must be one of 0.01..0.99 in steps of 0.01, got {value}")
        return snapped


class TrialRecord(BaseModel):
    """One evaluated point; failed evaluations carry objective -inf"""
    
    trial_id: int = Field(..., ge=0)
    point: TrialPoint
    objective: float
    wall_time: Optional[float] = None
    
    @field_validator("objective", mode="before")
    @classmethod
    def _null_objective(cls, value):
        # JSON has no -inf; failed trials are stored as null
        return -math.inf if value is None else value
    
    @field_validator("objective")
    @classmethod
    def _check_objective(cls, value: float) -> float:
        if math.isnan(value) or value == math.inf:
            raise ValueError(f"objective must be finite or -inf, got {value}")
        return value
    
    @field_serializer("objective", when_used="json")
    def _dump_objective(self, value: float) -> Optional[float]:
        return None if value == -math.inf else value


class TpeConfig(BaseModel):
    """Tree-structured Parzen Estimator constants and run budget"""
    
    model_config = ConfigDict(frozen=True)
    
    gamma: float = Field(0.25, gt=0.0, lt=1.0)
    n_startup: int = Field(20, ge=1)
    n_candidates: int = Field(24, ge=1)
    prior_weight: float = Field(1.0, gt=0.0)
    kernel_bandwidth: float = Field(
        0.05, ge=0.0, lt=1.0,
        description="Kernel half-width as a fraction of each domain, at least one position; 0 = purely categorical",
    )
    seed: int = 0
    budget: int = Field(2500, ge=1)
    parallelism: int = Field(1, ge=1)
