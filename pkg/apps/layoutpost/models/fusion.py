"""
Ensemble fusion configuration
"""
from typing import List, Optional
from pydantic import BaseModel, ConfigDict, Field, field_validator

from errors import ConfigError


class FusionConfig(BaseModel):
    """Weighted Boxes Fusion parameters; one weight per model, in model order"""
    
    model_config = ConfigDict(frozen=True)
    
    iou_threshold: float = Field(0.55, ge=0.01, le=0.99)
    weights: Optional[List[float]] = Field(None, description="Per-model weights (default: 1 for every model)")
    score_rescale: bool = Field(True, description="Multiply fused scores by min(N, T) / T")
    skip_threshold: float = Field(0.0, ge=0.0, description="Minimum effective score kept before fusion")
    
    @field_validator("weights")
    @classmethod
    def _check_weights(cls, weights: Optional[List[float]]) -> Optional[List[float]]:
        if weights is None:
            return weights
        if any(w < 0 for w in weights):
            raise ValueError(f"weights must be non-negative, got {weights}")
        if not any(w > 0 for w in weights):
            raise ValueError("at least one model weight must be positive")
        return weights
    
    def weights_for(self, n_models: int) -> List[float]:
        if self.weights is None:
            return [1.0] * n_models
        if len(self.weights) != n_models:
            raise ConfigError(f"{len(self.weights)} weights given for {n_models} models")
        return list(self.weights)
