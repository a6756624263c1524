# Services package
from .pipeline import PipelineInputs, PipelineService, TuneResult, pipeline_service

__all__ = ["PipelineInputs", "PipelineService", "TuneResult", "pipeline_service"]
