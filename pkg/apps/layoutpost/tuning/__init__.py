"""
Tuning package: ensemble weight and IoU-threshold search
"""
from .space import space_cardinality, sample_uniform, point_from_indices, point_values
from .tpe import split_good_bad, kernel_radius_for, parzen_weight, suggest
from .optimizer import optimize, random_search, best_record

__all__ = [
    "space_cardinality",
    "sample_uniform",
    "point_from_indices",
    "point_values",
    "split_good_bad",
    "kernel_radius_for",
    "parzen_weight",
    "suggest",
    "optimize",
    "random_search",
    "best_record",
]
