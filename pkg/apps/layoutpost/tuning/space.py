"""
Discrete ensemble search space helpers
"""
from typing import List

import numpy as np

from models.tuning import HyperSpace, TrialPoint


def space_cardinality(space: HyperSpace) -> int:
    """Number of distinct points: 11 weight values per model times 99 IoU values"""
    return len(space.weight_domain) ** space.n_models * len(space.iou_domain)


def point_from_indices(space: HyperSpace, indices: List[int]) -> TrialPoint:
    domains = space.domains()
    values = [domain[int(i)] for domain, i in zip(domains, indices)]
    return TrialPoint(weights=values[:-1], iou_threshold=values[-1])


def point_values(point: TrialPoint) -> list:
    """Point flattened in dimension order (weights, then IoU threshold)"""
    return [*point.weights, point.iou_threshold]


def sample_uniform(space: HyperSpace, rng: np.random.Generator) -> TrialPoint:
    return point_from_indices(space, [rng.integers(len(d)) for d in space.domains()])
