"""
Univariate Tree-structured Parzen Estimator over ordered grid dimensions

Each dimension gets a kernel-smoothed density from the good trials (l)
and one from the rest (g). Candidates are drawn from l and the one with the
largest l/g product wins.
"""
import math
from typing import List, Sequence, Tuple

import numpy as np

from models.tuning import HyperSpace, TpeConfig, TrialPoint, TrialRecord
from tuning.space import point_from_indices, point_values, sample_uniform


def split_good_bad(history: Sequence[TrialRecord], gamma: float) -> Tuple[List[TrialRecord], List[TrialRecord]]:
    """
    Partition trials into the best ceil(gamma * n) and the rest
    
    Ranking is by objective descending, ties by trial_id ascending.
    """
    if not history:
        raise ValueError("cannot split an empty history")
    ranked = sorted(history, key=lambda r: (-r.objective, r.trial_id))
    n_good = math.ceil(gamma * len(ranked))
    return ranked[:n_good], ranked[n_good:]


def kernel_radius_for(domain_size: int, bandwidth: float) -> int:
    """Grid positions each side of an observation that share its count"""
    if bandwidth <= 0:
        return 0
    return max(1, int(round(bandwidth * domain_size)))


def _kernel(radius: int) -> np.ndarray:
    # Triangular weights for offsets -radius..radius
    return np.array([radius + 1 - abs(k) for k in range(-radius, radius + 1)], dtype=float)


def parzen_weight(
    values: Sequence,
    domain: Sequence,
    prior_weight: float = 1.0,
    kernel_radius: int = 0,
) -> np.ndarray:
    """
    Smoothed categorical density over a finite domain
    
    p(v) = (count(v) + prior_weight) / (len(values) + prior_weight * len(domain))
    
    With kernel_radius > 0 each observation's unit count is spread over the
    neighbouring domain positions (triangular weights, truncated at the ends),
    treating the domain as ordered.
    
    Args:
        values: Observations, each a member of domain
        domain: Ordered domain elements
        prior_weight: Pseudo-count added to every element
        kernel_radius: Neighbour positions sharing each observation (0 = none)
    
    Returns:
        Probability per domain element, in domain order
    """
    index = {v: i for i, v in enumerate(domain)}
    counts = np.zeros(len(domain), dtype=float)
    kernel = _kernel(kernel_radius)
    for v in values:
        if v not in index:
            raise ValueError(f"value {v!r} is outside the domain")
        i = index[v]
        if kernel_radius == 0:
            counts[i] += 1.0
            continue
        lo, hi = max(0, i - kernel_radius), min(len(domain), i + kernel_radius + 1)
        spread = kernel[lo - (i - kernel_radius):hi - (i - kernel_radius)]
        counts[lo:hi] += spread / spread.sum()
    return (counts + prior_weight) / (len(values) + prior_weight * len(domain))


def suggest(
    history: Sequence[TrialRecord],
    space: HyperSpace,
    cfg: TpeConfig,
    rng: np.random.Generator,
) -> TrialPoint:
    """
    Next point to evaluate
    
    Uniform sampling until n_startup trials exist, then the l/g argmax over
    n_candidates draws from l (earliest draw wins ties).
    """
    if len(history) < cfg.n_startup:
        return sample_uniform(space, rng)
    
    good, bad = split_good_bad(history, cfg.gamma)
    good_values = [point_values(r.point) for r in good]
    bad_values = [point_values(r.point) for r in bad]
    
    draws = []
    scores = np.zeros(cfg.n_candidates)
    for dim, domain in enumerate(space.domains()):
        radius = kernel_radius_for(len(domain), cfg.kernel_bandwidth)
        l = parzen_weight([v[dim] for v in good_values], domain, cfg.prior_weight, radius)
        g = parzen_weight([v[dim] for v in bad_values], domain, cfg.prior_weight, radius)
        picked = rng.choice(len(domain), size=cfg.n_candidates, p=l)
        draws.append(picked)
        scores += np.log(l[picked]) - np.log(g[picked])
    
    best = int(np.argmax(scores))
    return point_from_indices(space, [d[best] for d in draws])
