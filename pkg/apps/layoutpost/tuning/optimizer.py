"""
Parallel trial execution for TPE and random search
"""
import logging
import math
import time
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from errors import ConfigError
from models.tuning import HyperSpace, TpeConfig, TrialPoint, TrialRecord
from storage.history import TrialHistoryStore
from tuning.space import sample_uniform
from tuning.tpe import suggest

logger = logging.getLogger("Tune")

Objective = Callable[[TrialPoint], float]
Proposer = Callable[[Sequence[TrialRecord], np.random.Generator], TrialPoint]


def _evaluate(objective: Objective, point: TrialPoint) -> Tuple[float, float]:
    """Run the objective; any failure scores -inf"""
    started = time.perf_counter()
    try:
        value = float(objective(point))
        if math.isnan(value) or value == math.inf:
            logger.warning(f"Objective returned {value} for {point.model_dump()}, scoring -inf")
            value = -math.inf
    except Exception as e:
        logger.warning(f"Objective failed for {point.model_dump()}: {e}")
        value = -math.inf
    return value, time.perf_counter() - started


def best_record(history: Sequence[TrialRecord]) -> TrialRecord:
    """Highest objective, earliest trial on ties"""
    return max(history, key=lambda r: (r.objective, -r.trial_id))


def _run(
    objective: Objective,
    space: HyperSpace,
    cfg: TpeConfig,
    propose: Proposer,
    store: Optional[TrialHistoryStore],
) -> Tuple[TrialPoint, float, List[TrialRecord]]:
    history: List[TrialRecord] = store.load() if store is not None else []
    for record in history:
        if not space.contains(record.point):
            raise ConfigError(f"history trial {record.trial_id} lies outside a {space.n_models}-model space")
    if history:
        logger.info(f"Resuming after {len(history)} recorded trials")
    
    # Seeding on the resume point keeps a resumed run reproducible too
    rng = np.random.default_rng([cfg.seed, len(history)])
    next_id = max((r.trial_id for r in history), default=-1) + 1
    remaining = cfg.budget - len(history)
    best = best_record(history).objective if history else -math.inf
    
    with ThreadPoolExecutor(max_workers=cfg.parallelism) as executor:
        pending = {}
        while remaining > 0 or pending:
            # Suggestions are made here only, against every completed trial
            while remaining > 0 and len(pending) < cfg.parallelism:
                point = propose(history, rng)
                pending[executor.submit(_evaluate, objective, point)] = (next_id, point)
                next_id += 1
                remaining -= 1
            
            done, _ = wait(pending, return_when=FIRST_COMPLETED)
            for future in sorted(done, key=lambda f: pending[f][0]):
                trial_id, point = pending.pop(future)
                value, elapsed = future.result()
                record = TrialRecord(trial_id=trial_id, point=point, objective=value, wall_time=elapsed)
                history.append(record)
                if store is not None:
                    store.append(record)
                if value > best:
                    best = value
                    logger.info(f"Trial {len(history)}/{cfg.budget}: new best {value:.4f} at {point.model_dump()}")
                else:
                    logger.debug(f"Trial {len(history)}/{cfg.budget}: {value:.4f}")
    
    if not history:
        raise ConfigError("no trials were run")
    top = best_record(history)
    return top.point, top.objective, history


def optimize(
    objective: Objective,
    space: HyperSpace,
    cfg: Optional[TpeConfig] = None,
    store: Optional[TrialHistoryStore] = None,
) -> Tuple[TrialPoint, float, List[TrialRecord]]:
    """
    Maximize `objective` over `space` with TPE
    
    Args:
        objective: Reentrant function of a point; exceptions score -inf
        space: Search space
        cfg: TPE constants, budget, parallelism and seed
        store: Optional history file; existing records are resumed from and
            new ones appended as they complete
    
    Returns:
        (best point, best objective, full history in completion order)
    """
    cfg = cfg or TpeConfig()
    return _run(objective, space, cfg, lambda h, rng: suggest(h, space, cfg, rng), store)


def random_search(
    objective: Objective,
    space: HyperSpace,
    cfg: Optional[TpeConfig] = None,
    store: Optional[TrialHistoryStore] = None,
) -> Tuple[TrialPoint, float, List[TrialRecord]]:
    """Uniform sampling with the same budget, parallelism and seed handling"""
    cfg = cfg or TpeConfig()
    return _run(objective, space, cfg, lambda h, rng: sample_uniform(space, rng), store)
