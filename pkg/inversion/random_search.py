"""
Blind sampling baseline: draw codes and noise, keep the hits
"""

from typing import Set, Union
import logging
import time

import numpy as np

from dynamics.step import sample_trajectory
from inversion.result import InversionResult, Solution
from inversion.verifier import verify_path
from pathspace.instance import SpipInstance

logger = logging.getLogger(__name__)


def invert_random(inst: SpipInstance, trials: int,
                  rng: Union[np.random.Generator, int, None] = None) -> InversionResult:
    target = inst.require_target()
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    started = time.perf_counter()
    hits = 0
    found: Set[Solution] = set()
    for _ in range(trials):
        code = [int(s) for s in rng.integers(1, inst.m, endpoint=True, size=inst.n)]
        trajectory = sample_trajectory(inst.ts, code, inst.x0, inst.noise, rng)
        if trajectory.endpoint == target:
            hits += 1
            solution = Solution(trajectory.code, trajectory.states)
            if not verify_path(inst, solution.code, solution.states):
                raise AssertionError(f"sampled hit {solution.code} failed verification")
            found.add(solution)
    elapsed = time.perf_counter() - started
    logger.info(f"Random inversion: {hits}/{trials} hits, {len(found)} distinct solutions")
    return InversionResult(tuple(sorted(found)), trials * inst.n, elapsed, False, 'random',
                           trials=trials, hits=hits)
