"""
Endpoint statistics of sampled SPIP trajectories
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import log2
from typing import Dict, List, Mapping, Optional, Sequence, Union
import logging

import numpy as np

from config import get_config
from dynamics.affine import NoiseBound, TransformSet, make_affine_map
from dynamics.lattice import LatticePoint
from dynamics.scalar import to_scalar
from errors import EmptyHistogram, InvalidInstance

logger = logging.getLogger(__name__)

MAP_DENOMINATOR = 10 ** 6


@dataclass(frozen=True)
class RunConfig:
    steps: int
    transforms: int
    epsilon: Fraction
    trials: int = field(default_factory=lambda: get_config().TRIALS)
    map_seed: int = 0
    noise_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'epsilon', to_scalar(self.epsilon))
        if self.steps < 1 or self.transforms < 1 or self.trials < 1:
            raise InvalidInstance(
                f"run needs steps, transforms and trials >= 1, got "
                f"({self.steps}, {self.transforms}, {self.trials})")


@dataclass(frozen=True)
class RunMetrics:
    entropy_bits: float
    unique_endpoints: int
    collisions: int
    most_frequent_count: int
    avg_distance: float
    symbolic_freedom: float


def shannon_entropy(histogram: Union[Mapping, Sequence[int]]) -> float:
    """-sum p log2 p over the nonzero frequencies"""
    counts = np.asarray(list(histogram.values()) if isinstance(histogram, Mapping) else list(histogram),
                        dtype=float)
    total = counts.sum()
    if total < 1:
        raise EmptyHistogram(f"histogram total {total} is below one")
    p = counts[counts > 0] / total
    return float(-np.sum(p * np.log2(p))) + 0.0


def symbolic_freedom(entropy_bits: float, m: int) -> float:
    """Entropy per bit of code alphabet; for m = 1 the alphabet carries no bits and H is returned"""
    return entropy_bits / max(log2(m), 1.0)


def generate_transform_set(m: int, seed: int) -> TransformSet:
    """m maps s R(theta) x + b with s in [0.3, 0.7], theta uniform and b in {-2.5, ..., 2.5}^2"""
    rng = np.random.default_rng(seed)
    maps = []
    for _ in range(m):
        s = rng.uniform(0.3, 0.7)
        theta = rng.uniform(0.0, 2 * np.pi)
        c, d = s * np.cos(theta), s * np.sin(theta)
        a = [[c, -d], [d, c]]
        a = [[Fraction(float(v)).limit_denominator(MAP_DENOMINATOR) for v in row] for row in a]
        b = [Fraction(int(k)) + Fraction(1, 2) for k in rng.integers(-3, 2, size=2, endpoint=True)]
        maps.append(make_affine_map(a, b))
    return TransformSet(tuple(maps))


def _sample_endpoint(ts: TransformSet, noise: NoiseBound, steps: int, x0: LatticePoint,
                     rng: np.random.Generator) -> LatticePoint:
    """sample_trajectory without keeping states; all draws for a trial are taken up front"""
    code = rng.integers(0, ts.m, size=steps)
    lo, hi = noise.grid_range
    ks = rng.integers(lo, hi, size=(steps, 2), endpoint=True)
    q = noise.sample_denominator
    forms = [affine.integer_form for affine in ts.maps]
    x, y = x0
    for index, (k1, k2) in zip(code.tolist(), ks.tolist()):
        den, (a11, a12, a21, a22), (b1, b2) = forms[index]
        p1 = a11 * x + a12 * y + b1
        p2 = a21 * x + a22 * y + b2
        x, y = (p1 * q + k1 * den) // (den * q), (p2 * q + k2 * den) // (den * q)
    return LatticePoint(x, y)


def sample_endpoints(cfg: RunConfig, ts: Optional[TransformSet] = None,
                     x0: LatticePoint = LatticePoint(0, 0),
                     threads: Optional[int] = None) -> Counter:
    """Endpoint histogram over cfg.trials trials; trial t draws from SeedSequence([noise_seed, t])"""
    threads = get_config().THREADS if threads is None else threads
    ts = generate_transform_set(cfg.transforms, cfg.map_seed) if ts is None else ts
    noise = NoiseBound(cfg.epsilon)

    def trial(index):
        rng = np.random.default_rng(np.random.SeedSequence([cfg.noise_seed, index]))
        return _sample_endpoint(ts, noise, cfg.steps, x0, rng)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            endpoints = list(pool.map(trial, range(cfg.trials)))
    else:
        endpoints = [trial(index) for index in range(cfg.trials)]
    return Counter(endpoints)


def metrics_from_histogram(histogram: Mapping[LatticePoint, int], m: int,
                           x0: LatticePoint = LatticePoint(0, 0)) -> RunMetrics:
    entropy = shannon_entropy(histogram)
    points = np.array([[p.x - x0[0], p.y - x0[1]] for p in histogram], dtype=float)
    weights = np.array(list(histogram.values()), dtype=float)
    avg_distance = float(np.average(np.hypot(points[:, 0], points[:, 1]), weights=weights))
    return RunMetrics(
        entropy_bits=entropy,
        unique_endpoints=len(histogram),
        collisions=sum(1 for c in histogram.values() if c >= 2),
        most_frequent_count=max(histogram.values()),
        avg_distance=avg_distance,
        symbolic_freedom=symbolic_freedom(entropy, m),
    )


def run_metrics(cfg: RunConfig, threads: Optional[int] = None) -> RunMetrics:
    """Sample cfg.trials trajectories from the origin under uniform random codes"""
    histogram = sample_endpoints(cfg, threads=threads)
    metrics = metrics_from_histogram(histogram, cfg.transforms)
    logger.info(f"Run n={cfg.steps} m={cfg.transforms} eps={cfg.epsilon}: "
                f"H={metrics.entropy_bits:.3f} unique={metrics.unique_endpoints}")
    return metrics


@dataclass(frozen=True)
class DepthRow:
    steps: int
    entropy_bits: float
    unique_endpoints: int
    most_frequent_count: int


def depth_profile(m: int, epsilon, depths: Sequence[int], trials: Optional[int] = None,
                  map_seed: int = 0, noise_seed: int = 0,
                  threads: Optional[int] = None) -> List[DepthRow]:
    """Entropy and endpoint spread against step count for one fixed transform set"""
    trials = get_config().TRIALS if trials is None else trials
    ts = generate_transform_set(m, map_seed)
    rows = []
    for steps in depths:
        cfg = RunConfig(steps, m, epsilon, trials, map_seed, noise_seed)
        histogram: Dict[LatticePoint, int] = sample_endpoints(cfg, ts, threads=threads)
        rows.append(DepthRow(steps, shannon_entropy(histogram), len(histogram), max(histogram.values())))
    return rows
