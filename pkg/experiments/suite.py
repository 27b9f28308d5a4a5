"""
Simulation suite: the eight published run configurations, CSV export,
seed replicates and rank-correlation trend checks
"""

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence
import csv
import io
import logging

import numpy as np
from scipy.stats import spearmanr

from errors import InvalidInstance
from experiments.metrics import RunConfig, RunMetrics, run_metrics

logger = logging.getLogger(__name__)

CSV_HEADER = ("experiment", "steps", "transforms", "epsilon", "entropy_bits", "unique_endpoints",
              "collisions", "most_frequent_count", "avg_distance", "symbolic_freedom")


class PublishedRun(NamedTuple):
    run: int
    steps: int
    transforms: int
    epsilon: Fraction
    entropy_bits: float
    unique_endpoints: int
    collisions: int
    most_frequent_count: int
    avg_distance: float
    symbolic_freedom: float


# Published results; freedom is entropy / log2(transforms) to two decimals
PUBLISHED_RUNS = (
    PublishedRun(1, 30, 2, Fraction('0.05'), 2.71, 7, 7, 250, 1.54, 2.71),
    PublishedRun(2, 60, 4, Fraction('0.10'), 3.23, 12, 12, 254, 1.90, 1.62),
    PublishedRun(3, 120, 6, Fraction('0.25'), 3.23, 15, 14, 231, 2.18, 1.25),
    PublishedRun(4, 200, 8, Fraction('0.40'), 3.47, 23, 16, 179, 2.60, 1.16),
    PublishedRun(5, 300, 12, Fraction('0.50'), 3.57, 23, 20, 186, 2.60, 1.00),
    PublishedRun(6, 500, 20, Fraction('0.60'), 3.70, 24, 21, 161, 2.62, 0.86),
    PublishedRun(7, 800, 30, Fraction('0.70'), 3.85, 28, 25, 170, 2.80, 0.79),
    PublishedRun(8, 1200, 40, Fraction('0.80'), 3.94, 29, 26, 159, 2.87, 0.74),
)


@dataclass(frozen=True)
class SuiteRow:
    experiment: int
    config: RunConfig
    metrics: RunMetrics


@dataclass(frozen=True)
class Trends:
    entropy_vs_steps: float
    freedom_vs_transforms: float
    entropy_vs_distance: float


def default_suite(trials: Optional[int] = None, map_seed: int = 0, noise_seed: int = 0) -> List[RunConfig]:
    configs = []
    for row in PUBLISHED_RUNS:
        cfg = RunConfig(row.steps, row.transforms, row.epsilon, map_seed=map_seed, noise_seed=noise_seed)
        configs.append(cfg if trials is None else replace(cfg, trials=trials))
    return configs


def run_suite(cfgs: Sequence[RunConfig], threads: Optional[int] = None) -> List[SuiteRow]:
    if not cfgs:
        raise InvalidInstance("a suite needs at least one run configuration")
    rows = []
    for experiment, cfg in enumerate(cfgs, start=1):
        try:
            rows.append(SuiteRow(experiment, cfg, run_metrics(cfg, threads)))
        except Exception as e:
            logger.error(f"Error in suite run {experiment}: {e}")
            raise
    return rows


def suite_to_csv(rows: Sequence[SuiteRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(CSV_HEADER)
    for row in rows:
        m = row.metrics
        writer.writerow([
            row.experiment, row.config.steps, row.config.transforms,
            f"{float(row.config.epsilon):.6g}",
            f"{m.entropy_bits:.6f}", m.unique_endpoints, m.collisions, m.most_frequent_count,
            f"{m.avg_distance:.6f}", f"{m.symbolic_freedom:.6f}",
        ])
    return buffer.getvalue()


def replicate_suite(cfgs: Sequence[RunConfig], replicates: int,
                    threads: Optional[int] = None) -> List[SuiteRow]:
    """Rerun every config with map and noise seeds offset by 0..replicates-1 and average the metrics"""
    if replicates < 1:
        raise InvalidInstance(f"replicates must be >= 1, got {replicates}")
    runs = [run_suite([replace(cfg, map_seed=cfg.map_seed + r, noise_seed=cfg.noise_seed + r)
                       for cfg in cfgs], threads)
            for r in range(replicates)]
    means = []
    for index, cfg in enumerate(cfgs):
        samples = [run[index].metrics for run in runs]
        mean = RunMetrics(*(float(np.mean([getattr(s, name) for s in samples]))
                            for name in RunMetrics.__dataclass_fields__))
        means.append(SuiteRow(index + 1, cfg, mean))
    logger.info(f"Averaged {len(cfgs)} configurations over {replicates} replicates")
    return means


def suite_trends(rows: Sequence[SuiteRow]) -> Trends:
    """Spearman rank correlations across suite rows"""
    steps = [row.config.steps for row in rows]
    transforms = [row.config.transforms for row in rows]
    entropy = [row.metrics.entropy_bits for row in rows]
    freedom = [row.metrics.symbolic_freedom for row in rows]
    distance = [row.metrics.avg_distance for row in rows]
    return Trends(
        entropy_vs_steps=float(spearmanr(entropy, steps)[0]),
        freedom_vs_transforms=float(spearmanr(freedom, transforms)[0]),
        entropy_vs_distance=float(spearmanr(entropy, distance)[0]),
    )
