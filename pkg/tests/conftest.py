from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from dynamics import LatticePoint, NoiseBound, TransformSet, make_affine_map
from errors import NotContractive
from experiments.metrics import generate_transform_set
from pathspace import SpipInstance

ROOT = Path(__file__).resolve().parent.parent
HALF = Fraction(1, 2)
WORKED_CODE = (1, 2, 1)
WORKED_DELTAS = ((Fraction(3, 10), Fraction(-2, 5)), (Fraction(-1, 5), Fraction(1, 5)), (Fraction(1, 10), Fraction(2, 5)))
WORKED_STATES = ((0, 0), (1, -1), (0, 0), (1, 0))


def half_map(b1, b2):
    return make_affine_map([[HALF, 0], [0, HALF]], [b1, b2])


@pytest.fixture
def worked_ts():
    return TransformSet((half_map(1, 0), half_map(0, 1)))


@pytest.fixture
def worked_instance(worked_ts):
    """Two half-scale maps, eps = 1/2, n = 3 from the origin to (1, 0)"""
    return SpipInstance(worked_ts, NoiseBound(HALF), 3, LatticePoint(0, 0), LatticePoint(1, 0))


@pytest.fixture
def instance_path():
    return ROOT / 'instances' / 'worked_example.instance'


@pytest.fixture
def diamond_path():
    return ROOT / 'instances' / 'diamond.dag'


def random_instance(seed: int, target=None) -> SpipInstance:
    """Small seeded instance: m in {2, 3}, n in {2, 3, 4}, eps in {1/4, 2/5, 1/2}"""
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 3, endpoint=True))
    n = int(rng.integers(2, 4, endpoint=True))
    eps = [Fraction(1, 4), Fraction(2, 5), Fraction(1, 2)][int(rng.integers(0, 3))]
    return SpipInstance(generate_transform_set(m, seed), NoiseBound(eps), n, LatticePoint(0, 0), target)


def random_map(rng: np.random.Generator):
    """Contractive map with small rational entries"""
    while True:
        a = [Fraction(int(rng.integers(-6, 6, endpoint=True)), 10) for _ in range(4)]
        b = [Fraction(int(rng.integers(-20, 20, endpoint=True)), 10) for _ in range(2)]
        try:
            return make_affine_map(a, b)
        except NotContractive:
            continue
