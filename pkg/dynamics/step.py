"""
One SPIP step in exact arithmetic: apply, branch, sample, invert, iterate
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import FrozenSet, Optional, Sequence, Tuple
import logging

import numpy as np

from dynamics.affine import AffineMap, NoiseBound, TransformSet, Vector
from dynamics.lattice import LatticePoint, Window
from dynamics.scalar import sqrt_upper, to_scalar
from errors import NoiseOutOfBounds

logger = logging.getLogger(__name__)

Ranges = Tuple[int, int, int, int]


@dataclass(frozen=True)
class Trajectory:
    """States x_0..x_n visited under a code, with the noise that produced them"""
    code: Tuple[int, ...]
    states: Tuple[LatticePoint, ...]
    noises: Optional[Tuple[Vector, ...]] = None

    @property
    def endpoint(self) -> LatticePoint:
        return self.states[-1]

    @property
    def n(self) -> int:
        return len(self.code)


def apply_with_noise(affine: AffineMap, x: LatticePoint, delta: Sequence) -> LatticePoint:
    """floor(A x + b + delta), component-wise toward -infinity"""
    v1, v2 = affine.image(x[0], x[1])
    return LatticePoint(floor(v1 + to_scalar(delta[0])), floor(v2 + to_scalar(delta[1])))


def branch_ranges(affine: AffineMap, x: LatticePoint, noise: NoiseBound) -> Ranges:
    """Inclusive per-coordinate ranges [floor(v-eps), floor(v+eps)] with v = A x + b"""
    den, p1, p2 = affine.scaled_image(x[0], x[1])
    en, ed = noise.epsilon.numerator, noise.epsilon.denominator
    scale = den * ed
    shift = en * den
    return ((p1 * ed - shift) // scale, (p1 * ed + shift) // scale,
            (p2 * ed - shift) // scale, (p2 * ed + shift) // scale)


def branch_size(affine: AffineMap, x: LatticePoint, noise: NoiseBound) -> int:
    x_lo, x_hi, y_lo, y_hi = branch_ranges(affine, x, noise)
    return (x_hi - x_lo + 1) * (y_hi - y_lo + 1)


def in_branch(affine: AffineMap, x: LatticePoint, y: LatticePoint, noise: NoiseBound) -> bool:
    x_lo, x_hi, y_lo, y_hi = branch_ranges(affine, x, noise)
    return x_lo <= y[0] <= x_hi and y_lo <= y[1] <= y_hi


def branch_set(affine: AffineMap, x: LatticePoint, noise: NoiseBound) -> FrozenSet[LatticePoint]:
    """Every lattice point reachable from x under one map over all admissible noise"""
    x_lo, x_hi, y_lo, y_hi = branch_ranges(affine, x, noise)
    return frozenset(LatticePoint(px, py)
                     for px in range(x_lo, x_hi + 1)
                     for py in range(y_lo, y_hi + 1))


def sample_step(affine: AffineMap, x: LatticePoint, noise: NoiseBound,
                rng: np.random.Generator) -> Tuple[LatticePoint, Vector]:
    """Draw delta from the grid {k/Q : |k| <= eps*Q} and take the step"""
    lo, hi = noise.grid_range
    k1 = int(rng.integers(lo, hi, endpoint=True))
    k2 = int(rng.integers(lo, hi, endpoint=True))
    q = noise.sample_denominator
    den, p1, p2 = affine.scaled_image(x[0], x[1])
    point = LatticePoint((p1 * q + k1 * den) // (den * q), (p2 * q + k2 * den) // (den * q))
    return point, (Fraction(k1, q), Fraction(k2, q))


def preimage_set(affine: AffineMap, y: LatticePoint, noise: NoiseBound,
                 window: Window) -> FrozenSet[LatticePoint]:
    """{x in window : y in branch_set(affine, x)}"""
    eps = noise.epsilon
    candidates: Optional[Window] = window
    det = affine.det
    if det != 0:
        # y is reachable iff y_c - eps <= v_c < y_c + 1 + eps; pull the slab back through A^-1
        a11, a12, a21, a22 = affine.a
        b1, b2 = affine.b
        xs, ys = [], []
        for v1 in (y[0] - eps, y[0] + 1 + eps):
            for v2 in (y[1] - eps, y[1] + 1 + eps):
                w1, w2 = v1 - b1, v2 - b2
                xs.append((a22 * w1 - a12 * w2) / det)
                ys.append((a11 * w2 - a21 * w1) / det)
        candidates = window.clip(min(xs), max(xs), min(ys), max(ys))
        if candidates is None:
            return frozenset()
    return frozenset(p for p in candidates.points() if in_branch(affine, p, y, noise))


def replay_trajectory(ts: TransformSet, code: Sequence[int], x0: LatticePoint,
                      deltas: Sequence[Sequence], noise: Optional[NoiseBound] = None) -> Trajectory:
    """Apply an injected noise realization exactly"""
    symbols = ts.validate_code(code)
    if len(deltas) != len(symbols):
        raise NoiseOutOfBounds(f"{len(deltas)} noise vectors for a code of length {len(symbols)}")
    noises = tuple((to_scalar(d[0]), to_scalar(d[1])) for d in deltas)
    if noise is not None:
        for index, delta in enumerate(noises):
            if not noise.admits(delta):
                raise NoiseOutOfBounds(
                    f"delta {index} = ({delta[0]}, {delta[1]}) outside [-{noise.epsilon}, {noise.epsilon}]^2")
    states = [LatticePoint(*x0)]
    for symbol, delta in zip(symbols, noises):
        states.append(apply_with_noise(ts[symbol], states[-1], delta))
    return Trajectory(symbols, tuple(states), noises)


def sample_trajectory(ts: TransformSet, code: Sequence[int], x0: LatticePoint,
                      noise: NoiseBound, rng: Optional[np.random.Generator] = None,
                      deltas: Optional[Sequence[Sequence]] = None) -> Trajectory:
    """Iterate sample_step along a code; with deltas given, replay them instead"""
    if deltas is not None:
        return replay_trajectory(ts, code, x0, deltas, noise)
    if rng is None:
        raise ValueError("sample_trajectory needs an rng when no deltas are injected")
    symbols = ts.validate_code(code)
    states = [LatticePoint(*x0)]
    noises = []
    for symbol in symbols:
        point, delta = sample_step(ts[symbol], states[-1], noise, rng)
        states.append(point)
        noises.append(delta)
    return Trajectory(symbols, tuple(states), tuple(noises))


def escape_radius(ts: TransformSet, noise: NoiseBound) -> Fraction:
    """R with: ||x|| > R implies every successor has strictly smaller norm"""
    s = ts.norm_upper_bound()
    b_norm = max(sqrt_upper(affine.b[0] ** 2 + affine.b[1] ** 2) for affine in ts.maps)
    return (b_norm + (1 + noise.epsilon) * sqrt_upper(Fraction(2))) / (1 - s)


def invariant_window(ts: TransformSet, noise: NoiseBound, x0: LatticePoint) -> Window:
    """Square holding every state of every trajectory started at x0"""
    radius = max(escape_radius(ts, noise), sqrt_upper(Fraction(LatticePoint(*x0).norm_squared())))
    return Window.square(ceil(radius))
