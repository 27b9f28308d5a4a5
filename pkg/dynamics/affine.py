"""
Contractive affine maps, noise bounds and transform sets
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import ceil, floor, lcm
from typing import Optional, Sequence, Tuple
import logging

from config import get_config
from dynamics.scalar import ScalarLike, sqrt_upper, to_scalar
from errors import InvalidCode, InvalidInstance, NotContractive

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class AffineMap:
    """x -> A x + b with A stored row-major as (a11, a12, a21, a22)"""
    a: Tuple[Fraction, Fraction, Fraction, Fraction]
    b: Vector

    @property
    def gram_trace(self) -> Fraction:
        """trace(A^T A)"""
        return sum((c * c for c in self.a), Fraction(0))

    @property
    def det(self) -> Fraction:
        a11, a12, a21, a22 = self.a
        return a11 * a22 - a12 * a21

    def is_contractive(self) -> bool:
        # both roots of l^2 - t l + d below 1, with d = det(A^T A) = det(A)^2
        t = self.gram_trace
        d = self.det * self.det
        return t < 2 and 1 - t + d > 0

    def norm_upper_bound(self) -> Fraction:
        """Exact rational s with ||A||_2 <= s < 1"""
        t = self.gram_trace
        d = self.det * self.det
        resolution = 10 ** 6
        while True:
            lam = (t + sqrt_upper(t * t - 4 * d, resolution)) / 2
            s = sqrt_upper(lam, resolution)
            if s < 1:
                return s
            resolution *= 1000

    @cached_property
    def integer_form(self) -> Tuple[int, Tuple[int, int, int, int], Tuple[int, int]]:
        """(L, L*A, L*b) with L the lcm of every denominator"""
        den = 1
        for c in (*self.a, *self.b):
            den = lcm(den, c.denominator)
        a_int = tuple(int(c * den) for c in self.a)
        b_int = tuple(int(c * den) for c in self.b)
        return den, a_int, b_int

    def scaled_image(self, x: int, y: int) -> Tuple[int, int, int]:
        """(L, L*v1, L*v2) with v = A x + b"""
        den, (a11, a12, a21, a22), (b1, b2) = self.integer_form
        return den, a11 * x + a12 * y + b1, a21 * x + a22 * y + b2

    def image(self, x: int, y: int) -> Vector:
        den, p1, p2 = self.scaled_image(x, y)
        return Fraction(p1, den), Fraction(p2, den)


def make_affine_map(a: Sequence, b: Sequence[ScalarLike]) -> AffineMap:
    """Build a map after the exact contraction test; a is 4 scalars or 2x2 rows"""
    flat = list(a)
    if len(flat) == 2 and all(isinstance(row, (list, tuple)) for row in flat):
        flat = [c for row in flat for c in row]
    if len(flat) != 4 or len(b) != 2:
        raise InvalidInstance("an affine map needs 4 matrix entries and 2 offsets")
    entries = tuple(to_scalar(c) for c in flat)
    offset = tuple(to_scalar(c) for c in b)
    affine = AffineMap(entries, offset)
    if not affine.is_contractive():
        raise NotContractive(
            f"||A||_2 >= 1 for A={[str(c) for c in entries]} "
            f"(trace(A^T A)={affine.gram_trace}, det(A)^2={affine.det ** 2})"
        )
    return affine


@dataclass(frozen=True)
class NoiseBound:
    """delta in [-epsilon, epsilon]^2, sampled on the grid k/Q"""
    epsilon: Fraction
    sample_denominator: int = field(default_factory=lambda: get_config().NOISE_DENOMINATOR)

    def __post_init__(self):
        object.__setattr__(self, 'epsilon', to_scalar(self.epsilon))
        if self.epsilon < 0:
            raise InvalidInstance(f"epsilon must be >= 0, got {self.epsilon}")
        if self.sample_denominator < 2:
            raise InvalidInstance(f"sample denominator must be >= 2, got {self.sample_denominator}")

    @property
    def grid_range(self) -> Tuple[int, int]:
        """Inclusive numerator range of the sample grid"""
        scaled = self.epsilon * self.sample_denominator
        return ceil(-scaled), floor(scaled)

    def admits(self, delta: Sequence[Fraction]) -> bool:
        return all(-self.epsilon <= to_scalar(c) <= self.epsilon for c in delta)


@dataclass(frozen=True)
class TransformSet:
    """The indexed family T^(1..m); symbols are 1-based"""
    maps: Tuple[AffineMap, ...]

    def __post_init__(self):
        object.__setattr__(self, 'maps', tuple(self.maps))
        if not self.maps:
            raise InvalidInstance("a transform set needs at least one map")
        for index, affine in enumerate(self.maps, start=1):
            if not affine.is_contractive():
                raise NotContractive(f"map {index} is not contractive")

    @property
    def m(self) -> int:
        return len(self.maps)

    @property
    def symbols(self) -> range:
        return range(1, len(self.maps) + 1)

    def __getitem__(self, symbol: int) -> AffineMap:
        if not 1 <= symbol <= len(self.maps):
            raise InvalidCode(f"symbol {symbol} outside [1, {len(self.maps)}]")
        return self.maps[symbol - 1]

    def __len__(self) -> int:
        return len(self.maps)

    def validate_code(self, code: Sequence[int], length: Optional[int] = None) -> Tuple[int, ...]:
        symbols = tuple(int(s) for s in code)
        for position, symbol in enumerate(symbols):
            if not 1 <= symbol <= self.m:
                raise InvalidCode(f"symbol {symbol} at position {position} outside [1, {self.m}]")
        if length is not None and len(symbols) != length:
            raise InvalidCode(f"code has {len(symbols)} symbols, expected {length}")
        return symbols

    def norm_upper_bound(self) -> Fraction:
        return max(affine.norm_upper_bound() for affine in self.maps)
