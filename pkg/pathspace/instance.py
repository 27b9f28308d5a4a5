from dataclasses import dataclass, replace
from typing import Optional

from dynamics.affine import NoiseBound, TransformSet
from dynamics.lattice import LatticePoint
from errors import InvalidInstance


@dataclass(frozen=True)
class SpipInstance:
    """One inversion problem: maps, noise bound, path length, start and optional target"""
    ts: TransformSet
    noise: NoiseBound
    n: int
    x0: LatticePoint
    target: Optional[LatticePoint] = None

    def __post_init__(self):
        if self.n < 0:
            raise InvalidInstance(f"path length must be >= 0, got {self.n}")
        object.__setattr__(self, 'x0', LatticePoint(*self.x0))
        if self.target is not None:
            object.__setattr__(self, 'target', LatticePoint(*self.target))

    @property
    def m(self) -> int:
        return self.ts.m

    def require_target(self) -> LatticePoint:
        if self.target is None:
            raise InvalidInstance("operation needs an instance with a target")
        return self.target

    def with_target(self, target: Optional[LatticePoint]) -> 'SpipInstance':
        return replace(self, target=target)

    def with_length(self, n: int) -> 'SpipInstance':
        return replace(self, n=n)

    def with_noise(self, noise: NoiseBound) -> 'SpipInstance':
        return replace(self, noise=noise)
