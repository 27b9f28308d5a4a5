from dataclasses import dataclass
from math import ceil, floor
from typing import Iterable, Iterator, NamedTuple

from errors import EmptyWindow


class LatticePoint(NamedTuple):
    """A state in Z^2"""
    x: int
    y: int

    def norm_squared(self) -> int:
        return self.x * self.x + self.y * self.y


@dataclass(frozen=True)
class Window:
    """Inclusive axis-aligned integer box"""
    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise EmptyWindow(f"degenerate window {self}")

    @classmethod
    def square(cls, radius: int) -> 'Window':
        return cls(-radius, radius, -radius, radius)

    @classmethod
    def around(cls, center: LatticePoint, radius: int) -> 'Window':
        return cls(center.x - radius, center.x + radius,
                   center.y - radius, center.y + radius)

    @classmethod
    def bounding(cls, points: Iterable[LatticePoint]) -> 'Window':
        pts = list(points)
        if not pts:
            raise EmptyWindow("bounding box of no points")
        return cls(min(p.x for p in pts), max(p.x for p in pts),
                   min(p.y for p in pts), max(p.y for p in pts))

    @property
    def side(self) -> int:
        return max(self.x_max - self.x_min, self.y_max - self.y_min) + 1

    @property
    def size(self) -> int:
        return (self.x_max - self.x_min + 1) * (self.y_max - self.y_min + 1)

    def contains(self, p: LatticePoint) -> bool:
        return self.x_min <= p.x <= self.x_max and self.y_min <= p.y <= self.y_max

    def clip(self, x_lo, x_hi, y_lo, y_hi):
        """Intersect with a real box; None when nothing integral is left"""
        xa, xb = max(self.x_min, ceil(x_lo)), min(self.x_max, floor(x_hi))
        ya, yb = max(self.y_min, ceil(y_lo)), min(self.y_max, floor(y_hi))
        if xa > xb or ya > yb:
            return None
        return Window(xa, xb, ya, yb)

    def points(self) -> Iterator[LatticePoint]:
        for x in range(self.x_min, self.x_max + 1):
            for y in range(self.y_min, self.y_max + 1):
                yield LatticePoint(x, y)
