"""
Closed-form path-space sizes: the (n, epsilon) sweep surface and Grover cost
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, log2
from typing import Iterable, List, NamedTuple
import csv
import io

from dynamics.scalar import to_scalar
from errors import InvalidInstance


class SurfaceCell(NamedTuple):
    n: int
    epsilon: Fraction
    log2_space: float


@dataclass(frozen=True)
class GroverCost:
    log2_space: float
    log2_grover: float


def branch_estimate(epsilon) -> int:
    """k = ceil(10 eps), at least 1"""
    return max(1, ceil(to_scalar(epsilon) * 10))


def sweep_surface(n_values: Iterable[int], eps_values: Iterable, m: int = 10) -> List[SurfaceCell]:
    """log2((m k)^n) for every (n, eps) pair, n outermost"""
    if m < 1:
        raise InvalidInstance(f"m must be >= 1, got {m}")
    eps_values = [to_scalar(e) for e in eps_values]
    return [SurfaceCell(n, eps, n * log2(m * branch_estimate(eps)))
            for n in n_values for eps in eps_values]


def surface_to_csv(cells: Iterable[SurfaceCell]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(("n", "epsilon", "log2_space"))
    for cell in cells:
        writer.writerow([cell.n, f"{float(cell.epsilon):.6g}", f"{cell.log2_space:.6f}"])
    return buffer.getvalue()


def grover_cost(m: int, k: int, n: int) -> GroverCost:
    if m < 1 or k < 1:
        raise InvalidInstance(f"m and k must be >= 1, got m={m}, k={k}")
    if n < 0:
        raise InvalidInstance(f"n must be >= 0, got {n}")
    space = n * log2(m * k)
    return GroverCost(space, space / 2)
