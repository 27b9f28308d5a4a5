"""
Path-space growth bounds: |W_n| >= k^n for a fixed code, (k*m)^n over all codes
"""

from dataclasses import dataclass
from math import ceil, log2

from errors import InvalidInstance
from pathspace.instance import SpipInstance


@dataclass(frozen=True)
class BoundReport:
    m: int
    k_lower: int
    n: int
    bound_kn: int
    bound_mkn: int

    @property
    def log2_kn(self) -> float:
        return self.n * log2(self.k_lower)

    @property
    def log2_mkn(self) -> float:
        return self.n * log2(self.m * self.k_lower)


def growth_bounds(m: int, k: int, n: int) -> BoundReport:
    if m < 1 or k < 1 or n < 0:
        raise InvalidInstance(f"growth bounds need m >= 1, k >= 1, n >= 0 (got m={m}, k={k}, n={n})")
    return BoundReport(m=m, k_lower=k, n=n, bound_kn=k ** n, bound_mkn=(m * k) ** n)


def max_branch(inst: SpipInstance) -> int:
    """Largest branch set any state can have: (ceil(2 eps) + 1)^2"""
    per_axis = ceil(2 * inst.noise.epsilon) + 1
    return per_axis * per_axis


def product_bound(inst: SpipInstance) -> int:
    """A-priori upper bound (m * max_branch)^n on the number of (code, path) pairs"""
    return (inst.m * max_branch(inst)) ** inst.n
