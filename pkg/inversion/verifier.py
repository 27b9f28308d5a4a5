from typing import Sequence

from dynamics.lattice import LatticePoint
from dynamics.step import in_branch
from errors import LengthMismatch
from pathspace.instance import SpipInstance


def verify_path(inst: SpipInstance, code: Sequence[int], states: Sequence[LatticePoint]) -> bool:
    """True iff every step lands inside its branch set, i.e. some admissible delta exists"""
    if len(code) != inst.n or len(states) != inst.n + 1:
        raise LengthMismatch(
            f"expected {inst.n} symbols and {inst.n + 1} states, got {len(code)} and {len(states)}")
    points = [LatticePoint(*s) for s in states]
    if points[0] != inst.x0:
        return False
    if inst.target is not None and points[-1] != inst.target:
        return False
    for i, symbol in enumerate(code):
        if not 1 <= symbol <= inst.m:
            return False
        if not in_branch(inst.ts[symbol], points[i], points[i + 1], inst.noise):
            return False
    return True
