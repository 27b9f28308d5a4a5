from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple
import json

from dynamics.lattice import LatticePoint


class Solution(NamedTuple):
    """A (code, state sequence) pair; noise realizations with equal floors are one solution"""
    code: Tuple[int, ...]
    states: Tuple[LatticePoint, ...]


@dataclass(frozen=True)
class InversionResult:
    solutions: Tuple[Solution, ...]
    nodes_expanded: int
    wall_time: float
    exhausted: bool
    method: str
    trials: Optional[int] = None
    hits: Optional[int] = None

    @property
    def hit_rate(self) -> Optional[float]:
        if self.trials is None:
            return None
        return self.hits / self.trials if self.trials else 0.0

    def solution_set(self):
        return frozenset(self.solutions)


def solutions_to_jsonl(result: InversionResult) -> str:
    """One {"code": [...], "states": [[x, y], ...]} object per line"""
    lines = [json.dumps({'code': list(s.code), 'states': [[p.x, p.y] for p in s.states]})
             for s in result.solutions]
    return '\n'.join(lines) + ('\n' if lines else '')
