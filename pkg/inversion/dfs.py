"""
Depth-first inversion over codes x branch sets

Pruning uses an interval over-approximation of the forward cone: a state is
cut only when the target lies outside a box that provably contains every
state reachable in the remaining steps, so no solution is ever lost.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Tuple
import logging
import time

from config import get_config
from dynamics.affine import NoiseBound, TransformSet
from dynamics.lattice import LatticePoint
from dynamics.step import branch_ranges
from errors import CapExceeded
from inversion.result import InversionResult, Solution
from pathspace.instance import SpipInstance

logger = logging.getLogger(__name__)

Box = Tuple[int, int, int, int]


def reach_box(ts: TransformSet, noise: NoiseBound, state: LatticePoint, steps: int) -> Box:
    """Integer box containing every state reachable from state in exactly steps steps"""
    en, ed = noise.epsilon.numerator, noise.epsilon.denominator
    x_lo = x_hi = state[0]
    y_lo = y_hi = state[1]
    for _ in range(steps):
        bounds = []
        for affine in ts.maps:
            den, (a11, a12, a21, a22), (b1, b2) = affine.integer_form
            scale, shift = den * ed, en * den
            v1_lo = b1 + min(a11 * x_lo, a11 * x_hi) + min(a12 * y_lo, a12 * y_hi)
            v1_hi = b1 + max(a11 * x_lo, a11 * x_hi) + max(a12 * y_lo, a12 * y_hi)
            v2_lo = b2 + min(a21 * x_lo, a21 * x_hi) + min(a22 * y_lo, a22 * y_hi)
            v2_hi = b2 + max(a21 * x_lo, a21 * x_hi) + max(a22 * y_lo, a22 * y_hi)
            bounds.append(((v1_lo * ed - shift) // scale, (v1_hi * ed + shift) // scale,
                           (v2_lo * ed - shift) // scale, (v2_hi * ed + shift) // scale))
        x_lo = min(b[0] for b in bounds)
        x_hi = max(b[1] for b in bounds)
        y_lo = min(b[2] for b in bounds)
        y_hi = max(b[3] for b in bounds)
    return x_lo, x_hi, y_lo, y_hi


class _Stop(Exception):
    pass


class _InversionWalker:
    """DFS below one fixed first symbol"""

    def __init__(self, inst: SpipInstance, max_solutions: Optional[int], cap: int, prune: bool):
        self.inst = inst
        self.target = inst.require_target()
        self.max_solutions = max_solutions
        self.cap = cap
        self.prune = prune
        self.nodes = 0
        self.solutions: List[Solution] = []
        self.complete = False
        self._boxes: Dict[Tuple[LatticePoint, int], Box] = {}

    def _can_reach(self, state: LatticePoint, remaining: int) -> bool:
        key = (state, remaining)
        box = self._boxes.get(key)
        if box is None:
            box = reach_box(self.inst.ts, self.inst.noise, state, remaining)
            self._boxes[key] = box
        return box[0] <= self.target.x <= box[1] and box[2] <= self.target.y <= box[3]

    def run(self, first_symbol: int) -> '_InversionWalker':
        try:
            self._walk(0, self.inst.x0, [], [self.inst.x0], (first_symbol,))
            self.complete = True
        except _Stop:
            pass
        return self

    def _walk(self, depth, state, code, states, symbols):
        self.nodes += 1
        if self.nodes > self.cap:
            raise CapExceeded(self.cap, self.nodes, 'DFS inversion')
        n = self.inst.n
        if depth == n:
            if state == self.target:
                self.solutions.append(Solution(tuple(code), tuple(states)))
                if self.max_solutions is not None and len(self.solutions) >= self.max_solutions:
                    raise _Stop()
            return
        if self.prune and not self._can_reach(state, n - depth):
            return
        for symbol in symbols:
            x_lo, x_hi, y_lo, y_hi = branch_ranges(self.inst.ts[symbol], state, self.inst.noise)
            code.append(symbol)
            for px in range(x_lo, x_hi + 1):
                for py in range(y_lo, y_hi + 1):
                    nxt = LatticePoint(px, py)
                    states.append(nxt)
                    self._walk(depth + 1, nxt, code, states, self.inst.ts.symbols)
                    states.pop()
            code.pop()


def invert_dfs(inst: SpipInstance, max_solutions: Optional[int] = None, cap: Optional[int] = None,
               prune: bool = True, threads: Optional[int] = None) -> InversionResult:
    """Find up to max_solutions valid (code, path) pairs from x0 to the target"""
    config = get_config()
    cap = config.ENUMERATION_CAP if cap is None else cap
    threads = config.THREADS if threads is None else threads
    target = inst.require_target()
    started = time.perf_counter()

    if inst.n == 0:
        found = (Solution((), (inst.x0,)),) if inst.x0 == target else ()
        return InversionResult(found, 1, time.perf_counter() - started, True, 'dfs')

    def explore(symbol):
        return _InversionWalker(inst, max_solutions, cap, prune).run(symbol)

    try:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                walkers = list(pool.map(explore, inst.ts.symbols))
        else:
            walkers = []
            for symbol in inst.ts.symbols:
                walkers.append(explore(symbol))
                found_so_far = sum(len(w.solutions) for w in walkers)
                if max_solutions is not None and found_so_far >= max_solutions:
                    break
    except CapExceeded as e:
        logger.error(f"Error in DFS inversion: {e}")
        raise

    solutions: List[Solution] = []
    for walker in walkers:
        solutions.extend(walker.solutions)
    exhausted = len(walkers) == inst.m and all(w.complete for w in walkers)
    if max_solutions is not None and len(solutions) > max_solutions:
        solutions = solutions[:max_solutions]
        exhausted = False
    nodes = 1 + sum(w.nodes for w in walkers)
    elapsed = time.perf_counter() - started
    logger.info(f"DFS inversion: {len(solutions)} solutions, {nodes} nodes, "
                f"exhausted={exhausted}, {elapsed:.3f}s")
    return InversionResult(tuple(sorted(set(solutions))), nodes, elapsed, exhausted, 'dfs')
