"""
Exhaustive path-space enumeration and layered counting

Enumeration walks every code in Sigma^n and every rounding outcome at every
step (DFS); counting runs a layered DP over reachable state sets. The two are
independent implementations and must agree on every endpoint.
"""

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple
import json
import logging

from config import get_config
from dynamics.lattice import LatticePoint
from dynamics.scalar import format_scalar
from dynamics.step import branch_ranges, branch_size
from errors import CapExceeded, InvalidInstance
from pathspace.bounds import product_bound
from pathspace.instance import SpipInstance

logger = logging.getLogger(__name__)

Path = Tuple[Tuple[int, ...], Tuple[LatticePoint, ...]]


@dataclass(frozen=True)
class BranchStats:
    minimum: int
    maximum: int
    mean: Fraction


@dataclass(frozen=True)
class PathSpaceCensus:
    """Exact record of the (code, rounded path) pairs of one instance"""
    n: int
    m: int
    total_pairs: int
    endpoints: Dict[LatticePoint, int]
    per_step_branch_min: int
    per_step_branch_max: int
    per_step_branch_mean: Fraction
    paths: Tuple[Path, ...] = field(default=())
    paths_truncated: bool = False

    @property
    def observed_bound(self) -> int:
        """(m * observed min branch)^n, the growth bound restated on visited states"""
        return (self.m * self.per_step_branch_min) ** self.n


class _PathWalker:
    """DFS below one fixed first symbol"""

    def __init__(self, inst: SpipInstance, cap: int, retain: int):
        self.inst = inst
        self.cap = cap
        self.retain = retain
        self.total = 0
        self.endpoints: Counter = Counter()
        self.visited: Set[LatticePoint] = set()
        self.paths: List[Path] = []
        self.truncated = False
        self._ranges: Dict[Tuple[LatticePoint, int], Tuple[int, int, int, int]] = {}

    def _branch(self, state: LatticePoint, symbol: int):
        key = (state, symbol)
        ranges = self._ranges.get(key)
        if ranges is None:
            ranges = branch_ranges(self.inst.ts[symbol], state, self.inst.noise)
            self._ranges[key] = ranges
        return ranges

    def run(self, first_symbol: int) -> '_PathWalker':
        self._walk(0, self.inst.x0, [], [self.inst.x0], (first_symbol,))
        return self

    def _walk(self, depth, state, code, states, symbols):
        if depth == self.inst.n:
            self.total += 1
            self.endpoints[state] += 1
            if len(self.paths) < self.retain:
                self.paths.append((tuple(code), tuple(states)))
            else:
                self.truncated = True
            if self.total > self.cap:
                raise CapExceeded(self.cap, self.total, 'path enumeration')
            return
        self.visited.add(state)
        for symbol in symbols:
            x_lo, x_hi, y_lo, y_hi = self._branch(state, symbol)
            code.append(symbol)
            for px in range(x_lo, x_hi + 1):
                for py in range(y_lo, y_hi + 1):
                    nxt = LatticePoint(px, py)
                    states.append(nxt)
                    self._walk(depth + 1, nxt, code, states, self.inst.ts.symbols)
                    states.pop()
            code.pop()


def branching_stats(inst: SpipInstance, states: Iterable[LatticePoint]) -> BranchStats:
    """Exact min / max / mean branch size over states x all symbols"""
    sizes = [branch_size(affine, LatticePoint(*s), inst.noise)
             for s in set(states) for affine in inst.ts.maps]
    if not sizes:
        raise InvalidInstance("branching statistics need at least one state")
    return BranchStats(min(sizes), max(sizes), Fraction(sum(sizes), len(sizes)))


def enumerate_paths(inst: SpipInstance, cap: Optional[int] = None,
                    retain: Optional[int] = None, threads: Optional[int] = None) -> PathSpaceCensus:
    """DFS over every code and every rounding outcome; exact endpoint histogram"""
    config = get_config()
    cap = config.ENUMERATION_CAP if cap is None else cap
    retain = config.RETAINED_PATHS if retain is None else retain
    threads = config.THREADS if threads is None else threads

    if inst.n == 0:
        stats = branching_stats(inst, [inst.x0])
        return PathSpaceCensus(0, inst.m, 1, {inst.x0: 1}, stats.minimum, stats.maximum,
                               stats.mean, paths=(((), (inst.x0,)),) if retain > 0 else (),
                               paths_truncated=retain == 0)

    bound = product_bound(inst)
    if bound > cap:
        logger.warning(f"A-priori bound {bound} is above cap {cap}; enumeration may abort")

    def explore(symbol):
        return _PathWalker(inst, cap, retain).run(symbol)

    try:
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                walkers = list(pool.map(explore, inst.ts.symbols))
        else:
            walkers = [explore(symbol) for symbol in inst.ts.symbols]
    except CapExceeded as e:
        logger.error(f"Error enumerating paths: {e}")
        raise

    total = sum(w.total for w in walkers)
    if total > cap:
        logger.error(f"Error enumerating paths: total {total} above cap {cap}")
        raise CapExceeded(cap, total, 'path enumeration')

    endpoints: Counter = Counter()
    visited: Set[LatticePoint] = set()
    paths: List[Path] = []
    truncated = False
    for walker in walkers:
        endpoints.update(walker.endpoints)
        visited |= walker.visited
        room = retain - len(paths)
        paths.extend(walker.paths[:max(room, 0)])
        truncated = truncated or walker.truncated or len(walker.paths) > room

    stats = branching_stats(inst, visited)
    logger.info(f"Enumerated {total} pairs over {len(endpoints)} endpoints "
                f"(branch min={stats.minimum}, max={stats.maximum})")
    return PathSpaceCensus(
        n=inst.n,
        m=inst.m,
        total_pairs=total,
        endpoints=dict(sorted(endpoints.items())),
        per_step_branch_min=stats.minimum,
        per_step_branch_max=stats.maximum,
        per_step_branch_mean=stats.mean,
        paths=tuple(paths),
        paths_truncated=truncated,
    )


def _advance(inst: SpipInstance, layer: Dict[LatticePoint, int], cap: int) -> Dict[LatticePoint, int]:
    nxt: Counter = Counter()
    for state, count in layer.items():
        for affine in inst.ts.maps:
            x_lo, x_hi, y_lo, y_hi = branch_ranges(affine, state, inst.noise)
            for px in range(x_lo, x_hi + 1):
                for py in range(y_lo, y_hi + 1):
                    nxt[LatticePoint(px, py)] += count
        if len(nxt) > cap:
            raise CapExceeded(cap, len(nxt), 'DP layer')
    return nxt


def forward_layers(inst: SpipInstance, steps: int, cap: Optional[int] = None) -> List[Dict[LatticePoint, int]]:
    """Layer i maps each state reachable in i steps to its (code, path) multiplicity"""
    cap = get_config().ENUMERATION_CAP if cap is None else cap
    layers = [{inst.x0: 1}]
    for depth in range(steps):
        layers.append(_advance(inst, layers[-1], cap))
        logger.debug(f"DP layer {depth + 1}: {len(layers[-1])} states")
    return layers


def endpoint_distribution(inst: SpipInstance, cap: Optional[int] = None) -> Dict[LatticePoint, int]:
    """Full endpoint histogram by layered DP"""
    return dict(sorted(forward_layers(inst, inst.n, cap)[-1].items()))


def count_paths_to(inst: SpipInstance, cap: Optional[int] = None) -> int:
    """Exact number of (code, path) pairs ending at the instance target"""
    target = inst.require_target()
    if inst.n == 0:
        return int(inst.x0 == target)
    layer = forward_layers(inst, inst.n - 1, cap)[-1]
    total = 0
    for state, count in layer.items():
        for affine in inst.ts.maps:
            x_lo, x_hi, y_lo, y_hi = branch_ranges(affine, state, inst.noise)
            if x_lo <= target.x <= x_hi and y_lo <= target.y <= y_hi:
                total += count
    logger.info(f"Counted {total} pairs ending at {tuple(target)} (n={inst.n})")
    return total


def census_to_json(census: PathSpaceCensus) -> str:
    return json.dumps({
        'n': census.n,
        'm': census.m,
        'total_pairs': str(census.total_pairs),
        'endpoints': [[p.x, p.y, str(c)] for p, c in census.endpoints.items()],
        'branch_min': format_scalar(Fraction(census.per_step_branch_min)),
        'branch_max': format_scalar(Fraction(census.per_step_branch_max)),
        'branch_mean': format_scalar(census.per_step_branch_mean),
        'observed_bound': str(census.observed_bound),
    })
