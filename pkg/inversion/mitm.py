"""
Meet-in-the-middle inversion

Forward: every (prefix code, prefix path) of length n // 2 from x0, keyed by
the meeting state. Backward: every (suffix code, suffix path) of the remaining
length ending at the target, grown one layer at a time through preimage_set.
The backward window is the forward-invariant box of the instance, so any
state a valid path can visit is inside it and the join is complete.
"""

from collections import defaultdict
from typing import Dict, List, Tuple
import logging
import time

from config import get_config
from dynamics.lattice import LatticePoint, Window
from dynamics.step import branch_ranges, invariant_window, preimage_set
from errors import CapExceeded, InvalidInstance, WindowOverflow
from inversion.result import InversionResult, Solution
from inversion.verifier import verify_path
from pathspace.instance import SpipInstance

logger = logging.getLogger(__name__)

Half = Dict[LatticePoint, List[Tuple[Tuple[int, ...], Tuple[LatticePoint, ...]]]]


def _forward_half(inst: SpipInstance, depth: int, cap: int) -> Tuple[Half, int]:
    frontier: Half = {inst.x0: [((), (inst.x0,))]}
    nodes = 1
    for _ in range(depth):
        nxt: Half = defaultdict(list)
        stored = 0
        for state, prefixes in frontier.items():
            for symbol in inst.ts.symbols:
                x_lo, x_hi, y_lo, y_hi = branch_ranges(inst.ts[symbol], state, inst.noise)
                for px in range(x_lo, x_hi + 1):
                    for py in range(y_lo, y_hi + 1):
                        point = LatticePoint(px, py)
                        bucket = nxt[point]
                        for code, states in prefixes:
                            bucket.append((code + (symbol,), states + (point,)))
                        stored += len(prefixes)
                        nodes += len(prefixes)
            if stored > cap:
                raise CapExceeded(cap, stored, 'MITM forward half')
        frontier = nxt
    return frontier, nodes


def backward_window(inst: SpipInstance, max_window: int) -> Window:
    window = invariant_window(inst.ts, inst.noise, inst.x0)
    if window.side > max_window:
        raise WindowOverflow(window.side, max_window)
    return window


def _backward_half(inst: SpipInstance, depth: int, window: Window, cap: int) -> Tuple[Half, int]:
    target = inst.require_target()
    frontier: Half = {target: [((), ())]}
    if not window.contains(target):
        return {}, 0
    nodes = 0
    preimages: Dict[Tuple[LatticePoint, int], frozenset] = {}
    for layer in range(depth):
        nxt: Half = defaultdict(list)
        stored = 0
        for point, suffixes in frontier.items():
            for symbol in inst.ts.symbols:
                key = (point, symbol)
                sources = preimages.get(key)
                if sources is None:
                    sources = preimage_set(inst.ts[symbol], point, inst.noise, window)
                    preimages[key] = sources
                nodes += 1
                for source in sources:
                    bucket = nxt[source]
                    for code, states in suffixes:
                        bucket.append(((symbol,) + code, (point,) + states))
                    stored += len(suffixes)
            if stored > cap:
                raise CapExceeded(cap, stored, 'MITM backward half')
        frontier = nxt
        if frontier:
            box = Window.bounding(frontier)
            logger.debug(f"Backward layer {layer + 1}: {len(frontier)} states, "
                         f"bounding side {box.side} inside window side {window.side}")
    return frontier, nodes


def invert_mitm(inst: SpipInstance, cap: int = None, max_window: int = None) -> InversionResult:
    """Join a forward prefix frontier with a backward suffix frontier at depth n // 2"""
    config = get_config()
    cap = config.ENUMERATION_CAP if cap is None else cap
    max_window = config.MITM_MAX_WINDOW if max_window is None else max_window
    inst.require_target()
    if inst.n < 2:
        raise InvalidInstance(f"meet-in-the-middle needs n >= 2, got {inst.n}")
    started = time.perf_counter()
    middle = inst.n // 2

    try:
        window = backward_window(inst, max_window)
        forward, forward_nodes = _forward_half(inst, middle, cap)
        backward, backward_nodes = _backward_half(inst, inst.n - middle, window, cap)
    except (CapExceeded, WindowOverflow) as e:
        logger.error(f"Error in MITM inversion: {e}")
        raise

    solutions = set()
    for state in forward.keys() & backward.keys():
        for prefix_code, prefix_states in forward[state]:
            for suffix_code, suffix_states in backward[state]:
                code = prefix_code + suffix_code
                states = prefix_states + suffix_states
                if not verify_path(inst, code, states):
                    raise AssertionError(f"MITM join produced an invalid path {code}")
                solutions.add(Solution(code, states))
                if len(solutions) > cap:
                    raise CapExceeded(cap, len(solutions), 'MITM join')

    elapsed = time.perf_counter() - started
    nodes = forward_nodes + backward_nodes
    logger.info(f"MITM inversion: {len(solutions)} solutions, {len(forward)} forward / "
                f"{len(backward)} backward meeting states, {elapsed:.3f}s")
    return InversionResult(tuple(sorted(solutions)), nodes, elapsed, True, 'mitm')
