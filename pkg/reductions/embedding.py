"""
Encode DAG path counting and bounded reachability as SPIP instances

Every vertex v gets a lattice point phi(v) on a D-spaced grid. Each edge (u, v)
becomes the map x -> x / 2 + b with b = phi(v) + (1/2, 1/2) - phi(u) / 2, so
phi(u) lands at the centre of the unit cell above phi(v) and, for epsilon < 1/2,
rounds to phi(v) and nothing else. D is a power of two of at least 2^(L + 3)
for path length L, which keeps every visited state on the even sublattice and
every branch a singleton, so counts stay exact.

Cross-talk (a code that is not a chain of edges still landing on the target)
is caught by comparing exact SPIP counts with the graph oracle; placements
that show it are thrown away and resampled on a sparser grid.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple
import json
import logging

import numpy as np

from config import get_config
from dynamics.affine import NoiseBound, TransformSet, make_affine_map
from dynamics.lattice import LatticePoint
from dynamics.scalar import to_scalar
from dynamics.step import branch_set
from errors import InvalidInstance, SpacingTooSmall
from inversion.dfs import invert_dfs
from pathspace.census import count_paths_to
from pathspace.instance import SpipInstance
from reductions.graph import Dag, Edge, TransitionSystem
from reductions.oracles import dag_path_count_oracle

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)
DEFAULT_EPSILON = Fraction(1, 4)


@dataclass(frozen=True)
class VertexEmbedding:
    """Injective vertex -> lattice placement with pairwise L-infinity distance >= spacing"""
    phi: Tuple[LatticePoint, ...]
    spacing: int

    def __post_init__(self):
        object.__setattr__(self, 'phi', tuple(LatticePoint(*p) for p in self.phi))
        if self.spacing < 1:
            raise InvalidInstance(f"spacing must be positive, got {self.spacing}")
        for i, p in enumerate(self.phi):
            for q in self.phi[i + 1:]:
                if max(abs(p.x - q.x), abs(p.y - q.y)) < self.spacing:
                    raise InvalidInstance(f"points {tuple(p)} and {tuple(q)} closer than {self.spacing}")

    def vertex_at(self, point: LatticePoint) -> Optional[int]:
        try:
            return self.phi.index(point)
        except ValueError:
            return None


@dataclass(frozen=True)
class CrossTalk:
    """A non edge-consistent code reaching the target; visits lists (step, vertex) hits on phi"""
    length: int
    code: Tuple[int, ...]
    states: Tuple[LatticePoint, ...]
    visits: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class EmbeddingReport:
    passed: bool
    oracle: Dict[int, int]
    spip: Dict[int, int]
    counterexamples: Tuple[CrossTalk, ...] = ()
    rounds: int = 0

    @property
    def total_oracle(self) -> int:
        return sum(self.oracle.values())

    @property
    def total_spip(self) -> int:
        return sum(self.spip.values())


@dataclass(frozen=True)
class DagEncoding:
    """One map per edge plus one instance per s -> t path length; an edgeless DAG has neither"""
    dag: Dag
    embedding: VertexEmbedding
    ts: Optional[TransformSet]
    family: Dict[int, SpipInstance]
    report: Optional[EmbeddingReport] = field(default=None, compare=False)

    def edge_of(self, symbol: int) -> Edge:
        return self.dag.edges[symbol - 1]

    def is_edge_consistent(self, code: Sequence[int]) -> bool:
        return _edge_chain(self.dag.edges, code, self.dag.source, self.dag.sink)


@dataclass(frozen=True)
class TransitionEncoding:
    """A system without transitions has no transform set and no instance"""
    system: TransitionSystem
    embedding: VertexEmbedding
    ts: Optional[TransformSet]
    instance: Optional[SpipInstance]

    def is_edge_consistent(self, code: Sequence[int]) -> bool:
        return _edge_chain(self.system.transitions, code, self.system.s0, self.system.st)


@dataclass(frozen=True)
class ReachabilityAnswer:
    reachable: bool
    length: Optional[int]
    witness: Tuple[Edge, ...]
    rounds: int


def _edge_chain(edges, code, start, end) -> bool:
    at = start
    for symbol in code:
        u, v = edges[symbol - 1]
        if u != at:
            return False
        at = v
    return at == end


def default_spacing(depth: int) -> int:
    return 2 ** (depth + 3)


def _check_epsilon(epsilon) -> Fraction:
    epsilon = to_scalar(epsilon)
    if not 0 <= epsilon < HALF:
        raise InvalidInstance(f"centered landing needs 0 <= epsilon < 1/2, got {epsilon}")
    return epsilon


def place_vertices(count: int, spacing: int, grid: int, rng: np.random.Generator) -> VertexEmbedding:
    """Distinct random cells of a grid x grid board, scaled by spacing"""
    cells = rng.choice(grid * grid, size=count, replace=False)
    return VertexEmbedding(tuple(LatticePoint(spacing * int(c % grid), spacing * int(c // grid))
                                 for c in cells), spacing)


def edge_map(source: LatticePoint, dest: LatticePoint):
    """A = I / 2 and b chosen so source lands on dest + (1/2, 1/2)"""
    return make_affine_map([[HALF, 0], [0, HALF]],
                           [dest.x + HALF - HALF * source.x, dest.y + HALF - HALF * source.y])


def _encode(edges: Sequence[Edge], embedding: VertexEmbedding, noise: NoiseBound) -> TransformSet:
    maps = []
    for u, v in edges:
        affine = edge_map(embedding.phi[u], embedding.phi[v])
        landing = branch_set(affine, embedding.phi[u], noise)
        if landing != {embedding.phi[v]}:
            raise SpacingTooSmall(f"edge ({u}, {v}) rounds to {sorted(landing)}, not {tuple(embedding.phi[v])}")
        maps.append(affine)
    return TransformSet(tuple(maps))


def _grid_side(count: int, attempt: int) -> int:
    return 8 * max(count, 2) * 2 ** attempt


def _build_dag_encoding(dag: Dag, oracle: Dict[int, int], embedding: VertexEmbedding,
                        noise: NoiseBound) -> DagEncoding:
    if not dag.edges:
        return DagEncoding(dag, embedding, None, {})
    ts = _encode(dag.edges, embedding, noise)
    family = {}
    if oracle:
        x0, target = embedding.phi[dag.source], embedding.phi[dag.sink]
        for length in range(min(oracle), max(oracle) + 1):
            family[length] = SpipInstance(ts, noise, length, x0, target)
    return DagEncoding(dag, embedding, ts, family)


def embed_dag(dag: Dag, spacing: Optional[int] = None, epsilon=DEFAULT_EPSILON, seed: int = 0,
              rounds: Optional[int] = None, verify: bool = True,
              embedding: Optional[VertexEmbedding] = None, cap: Optional[int] = None,
              threads: Optional[int] = None) -> DagEncoding:
    """
    Build the per-length instance family for counting s -> t paths.

    With verify, each placement is checked by verify_dag_embedding and replaced
    (new seed, doubled spacing, doubled grid) up to `rounds` times; the accepted
    report is attached to the result. A given embedding is used as is.
    """
    noise = NoiseBound(_check_epsilon(epsilon))
    rounds = get_config().EMBED_ROUNDS if rounds is None else rounds
    oracle = dag_path_count_oracle(dag)
    spacing = default_spacing(max(oracle, default=0)) if spacing is None else spacing

    if embedding is not None:
        encoding = _build_dag_encoding(dag, oracle, embedding, noise)
        if verify:
            encoding = replace(encoding, report=verify_dag_embedding(dag, encoding, cap, threads))
        return encoding

    for attempt in range(rounds + 1):
        rng = np.random.default_rng([seed, attempt])
        placed = place_vertices(dag.vertex_count, spacing * 2 ** attempt,
                                _grid_side(dag.vertex_count, attempt), rng)
        encoding = _build_dag_encoding(dag, oracle, placed, noise)
        if not verify:
            return encoding
        report = verify_dag_embedding(dag, encoding, cap, threads)
        if report.passed:
            logger.info(f"DAG embedding accepted after {attempt} resampling rounds "
                        f"(spacing {placed.spacing}, total paths {report.total_oracle})")
            return replace(encoding, report=replace(report, rounds=attempt))
        logger.warning(f"DAG embedding round {attempt} rejected: SPIP {report.spip} vs oracle {report.oracle}")

    error = SpacingTooSmall(f"cross-talk persisted after {rounds} resampling rounds")
    logger.error(f"Error embedding DAG: {error}")
    raise error


def _cross_talk(encoding: DagEncoding, inst: SpipInstance, expected: int, cap) -> List[CrossTalk]:
    found = invert_dfs(inst, max_solutions=expected + 4, cap=cap, threads=1)
    examples = []
    for solution in found.solutions:
        if encoding.is_edge_consistent(solution.code):
            continue
        visits = []
        for step, state in enumerate(solution.states[1:-1], start=1):
            vertex = encoding.embedding.vertex_at(state)
            if vertex is not None:
                visits.append((step, vertex))
        examples.append(CrossTalk(inst.n, solution.code, solution.states, tuple(visits)))
    return examples


def verify_dag_embedding(dag: Dag, encoding: DagEncoding, cap: Optional[int] = None,
                         threads: Optional[int] = None) -> EmbeddingReport:
    """Compare per-length SPIP counts with the DP oracle; surplus codes become counterexamples"""
    threads = get_config().THREADS if threads is None else threads
    oracle = dag_path_count_oracle(dag)
    lengths = sorted(encoding.family)

    def count(length):
        return count_paths_to(encoding.family[length], cap)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(count, lengths))
    else:
        counts = [count(length) for length in lengths]
    spip = {length: c for length, c in zip(lengths, counts) if c}

    counterexamples: List[CrossTalk] = []
    for length, c in zip(lengths, counts):
        expected = oracle.get(length, 0)
        if c > expected:
            counterexamples.extend(_cross_talk(encoding, encoding.family[length], expected, cap))
    passed = spip == oracle
    logger.info(f"DAG embedding check: oracle total {sum(oracle.values())}, "
                f"SPIP total {sum(spip.values())}, passed={passed}")
    return EmbeddingReport(passed, oracle, spip, tuple(counterexamples))


def embed_transition_system(system: TransitionSystem, epsilon=DEFAULT_EPSILON,
                            spacing: Optional[int] = None, seed: int = 0,
                            attempt: int = 0) -> TransitionEncoding:
    """One map per transition; the instance asks for phi(s0) -> phi(st) in `horizon` steps"""
    noise = NoiseBound(_check_epsilon(epsilon))
    spacing = default_spacing(system.horizon) if spacing is None else spacing
    rng = np.random.default_rng([seed, attempt])
    embedding = place_vertices(system.state_count, spacing * 2 ** attempt,
                               _grid_side(system.state_count, attempt), rng)
    if not system.transitions:
        return TransitionEncoding(system, embedding, None, None)
    ts = _encode(system.transitions, embedding, noise)
    instance = SpipInstance(ts, noise, system.horizon, embedding.phi[system.s0], embedding.phi[system.st])
    return TransitionEncoding(system, embedding, ts, instance)


def decide_reachability(system: TransitionSystem, epsilon=DEFAULT_EPSILON, spacing: Optional[int] = None,
                        seed: int = 0, rounds: Optional[int] = None,
                        cap: Optional[int] = None) -> ReachabilityAnswer:
    """Search lengths 0..horizon for one valid path; a witness that is not a chain of transitions forces a resample"""
    rounds = get_config().EMBED_ROUNDS if rounds is None else rounds
    if system.s0 == system.st:
        return ReachabilityAnswer(True, 0, (), 0)

    for attempt in range(rounds + 1):
        encoding = embed_transition_system(system, epsilon, spacing, seed, attempt)
        if encoding.instance is None:
            return ReachabilityAnswer(False, None, (), attempt)
        spurious = False
        for length in range(1, system.horizon + 1):
            found = invert_dfs(encoding.instance.with_length(length), max_solutions=1, cap=cap, threads=1)
            if not found.solutions:
                continue
            code = found.solutions[0].code
            if encoding.is_edge_consistent(code):
                witness = tuple(system.transitions[s - 1] for s in code)
                logger.info(f"Reachable in {length} transitions: {witness}")
                return ReachabilityAnswer(True, length, witness, attempt)
            logger.warning(f"Spurious witness {code} at length {length}, resampling placement")
            spurious = True
            break
        if not spurious:
            logger.info(f"Unreachable within horizon {system.horizon}")
            return ReachabilityAnswer(False, None, (), attempt)

    error = SpacingTooSmall(f"spurious witnesses persisted after {rounds} resampling rounds")
    logger.error(f"Error deciding reachability: {error}")
    raise error


def report_to_json(report: EmbeddingReport) -> str:
    return json.dumps({
        'passed': report.passed,
        'rounds': report.rounds,
        'oracle': {str(length): str(c) for length, c in report.oracle.items()},
        'spip': {str(length): str(c) for length, c in report.spip.items()},
        'total_oracle': str(report.total_oracle),
        'total_spip': str(report.total_spip),
        'counterexamples': [
            {
                'length': ex.length,
                'code': list(ex.code),
                'states': [[p.x, p.y] for p in ex.states],
                'visits': [list(v) for v in ex.visits],
            }
            for ex in report.counterexamples
        ],
    })
