"""
Graph inputs of the two reductions: DAGs for path counting and finite
transition systems for reachability
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from errors import InvalidGraph, NotAcyclic, ParseError

Edge = Tuple[int, int]


def _check_vertices(count: int, edges, named):
    if count < 1:
        raise InvalidGraph(f"vertex count must be positive, got {count}")
    for u, v in edges:
        if not (0 <= u < count and 0 <= v < count):
            raise InvalidGraph(f"edge ({u}, {v}) outside [0, {count})")
    for label, vertex in named:
        if not 0 <= vertex < count:
            raise InvalidGraph(f"{label} vertex {vertex} outside [0, {count})")
    if len(set(edges)) != len(edges):
        raise InvalidGraph("duplicate edges")


@dataclass(frozen=True)
class Dag:
    vertex_count: int
    edges: Tuple[Edge, ...]
    source: int
    sink: int

    def __post_init__(self):
        object.__setattr__(self, 'edges', tuple((int(u), int(v)) for u, v in self.edges))
        _check_vertices(self.vertex_count, self.edges, [('source', self.source), ('sink', self.sink)])
        if self.source == self.sink:
            raise InvalidGraph("source and sink must differ")

    @property
    def adjacency(self) -> Dict[int, List[int]]:
        graph = {v: [] for v in range(self.vertex_count)}
        for u, v in self.edges:
            graph[u].append(v)
        return graph

    def topological_order(self) -> List[int]:
        """Kahn's algorithm; NotAcyclic when some vertex never reaches in-degree zero"""
        graph = self.adjacency
        in_degree = {node: 0 for node in graph}
        for node in graph:
            for neighbor in graph[node]:
                in_degree[neighbor] += 1
        queue = deque(node for node in sorted(in_degree) if in_degree[node] == 0)
        order = []
        while queue:
            node = queue.popleft()
            order.append(node)
            for neighbor in graph[node]:
                in_degree[neighbor] -= 1
                if in_degree[neighbor] == 0:
                    queue.append(neighbor)
        if len(order) != len(graph):
            raise NotAcyclic(f"graph has a cycle through {len(graph) - len(order)} vertices")
        return order


@dataclass(frozen=True)
class TransitionSystem:
    """(S, T, s0, st) with a horizon n on the transition count"""
    state_count: int
    transitions: Tuple[Edge, ...]
    s0: int
    st: int
    horizon: int

    def __post_init__(self):
        object.__setattr__(self, 'transitions', tuple((int(u), int(v)) for u, v in self.transitions))
        _check_vertices(self.state_count, self.transitions, [('s0', self.s0), ('st', self.st)])
        if self.horizon < 0:
            raise InvalidGraph(f"horizon must be >= 0, got {self.horizon}")


def parse_dag(text: str) -> Dag:
    """Read "V E / s t / u v ..." (0-indexed, whitespace separated)"""
    rows = [(number, line.split()) for number, line in enumerate(text.splitlines(), start=1)
            if line.strip() and not line.lstrip().startswith('#')]

    def ints(number, fields, expected):
        if len(fields) != expected:
            raise ParseError(f"expected {expected} integers, found {len(fields)}", f"line {number}")
        try:
            return [int(f) for f in fields]
        except ValueError as e:
            raise ParseError(f"not an integer ({e})", f"line {number}")

    if len(rows) < 2:
        raise ParseError("need a 'V E' header and an 's t' line", "line 1")
    vertex_count, edge_count = ints(*rows[0], 2)
    source, sink = ints(*rows[1], 2)
    edge_rows = rows[2:]
    if len(edge_rows) != edge_count:
        position = f"line {edge_rows[-1][0] if edge_rows else rows[1][0]}"
        raise ParseError(f"header announces {edge_count} edges, found {len(edge_rows)}", position)
    edges = [tuple(ints(number, fields, 2)) for number, fields in edge_rows]
    try:
        return Dag(vertex_count, tuple(edges), source, sink)
    except InvalidGraph as e:
        raise ParseError(str(e), f"line {rows[0][0]}")


def random_dag(vertices: int, edge_probability: float, rng: np.random.Generator) -> Dag:
    """Random DAG on 0..V-1 with edges only from lower to higher index; s = 0, t = V-1"""
    edges = [(u, v) for u in range(vertices) for v in range(u + 1, vertices)
             if rng.random() < edge_probability]
    return Dag(vertices, tuple(edges), 0, vertices - 1)


def random_transition_system(states: int, transition_probability: float, horizon: int,
                             rng: np.random.Generator) -> TransitionSystem:
    transitions = [(u, v) for u in range(states) for v in range(states)
                   if u != v and rng.random() < transition_probability]
    s0, st = (int(x) for x in rng.choice(states, size=2, replace=False))
    return TransitionSystem(states, tuple(transitions), s0, st, horizon)
