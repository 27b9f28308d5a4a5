"""
Graph-theoretic oracles the SPIP encodings are certified against
"""

from collections import Counter, deque
from typing import Dict

from reductions.graph import Dag, TransitionSystem


def dag_path_count_oracle(dag: Dag) -> Dict[int, int]:
    """Number of s -> t paths per length, by DP in topological order"""
    order = dag.topological_order()
    graph = dag.adjacency
    ways = {v: Counter() for v in range(dag.vertex_count)}
    ways[dag.source][0] = 1
    for u in order:
        for v in graph[u]:
            for length, count in ways[u].items():
                ways[v][length + 1] += count
    return {length: count for length, count in sorted(ways[dag.sink].items()) if count}


def reachability_oracle(system: TransitionSystem) -> bool:
    """BFS from s0, bounded by the horizon"""
    return shortest_distance(system) is not None


def shortest_distance(system: TransitionSystem):
    """Fewest transitions from s0 to st within the horizon, or None"""
    if system.s0 == system.st:
        return 0
    graph = {s: [] for s in range(system.state_count)}
    for u, v in system.transitions:
        graph[u].append(v)
    depth = {system.s0: 0}
    queue = deque([system.s0])
    while queue:
        node = queue.popleft()
        if depth[node] >= system.horizon:
            continue
        for neighbor in graph[node]:
            if neighbor not in depth:
                depth[neighbor] = depth[node] + 1
                if neighbor == system.st:
                    return depth[neighbor]
                queue.append(neighbor)
    return None
