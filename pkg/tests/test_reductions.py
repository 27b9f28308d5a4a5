import json
from itertools import product

import numpy as np
import pytest

from dynamics import branch_set
from errors import InvalidGraph, InvalidInstance, NotAcyclic, ParseError
from reductions import (
    Dag, TransitionSystem, VertexEmbedding, decide_reachability, dag_path_count_oracle, embed_dag,
    embed_transition_system, parse_dag, random_dag, random_transition_system, reachability_oracle,
    report_to_json, verify_dag_embedding,
)
from pathspace import count_paths_to

DIAMOND = Dag(4, ((0, 1), (0, 2), (1, 3), (2, 3)), 0, 3)
SINGLE_EDGE = Dag(2, ((0, 1),), 0, 1)


def brute_force_counts(dag: Dag):
    counts = {}
    graph = dag.adjacency

    def walk(vertex, length):
        if vertex == dag.sink:
            counts[length] = counts.get(length, 0) + 1
            return
        for nxt in graph[vertex]:
            walk(nxt, length + 1)

    walk(dag.source, 0)
    return dict(sorted(counts.items()))


class TestGraphs:
    def test_parse_diamond_file(self, diamond_path):
        assert parse_dag(diamond_path.read_text()) == DIAMOND

    def test_parse_reports_line(self):
        with pytest.raises(ParseError) as info:
            parse_dag("3 2\n0 2\n0 1\n1 x\n")
        assert info.value.position == "line 4"

    def test_parse_edge_count_mismatch(self):
        with pytest.raises(ParseError):
            parse_dag("3 3\n0 2\n0 1\n1 2\n")

    def test_source_equals_sink(self):
        with pytest.raises(InvalidGraph):
            Dag(2, ((0, 1),), 0, 0)

    def test_cycle_detected(self):
        with pytest.raises(NotAcyclic):
            dag_path_count_oracle(Dag(3, ((0, 1), (1, 2), (2, 1)), 0, 2))

    def test_random_dag_is_acyclic(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            dag = random_dag(8, 0.4, rng)
            assert len(dag.topological_order()) == 8


class TestOracles:
    def test_diamond(self):
        assert dag_path_count_oracle(DIAMOND) == {2: 2}

    def test_chain(self):
        chain = Dag(6, tuple((i, i + 1) for i in range(5)), 0, 5)
        assert dag_path_count_oracle(chain) == {5: 1}

    def test_complete_layered(self):
        edges = [(0, 1), (0, 2)] + list(product((1, 2), (3, 4))) + [(3, 5), (4, 5)]
        dag = Dag(6, tuple(edges), 0, 5)
        assert dag_path_count_oracle(dag) == brute_force_counts(dag) == {3: 4}

    def test_matches_brute_force_on_random_dags(self):
        rng = np.random.default_rng(1)
        for _ in range(30):
            dag = random_dag(int(rng.integers(3, 8, endpoint=True)), 0.4, rng)
            assert dag_path_count_oracle(dag) == brute_force_counts(dag)

    def test_reachability_direct_edge(self):
        assert reachability_oracle(TransitionSystem(2, ((0, 1),), 0, 1, 1))

    def test_reachability_disconnected(self):
        assert not reachability_oracle(TransitionSystem(3, ((0, 1),), 0, 2, 5))

    def test_reachability_horizon_too_short(self):
        chain = TransitionSystem(4, ((0, 1), (1, 2), (2, 3)), 0, 3, 2)
        assert not reachability_oracle(chain)


class TestDagEmbedding:
    def test_diamond(self):
        encoding = embed_dag(DIAMOND)
        assert encoding.report.passed
        assert sum(count_paths_to(inst) for inst in encoding.family.values()) == 2
        assert sorted(encoding.family) == [2]

    def test_edges_land_exactly(self):
        encoding = embed_dag(DIAMOND)
        phi = encoding.embedding.phi
        for symbol, (u, v) in enumerate(DIAMOND.edges, start=1):
            noise = encoding.family[2].noise
            assert branch_set(encoding.ts[symbol], phi[u], noise) == {phi[v]}

    def test_single_edge(self):
        encoding = embed_dag(SINGLE_EDGE)
        assert encoding.report.passed
        assert encoding.report.spip == {1: 1}

    def test_embedding_spacing(self):
        phi = embed_dag(DIAMOND).embedding
        for i, p in enumerate(phi.phi):
            for q in phi.phi[i + 1:]:
                assert max(abs(p.x - q.x), abs(p.y - q.y)) >= phi.spacing

    def test_rejects_close_points(self):
        with pytest.raises(InvalidInstance):
            VertexEmbedding(((0, 0), (1, 0)), 2)

    def test_epsilon_must_stay_below_half(self):
        with pytest.raises(InvalidInstance):
            embed_dag(DIAMOND, epsilon="1/2")

    def test_no_path_gives_empty_family(self):
        dag = Dag(3, ((0, 1),), 0, 2)
        encoding = embed_dag(dag)
        assert encoding.family == {}
        assert encoding.report.passed

    def test_adjacent_placement_fails_or_passes_honestly(self):
        layout = VertexEmbedding(((0, 0), (1, 0), (0, 1), (1, 1)), 1)
        encoding = embed_dag(DIAMOND, embedding=layout)
        report = encoding.report
        assert report.passed or report.counterexamples or report.total_spip < report.total_oracle
        for example in report.counterexamples:
            assert not encoding.is_edge_consistent(example.code)

    def test_seeded_random_dags_match_oracle(self):
        rng = np.random.default_rng(2024)
        for index in range(10):
            dag = random_dag(int(rng.integers(4, 8, endpoint=True)), 0.3, rng)
            encoding = embed_dag(dag, seed=index, rounds=3)
            assert encoding.report.passed
            assert encoding.report.rounds <= 3
            total = sum(count_paths_to(inst) for inst in encoding.family.values())
            assert total == sum(dag_path_count_oracle(dag).values())

    def test_threads_do_not_change_report(self):
        single = report_to_json(verify_dag_embedding(DIAMOND, embed_dag(DIAMOND, verify=False), threads=1))
        for threads in (4, 8):
            encoding = embed_dag(DIAMOND, verify=False)
            assert report_to_json(verify_dag_embedding(DIAMOND, encoding, threads=threads)) == single

    def test_report_json(self):
        doc = json.loads(report_to_json(embed_dag(DIAMOND).report))
        assert doc['passed'] is True
        assert doc['total_oracle'] == doc['total_spip'] == "2"


class TestReachability:
    def test_direct_transition(self):
        system = TransitionSystem(2, ((0, 1),), 0, 1, 1)
        answer = decide_reachability(system)
        assert answer.reachable
        assert answer.witness == ((0, 1),)

    def test_no_transitions(self):
        system = TransitionSystem(2, (), 0, 1, 3)
        assert embed_transition_system(system).instance is None
        assert not decide_reachability(system).reachable

    def test_horizon_too_short(self):
        chain = TransitionSystem(4, ((0, 1), (1, 2), (2, 3)), 0, 3, 2)
        assert not decide_reachability(chain).reachable
        assert decide_reachability(TransitionSystem(4, chain.transitions, 0, 3, 3)).length == 3

    def test_instance_targets_embedded_states(self):
        system = TransitionSystem(3, ((0, 1), (1, 2)), 0, 2, 2)
        encoding = embed_transition_system(system)
        assert encoding.instance.x0 == encoding.embedding.phi[0]
        assert encoding.instance.target == encoding.embedding.phi[2]
        assert encoding.instance.n == 2

    def test_agrees_with_bfs_on_seeded_systems(self):
        rng = np.random.default_rng(77)
        for index in range(20):
            system = random_transition_system(5, 0.3, int(rng.integers(1, 4, endpoint=True)), rng)
            answer = decide_reachability(system, seed=index)
            assert answer.reachable == reachability_oracle(system)
            if answer.reachable:
                at = system.s0
                for u, v in answer.witness:
                    assert u == at
                    at = v
                assert at == system.st
