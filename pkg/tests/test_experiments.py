from dataclasses import replace
from fractions import Fraction
from math import ceil, log2

import pytest

from dynamics import LatticePoint, NoiseBound
from errors import EmptyHistogram
from experiments import (
    CSV_HEADER, PUBLISHED_RUNS, RunConfig, default_suite, depth_profile, generate_transform_set,
    grover_cost, replicate_suite, run_metrics, run_suite, sample_endpoints, shannon_entropy,
    suite_to_csv, suite_trends, surface_to_csv, sweep_surface,
)
from pathspace import SpipInstance, endpoint_distribution


class TestEntropy:
    def test_uniform_four(self):
        assert shannon_entropy({'a': 5, 'b': 5, 'c': 5, 'd': 5}) == pytest.approx(2.0)

    def test_single_endpoint(self):
        assert shannon_entropy({'a': 9}) == 0.0

    def test_three_to_one(self):
        assert shannon_entropy({'a': 750, 'b': 250}) == pytest.approx(0.811278, abs=1e-6)

    def test_permutation_invariant(self):
        assert shannon_entropy([1, 2, 3, 4]) == pytest.approx(shannon_entropy([4, 3, 2, 1]))

    def test_empty(self):
        with pytest.raises(EmptyHistogram):
            shannon_entropy({})


class TestRunMetrics:
    def test_single_trial(self):
        metrics = run_metrics(RunConfig(10, 3, "1/4", trials=1))
        assert metrics.entropy_bits == 0.0
        assert metrics.unique_endpoints == 1
        assert metrics.collisions == 0
        assert metrics.most_frequent_count == 1

    def test_deterministic(self):
        cfg = RunConfig(40, 4, "1/10", trials=200, map_seed=5, noise_seed=6)
        assert run_metrics(cfg) == run_metrics(cfg)

    def test_threads_do_not_change_metrics(self):
        cfg = RunConfig(30, 3, "1/4", trials=300, map_seed=1, noise_seed=2)
        single = run_metrics(cfg, threads=1)
        for threads in (4, 8):
            assert run_metrics(cfg, threads=threads) == single

    def test_invariants(self):
        for seed in range(5):
            cfg = RunConfig(25, 2 + seed, Fraction(seed + 1, 10), trials=300, map_seed=seed, noise_seed=seed)
            metrics = run_metrics(cfg)
            assert 0 <= metrics.entropy_bits <= log2(metrics.unique_endpoints) + 1e-12
            assert metrics.collisions <= metrics.unique_endpoints
            assert metrics.symbolic_freedom == pytest.approx(metrics.entropy_bits / log2(cfg.transforms))
            assert metrics.avg_distance >= 0

    def test_generated_maps_contract(self):
        ts = generate_transform_set(12, 3)
        assert ts.m == 12
        for affine in ts.maps:
            assert affine.is_contractive()
            assert all(c.denominator == 2 for c in affine.b)

    def test_sampled_endpoints_are_reachable(self):
        for seed in range(3):
            cfg = RunConfig(4, 3, "2/5", trials=500, map_seed=seed, noise_seed=seed + 10)
            inst = SpipInstance(generate_transform_set(3, seed), NoiseBound(Fraction(2, 5)), 4, LatticePoint(0, 0))
            reachable = endpoint_distribution(inst)
            assert set(sample_endpoints(cfg, threads=1)) <= set(reachable)

    def test_depth_profile_rows(self):
        rows = depth_profile(3, "1/4", [1, 5, 20], trials=200, map_seed=2, noise_seed=3)
        assert [row.steps for row in rows] == [1, 5, 20]
        assert all(row.unique_endpoints >= 1 for row in rows)


class TestPublishedTable:
    def test_freedom_identity_reproduces_every_row(self):
        for row in PUBLISHED_RUNS:
            assert row.entropy_bits / max(log2(row.transforms), 1.0) == pytest.approx(row.symbolic_freedom, abs=0.01)

    def test_default_suite_configs(self):
        triples = [(c.steps, c.transforms, c.epsilon) for c in default_suite()]
        assert triples == [(r.steps, r.transforms, r.epsilon) for r in PUBLISHED_RUNS]
        assert all(c.trials == 1000 for c in default_suite())


class TestSuite:
    def test_csv_header_and_rows(self):
        rows = run_suite(default_suite(trials=50))
        text = suite_to_csv(rows)
        lines = text.splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 9
        for row in rows:
            assert row.metrics.entropy_bits <= log2(row.metrics.unique_endpoints) + 1e-12

    def test_csv_is_thread_independent(self):
        cfgs = [replace(cfg, trials=40) for cfg in default_suite()[:3]]
        single = suite_to_csv(run_suite(cfgs, threads=1))
        for threads in (4, 8):
            assert suite_to_csv(run_suite(cfgs, threads=threads)) == single

    @pytest.mark.slow
    def test_trends_over_replicates(self):
        rows = replicate_suite(default_suite(), 5)
        trends = suite_trends(rows)
        assert trends.entropy_vs_steps > 0.8
        assert trends.freedom_vs_transforms < -0.8
        for row in run_suite(default_suite()):
            assert row.metrics.entropy_bits <= log2(row.metrics.unique_endpoints) + 1e-12


class TestSurface:
    def test_single_step(self):
        [cell] = sweep_surface([1], ["0.1"], 10)
        assert cell.log2_space == pytest.approx(3.321928, abs=1e-6)

    def test_ceiling_step(self):
        low, high = sweep_surface([5], ["0.7", "0.71"], 10)
        assert high.log2_space - low.log2_space == pytest.approx(5 * (log2(80) - log2(70)))

    def test_deep_cell(self):
        [cell] = sweep_surface([128], ["0.4"], 10)
        assert cell.log2_space == pytest.approx(128 * log2(40))
        assert round(cell.log2_space, 1) == 681.2

    def test_grid_matches_closed_form(self):
        ns = list(range(1, 21))
        eps = [Fraction(i, 20) for i in range(1, 21)]
        for cell in sweep_surface(ns, eps, 10):
            expected = cell.n * log2(10 * max(1, ceil(cell.epsilon * 10)))
            assert abs(cell.log2_space - expected) <= 1e-9

    def test_csv(self):
        lines = surface_to_csv(sweep_surface([1, 2], ["0.1"], 10)).splitlines()
        assert lines[0] == "n,epsilon,log2_space"
        assert len(lines) == 3


class TestGrover:
    def test_worked_space(self):
        cost = grover_cost(2, 4, 3)
        assert 2 ** cost.log2_space == pytest.approx(512)
        assert cost.log2_grover == pytest.approx(4.5)

    def test_deep_search(self):
        assert grover_cost(1, 4, 128).log2_space == 256

    def test_zero_length(self):
        cost = grover_cost(3, 4, 0)
        assert cost.log2_space == cost.log2_grover == 0
