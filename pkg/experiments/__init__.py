from experiments.metrics import (
    DepthRow, RunConfig, RunMetrics, depth_profile, generate_transform_set, metrics_from_histogram,
    run_metrics, sample_endpoints, shannon_entropy, symbolic_freedom,
)
from experiments.suite import (
    CSV_HEADER, PUBLISHED_RUNS, PublishedRun, SuiteRow, Trends, default_suite, replicate_suite, run_suite,
    suite_to_csv, suite_trends,
)
from experiments.surface import GroverCost, SurfaceCell, branch_estimate, grover_cost, surface_to_csv, sweep_surface

__all__ = [
    'DepthRow', 'RunConfig', 'RunMetrics', 'depth_profile', 'generate_transform_set',
    'metrics_from_histogram', 'run_metrics', 'sample_endpoints', 'shannon_entropy', 'symbolic_freedom',
    'CSV_HEADER', 'PUBLISHED_RUNS', 'PublishedRun', 'SuiteRow', 'Trends', 'default_suite', 'replicate_suite',
    'run_suite', 'suite_to_csv', 'suite_trends',
    'GroverCost', 'SurfaceCell', 'branch_estimate', 'grover_cost', 'surface_to_csv', 'sweep_surface',
]
