from pathspace.instance import SpipInstance
from pathspace.bounds import BoundReport, growth_bounds, max_branch, product_bound
from pathspace.census import (
    BranchStats,
    PathSpaceCensus,
    branching_stats,
    census_to_json,
    count_paths_to,
    endpoint_distribution,
    enumerate_paths,
    forward_layers,
)

__all__ = [
    'SpipInstance', 'BoundReport', 'growth_bounds', 'max_branch', 'product_bound',
    'BranchStats', 'PathSpaceCensus', 'branching_stats', 'census_to_json',
    'count_paths_to', 'endpoint_distribution', 'enumerate_paths', 'forward_layers',
]
