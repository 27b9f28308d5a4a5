from dynamics.scalar import ExactScalar, format_scalar, to_scalar
from dynamics.lattice import LatticePoint, Window
from dynamics.affine import AffineMap, NoiseBound, TransformSet, make_affine_map
from dynamics.step import (
    Trajectory,
    apply_with_noise,
    branch_set,
    branch_size,
    escape_radius,
    invariant_window,
    preimage_set,
    replay_trajectory,
    sample_step,
    sample_trajectory,
)

__all__ = [
    'ExactScalar', 'format_scalar', 'to_scalar',
    'LatticePoint', 'Window',
    'AffineMap', 'NoiseBound', 'TransformSet', 'make_affine_map',
    'Trajectory', 'apply_with_noise', 'branch_set', 'branch_size', 'escape_radius',
    'invariant_window', 'preimage_set', 'replay_trajectory', 'sample_step',
    'sample_trajectory',
]
