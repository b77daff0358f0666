from autohardy.tree.radial_tree import (
    RadialTreeSpec,
    ball_volume,
    ball_volume_closed_form,
    edge_count_between_spheres,
    log_edge_counts,
    log_psi_array,
    log_psi_sequence,
    log_sphere_sizes,
    psi_sequence,
    sphere_size,
    sphere_sizes,
)
from autohardy.tree.truncated import TruncatedTree, build_truncated
