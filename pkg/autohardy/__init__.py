from autoconf import conf

from . import exc
from . import util
from .tree.radial_tree import RadialTreeSpec
from .tree.truncated import TruncatedTree, build_truncated
from .functions.potential import (
    ConstantPotential,
    PotentialQ,
    RadialPotential,
    TabulatedPotential,
    lambda_q,
    spectrum_bounds,
)
from .functions.radial_function import (
    ConstantFunction,
    GeometricMean,
    RadialTreeU,
    TabulatedFunction,
    green_sqrt,
    ground_z,
    pair_u,
    pair_v,
    quotient_u0,
    u_alpha_beta_gamma,
    u_beta_gamma,
)
from .functions.operators import (
    ground_state_weight,
    laplacian_quotient,
    laplacian_radial,
    ratio_properness_report,
    schrodinger_apply,
    superharmonic_report,
)
from .weights.homogeneous import (
    RemainderBar,
    RemainderBetaGamma,
    RemainderRq,
    WBetaGamma,
    WHalfGamma,
    WOpt,
)
from .weights.radial import RadialTreeW
from .weights.operations import (
    asymptotic_gap,
    best_weight_at_origin,
    evaluate_remainder,
    evaluate_weight,
    validate_params,
    weight_from_supersolution,
)
from .forms.vectors import RadialVector, VertexFunction
from .forms.quadratic import (
    hardy_gap,
    poincare_gap,
    quadform_full,
    quadform_radial,
    radial_to_vertex,
    weighted_norm,
)
from .forms.random_functions import random_test_function
from .forms.gap_table import gap_table
from .spectral.jacobi import build_jacobi, lambda_min, sturm_count
from .spectral.pencil import hardy_ratio_inf
from .spectral.sweeps import (
    criticality_probe,
    hardy_ratio_sweep,
    null_criticality_sums,
    poincare_bottom_sweep,
)
from .spectral.violator import find_violator

conf.instance.register(__file__)

__version__ = "2026.10.17.1"
