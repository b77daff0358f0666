from autohardy.spectral.jacobi import (
    JacobiSystem,
    build_jacobi,
    gershgorin_bounds,
    lambda_min,
    lambda_min_vector,
    sturm_bisection,
    sturm_count,
    tridiagonal_lambda_min,
    tridiagonal_lambda_min_vector,
)
from autohardy.spectral.pencil import Elimination, WeightedPencil, build_pencil, hardy_ratio_inf
from autohardy.spectral.sweeps import (
    NULL_CRITICALITY_HEADER,
    SWEEP_HEADER,
    NullCriticalitySums,
    SweepResult,
    criticality_probe,
    hardy_ratio_sweep,
    null_criticality_sums,
    poincare_bottom_sweep,
    richardson,
)
from autohardy.spectral.violator import (
    VERIFIED_BY_FORMS,
    VERIFIED_BY_JACOBI,
    WITNESS_HEADER,
    WITNESS_SUMMARY_HEADER,
    NotFound,
    Witness,
    find_violator,
    search_windows,
    witness_vector,
)
