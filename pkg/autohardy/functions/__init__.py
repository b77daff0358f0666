from autohardy.functions.operators import (
    LaplacianQuotient,
    ProperRatioReport,
    SuperharmonicReport,
    best_alpha,
    ground_state_weight,
    laplacian_quotient,
    laplacian_radial,
    ratio_properness_report,
    schrodinger_apply,
    superharmonic_report,
    weight_level_at_infinity,
)
from autohardy.functions.potential import (
    ConstantPotential,
    PotentialQ,
    RadialPotential,
    ScaledPotential,
    SumPotential,
    TabulatedPotential,
    lambda_q,
    spectrum_bounds,
)
from autohardy.functions.radial_function import (
    ConstantFunction,
    GeometricMean,
    PowerExponential,
    RadialFunction,
    RadialTreeU,
    TabulatedFunction,
    evaluate,
    green_sqrt,
    ground_z,
    pair_u,
    pair_v,
    quotient_u0,
    u_alpha_beta_gamma,
    u_beta_gamma,
)
