from autohardy.functions.potential import lambda_q, spectrum_bounds
from autohardy.weights.abstract import Interval, ParamCheck, WeightSpec, defect, log2_sqrt
from autohardy.weights.homogeneous import (
    RemainderBar,
    RemainderBetaGamma,
    RemainderRq,
    WBetaGamma,
    WHalfGamma,
    WOpt,
    w_half_gamma,
)
from autohardy.weights.operations import (
    OriginComparison,
    SupersolutionWeight,
    asymptotic_gap,
    best_weight_at_origin,
    evaluate_remainder,
    evaluate_weight,
    exceeds_wopt_outside_ball,
    validate_params,
    weight_from_supersolution,
)
from autohardy.weights.radial import RadialTreeW
