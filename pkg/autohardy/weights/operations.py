import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from autohardy import exc
from autohardy.functions.operators import laplacian_quotient
from autohardy.functions.potential import TabulatedPotential
from autohardy.functions.radial_function import RadialFunction
from autohardy.tree.radial_tree import RadialTreeSpec
from autohardy.util import config_util
from autohardy.weights.abstract import ParamCheck, WeightSpec
from autohardy.weights.homogeneous import WBetaGamma, WOpt

logger = logging.getLogger(__name__)


def validate_params(spec: WeightSpec, tolerance: Optional[float] = None) -> ParamCheck:
    """
    Check the parameters of a weight family against its validity ranges, reporting the first violated bound.
    """
    return spec.validate(tolerance=tolerance)


def _checked(spec: WeightSpec) -> WeightSpec:
    check = validate_params(spec)
    if not check.ok:
        raise exc.InvalidParams(bound=check.bound, message=check.message)
    return spec


def evaluate_weight(spec: WeightSpec, n: int) -> float:
    """
    The closed-form value W(n) of a weight family with valid parameters.

    Raises
    ------
    InvalidParams
        If a parameter lies outside the validity range of the family.
    """
    return _checked(spec)(n)


def evaluate_remainder(spec: WeightSpec, n: int) -> float:
    """
    The Poincaré remainder at radius n: R(n) for remainder families and W(n) - Λ_q for homogeneous weights.

    Raises
    ------
    InvalidParams
        If a parameter lies outside the validity range of the family.
    DomainError
        If n is below the first radius of the family (n < 2 for R̄).
    """
    return float(_checked(spec).excess(np.array([n]))[0])


def asymptotic_gap(spec: WeightSpec, n: int) -> float:
    """
    n² (W(n) - Λ_q) / q^{1/2}, which tends to β(1 - β) as n grows.
    """
    if n < 2:
        raise exc.DomainError(f"The asymptotic gap is taken at radii n >= 2, got {n}.")

    q = spec.homogeneous_q
    if q is None:
        raise exc.InvalidParams(
            bound="homogeneous family", message=f"{spec.family} does not live on a homogeneous tree."
        )

    return float(n ** 2 * _checked(spec).excess(np.array([n]))[0] / math.sqrt(q))


@dataclass(frozen=True)
class SupersolutionWeight:
    """
    The weight Δf/f of a supersolution f tabulated on a closed radius range, with the radii where it is negative
    (where f fails to be a supersolution for a nonnegative weight).
    """

    weight: TabulatedPotential
    negative_radii: Tuple[int, ...]

    @property
    def is_nonnegative(self) -> bool:
        return len(self.negative_radii) == 0


def weight_from_supersolution(
    spec: RadialTreeSpec,
    function: RadialFunction,
    radius_range: Tuple[int, int],
    tolerance: Optional[float] = None,
) -> SupersolutionWeight:
    """
    Tabulate W(n) = Δf(n)/f(n) on the closed range of radii.
    """
    if tolerance is None:
        tolerance = config_util.config_float("numerics", "one_sided_tolerance")

    start, stop = radius_range
    radii = np.arange(start, stop + 1)

    table = laplacian_quotient(spec=spec, function=function).values(radii)
    negative = tuple(int(n) for n in radii[table < -tolerance])

    if negative:
        logger.warning(f"{function!r} gives a negative weight at {len(negative)} radii, first {negative[0]}.")

    return SupersolutionWeight(weight=TabulatedPotential(table=table, start=start), negative_radii=negative)


@dataclass(frozen=True)
class OriginComparison:
    """
    The member of W_{β,γ} largest at the root, β = 0 and γ = q^{-1/2} + q^{1/2} - 1, compared with W_opt.

    It beats W_opt at the root but vanishes at radius 1, where W_opt = Λ_q > 0, so neither weight dominates the other.
    """

    weight: WBetaGamma
    value_at_origin: float
    wopt_at_origin: float
    value_at_one: float
    wopt_at_one: float

    @property
    def exceeds_wopt_at_origin(self) -> bool:
        return self.value_at_origin > self.wopt_at_origin

    @property
    def comparable_with_wopt(self) -> bool:
        return (self.value_at_origin >= self.wopt_at_origin) == (self.value_at_one >= self.wopt_at_one)


def best_weight_at_origin(q: int) -> OriginComparison:
    sqrt_q = math.sqrt(q)
    weight = WBetaGamma(q=q, beta=0.0, gamma=1.0 / sqrt_q + sqrt_q - 1.0)
    wopt = WOpt(q=q)

    return OriginComparison(
        weight=weight,
        value_at_origin=weight(0),
        wopt_at_origin=wopt(0),
        value_at_one=weight(1),
        wopt_at_one=wopt(1),
    )


def exceeds_wopt_outside_ball(spec: WBetaGamma, horizon: int) -> bool:
    """
    Whether W_{β,γ}(n) > W_opt(n) for every radius 2 <= n <= horizon, which holds for 0 < β < min(log₂ q^{1/2}, 1).
    """
    radii = np.arange(2, horizon + 1)
    return bool(np.all(spec.excess(radii) > 0.0))
