import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from autohardy import exc
from autohardy.functions.potential import ConstantPotential, RadialPotential, as_radii
from autohardy.functions.radial_function import GeometricMean, RadialFunction, evaluate
from autohardy.tree.radial_tree import RadialTreeSpec
from autohardy.util import config_util
from autohardy.util.log_space import LogMagnitude, Real

logger = logging.getLogger(__name__)


def _quotient_values(spec: RadialTreeSpec, function: RadialFunction, radii: np.ndarray) -> np.ndarray:
    """
    Δf(n)/f(n) from the closed-form step ratios r(n) = f(n+1)/f(n):

    Δf(0)/f(0) = (m̄(0)+1)(1 - r(0)),   Δf(n)/f(n) = (m̄(n)+1) - m̄(n) r(n) - 1/r(n-1)  for n >= 1.
    """
    branching = spec.branching_array(int(radii.max()) + 1)[radii].astype(float)

    ratio_up = function.step_ratios(radii)
    result = branching + 1.0 - branching * ratio_up

    inner = radii > 0
    if np.any(inner):
        result[inner] -= 1.0 / function.step_ratios(radii[inner] - 1)

    root = radii == 0
    if np.any(root):
        result[root] = (branching[root] + 1.0) * (1.0 - ratio_up[root])

    return result


class LaplacianQuotient(RadialPotential):
    """
    The weight W = Δf/f generated by a positive radial function f, evaluated without forming f itself so that it
    never under- or overflows.
    """

    def __init__(self, spec: RadialTreeSpec, function: RadialFunction):
        self.spec = spec
        self.function = function

    def values(self, radii) -> np.ndarray:
        radii = as_radii(radii)
        if not self.function.positive_on(np.concatenate([radii, radii + 1])):
            raise exc.NonpositiveFunction(
                f"Δf/f needs f > 0 on the radii {radii.min()}..{radii.max() + 1}."
            )
        return _quotient_values(spec=self.spec, function=self.function, radii=radii)

    def __repr__(self):
        return f"LaplacianQuotient({self.function!r})"


def laplacian_quotient(spec: RadialTreeSpec, function: RadialFunction) -> LaplacianQuotient:
    """
    n -> Δf(n)/f(n), the Hardy weight generated by a positive supersolution f.
    """
    return LaplacianQuotient(spec=spec, function=function)


def _direct_radius(n: int) -> bool:
    return n + 1 <= config_util.config_int("numerics", "log_space_radius")


def laplacian_radial(spec: RadialTreeSpec, function: RadialFunction, n: int) -> Real:
    """
    The radial combinatorial Laplacian Δf(x) = sum_{y ~ x} (f(x) - f(y)) at a vertex of radius n:

    Δf(0) = (m̄(0)+1)(f(0) - f(1)),   Δf(n) = (m̄(n)+1) f(n) - m̄(n) f(n+1) - f(n-1)  for n >= 1.

    Up to the configured log-space radius the values are combined directly; deeper, the result is f(n) times the
    closed-form quotient Δf/f and is returned as a `LogMagnitude`.
    """
    return schrodinger_apply(spec=spec, potential=ConstantPotential(0.0), function=function, n=n)


def schrodinger_apply(
    spec: RadialTreeSpec, potential: RadialPotential, function: RadialFunction, n: int
) -> Real:
    """
    Hf(n) = Δf(n) + Q(n) f(n) for the Schrödinger operator H = Δ + Q.
    """
    if n < 0:
        raise exc.DomainError(f"Radius must be nonnegative, got {n}.")

    q_value = potential(n)

    if _direct_radius(n):
        neighbours = np.arange(max(n - 1, 0), n + 2)
        values = function.values(neighbours)
        m = spec.branching(n)

        if n == 0:
            laplacian = (m + 1) * (values[0] - values[1])
            centre = values[0]
        else:
            laplacian = (m + 1) * values[1] - m * values[2] - values[0]
            centre = values[1]

        return float(laplacian + q_value * centre)

    quotient = float(_quotient_values(spec=spec, function=function, radii=np.array([n]))[0]) + q_value
    if quotient == 0.0:
        return 0.0

    value = evaluate(function, n)
    if isinstance(value, LogMagnitude):
        logger.info(f"Hf({n}) of {function!r} is returned in log space.")
    return value * quotient


@dataclass(frozen=True)
class SuperharmonicReport:
    """
    The outcome of checking Hf >= 0 on a range of radii.

    Attributes
    ----------
    min_ratio
        The smallest value of Hf(n)/f(n) on the range.
    min_radius
        The radius attaining it.
    violation_radius
        The first radius with Hf(n)/f(n) < -tolerance, or None when f is H-superharmonic on the range.
    """

    min_ratio: float
    min_radius: int
    violation_radius: Optional[int]

    @property
    def is_superharmonic(self) -> bool:
        return self.violation_radius is None


def superharmonic_report(
    spec: RadialTreeSpec,
    potential: RadialPotential,
    function: RadialFunction,
    radius_range: Tuple[int, int],
    tolerance: Optional[float] = None,
) -> SuperharmonicReport:
    """
    Certify Hf >= 0 pointwise on the closed radius range, or report the first radius where it fails.

    The test is made on Hf/f, which is scale free and cannot underflow at depth; since f > 0 the two are equivalent.
    """
    if tolerance is None:
        tolerance = config_util.config_float("numerics", "one_sided_tolerance")

    radii = np.arange(radius_range[0], radius_range[1] + 1)

    ratios = laplacian_quotient(spec=spec, function=function).values(radii) + potential.values(radii)

    index = int(np.argmin(ratios))
    violations = np.nonzero(ratios < -tolerance)[0]

    report = SuperharmonicReport(
        min_ratio=float(ratios[index]),
        min_radius=int(radii[index]),
        violation_radius=int(radii[violations[0]]) if violations.size else None,
    )

    logger.debug(f"Superharmonicity of {function!r} on {radius_range}: {report}")
    return report


@dataclass(frozen=True)
class ProperRatioReport:
    """
    The neighbour-ratio bound sup_{x ~ y} f(x)/f(y) over the edges up to a horizon, with the radius of the edge
    attaining it, and whether f decreases strictly to zero away from the root.
    """

    sup_ratio: float
    sup_radius: int
    monotone_to_zero: bool


def ratio_properness_report(function: RadialFunction, horizon: int) -> ProperRatioReport:
    """
    Check the two hypotheses placed on u0 = u/v: neighbour ratios bounded (sup over edges n ~ n+1 with n < horizon)
    and properness (strictly decreasing for n >= 1 with limit zero).
    """
    radii = np.arange(0, horizon)
    ratios = function.step_ratios(radii)
    spread = np.maximum(ratios, 1.0 / ratios)

    index = int(np.argmax(spread))
    decreasing = bool(np.all(ratios[1:] < 1.0))

    return ProperRatioReport(
        sup_ratio=float(spread[index]),
        sup_radius=int(radii[index]),
        monotone_to_zero=decreasing and function.tends_to_zero,
    )


def ground_state_weight(
    spec: RadialTreeSpec, potential: RadialPotential, u: RadialFunction, v: RadialFunction
) -> RadialPotential:
    """
    H[(uv)^{1/2}] / (uv)^{1/2} for H = Δ + Q: the optimal weight for H built from two positive H-superharmonic
    functions u and v.
    """
    return laplacian_quotient(spec=spec, function=GeometricMean(u=u, v=v)) + potential


def weight_level_at_infinity(q: float, alpha: float) -> float:
    """
    q + 1 - q^{1+α} - q^{-α}, the limit of Δu_{α,β,γ}/u_{α,β,γ} as |x| -> infinity.
    """
    return q + 1.0 - q ** (1.0 + alpha) - q ** (-alpha)


def best_alpha(q: float, alphas: Sequence[float]) -> float:
    """
    The exponent α on a grid maximising the asymptotic weight level (always -1/2 when the grid contains it).
    """
    levels = [weight_level_at_infinity(q=q, alpha=alpha) for alpha in alphas]
    return float(alphas[int(np.argmax(levels))])
