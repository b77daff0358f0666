import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, Optional

import numpy as np

from autohardy import exc
from autohardy.functions.potential import ConstantPotential, RadialPotential, lambda_q
from autohardy.util import config_util

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParamCheck:
    """
    The outcome of validating the parameters of a weight family.

    Attributes
    ----------
    ok
        Whether every bound holds.
    bound
        The first violated bound, written as an inequality (for example `beta <= log2(q^{1/2})`).
    message
        A human readable description including the offending value and the inequality it breaks.
    """

    ok: bool
    bound: Optional[str] = None
    message: str = ""


@dataclass(frozen=True)
class Interval:
    """
    A closed parameter range [lower, upper], with a label naming each endpoint as an inequality.
    """

    lower: float
    upper: float
    lower_label: str
    upper_label: str


class WeightSpec(RadialPotential):
    """
    A named Hardy weight or Poincaré remainder family together with its parameter validity ranges.

    Families are immutable dataclasses. Weights return W(n); remainders return R(n), the improvement over the
    Poincaré constant Λ_q, so that the full weight of a remainder is Λ_q + R (see `as_weight`).
    """

    family = "weight"
    is_remainder = False

    def intervals(self) -> Dict[str, Interval]:
        """
        The closed ranges constraining each parameter, in the order they must be checked (later ranges may depend
        on earlier parameters, as the γ range of W_{β,γ} depends on β).
        """
        return {}

    def extra_check(self) -> ParamCheck:
        return ParamCheck(ok=True)

    def validate(self, tolerance: Optional[float] = None) -> ParamCheck:
        if tolerance is None:
            tolerance = config_util.config_float("numerics", "param_tolerance")

        for name, interval in self.intervals().items():
            value = getattr(self, name)

            if value < interval.lower - tolerance:
                return ParamCheck(
                    ok=False,
                    bound=interval.lower_label,
                    message=f"{self.family}: {name}={value:g} violates {interval.lower_label} "
                    f"(lower bound {interval.lower:.12g}).",
                )
            if value > interval.upper + tolerance:
                return ParamCheck(
                    ok=False,
                    bound=interval.upper_label,
                    message=f"{self.family}: {name}={value:g} violates {interval.upper_label} "
                    f"(upper bound {interval.upper:.12g}).",
                )

        return self.extra_check()

    def snapped(self, tolerance: float) -> "WeightSpec":
        """
        A copy whose parameters lying within `tolerance` of an endpoint of their range are moved onto it, so that a
        decimal string like 0.70710678 stands for q^{-1/2}.
        """
        spec = self
        for name in self.intervals():
            interval = spec.intervals()[name]
            value = getattr(spec, name)
            for endpoint in (interval.lower, interval.upper):
                if value != endpoint and abs(value - endpoint) <= tolerance:
                    logger.debug(f"Snapping {name}={value} onto the bound {endpoint!r}.")
                    spec = replace(spec, **{name: endpoint})
                    break
        return spec

    @property
    def homogeneous_q(self) -> Optional[int]:
        """
        The branching number q when the family lives on T_{q+1}, None otherwise.
        """
        return getattr(self, "q", None)

    def excess(self, radii) -> np.ndarray:
        """
        W(n) - Λ_q, computed without cancellation. For remainder families this is R(n) itself.
        """
        if self.homogeneous_q is None:
            raise exc.InvalidParams(
                bound="homogeneous family", message=f"{self.family} has no Poincaré constant Λ_q to compare with."
            )
        return self.values(radii) - lambda_q(self.homogeneous_q)

    def as_weight(self) -> RadialPotential:
        """
        The Hardy weight the family stands for: the family itself for weights, Λ_q + R for remainders.
        """
        return self

    @property
    def descriptor(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return self.descriptor


def log2_sqrt(q: float) -> float:
    """
    log₂ q^{1/2}, computed as 0.5 log(q) / log(2).
    """
    return 0.5 * math.log(q) / math.log(2.0)


def defect(radii, beta: float) -> np.ndarray:
    """
    2 - (1 + 1/n)^β - (1 - 1/n)^β for n >= 1, evaluated through `expm1` and `log1p` so that the O(β(1-β)/n²) value
    keeps full relative precision at large n.
    """
    n = np.asarray(radii, dtype=float)
    return -(np.expm1(beta * np.log1p(1.0 / n)) + np.expm1(beta * np.log1p(-1.0 / n)))


class RemainderMixin:
    """
    Shared behaviour of the Poincaré remainders R, whose full Hardy weight is Λ_q + R.
    """

    is_remainder = True

    def excess(self, radii) -> np.ndarray:
        return self.values(radii)

    def as_weight(self) -> RadialPotential:
        return ConstantPotential(lambda_q(self.q)) + self
