"""
Hardy weights and Poincaré remainders on the homogeneous tree T_{q+1}.

Every weight here has the form W = Δu/u for an explicit positive supersolution u, and every weight is written as
Λ_q plus an excess that decays like |x|^{-2}. The excess is evaluated directly, never as W - Λ_q, so the asymptotic
behaviour stays visible to full precision at large radii.
"""
import math
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from autohardy.functions.potential import lambda_q
from autohardy.weights.abstract import Interval, RemainderMixin, WeightSpec, defect, log2_sqrt


@dataclass(frozen=True, repr=False)
class WOpt(WeightSpec):
    """
    The optimal weight W_opt = Δ G^{1/2} / G^{1/2} built from the Green function G of T_{q+1}:

    W_opt(0) = Λ_q + q^{1/2} - q^{-1/2},   W_opt(n) = Λ_q for n >= 1.
    """

    q: int
    family = "wopt"

    def values(self, radii) -> np.ndarray:
        return lambda_q(self.q) + self.excess(radii)

    def excess(self, radii) -> np.ndarray:
        radii = self.check_radii(radii)
        sqrt_q = math.sqrt(self.q)
        return np.where(radii == 0, sqrt_q - 1.0 / sqrt_q, 0.0)

    @property
    def descriptor(self) -> str:
        return f"wopt:q={self.q}"


@dataclass(frozen=True, repr=False)
class WBetaGamma(WeightSpec):
    """
    The weights W_{β,γ} = Δu_{β,γ}/u_{β,γ} generated by u_{β,γ}(n) = q^{-n/2} n^β, u_{β,γ}(0) = γ:

    W(0) = (q + 1)(1 - q^{-1/2}/γ),   W(1) = q + 1 - q^{1/2}(2^β + γ),
    W(n) = q + 1 - q^{1/2}[(1 + 1/n)^β + (1 - 1/n)^β]  for n >= 2.

    They are Hardy weights for 0 <= β <= log₂ q^{1/2} and q^{-1/2} <= γ <= q^{-1/2} + q^{1/2} - 2^β, and at β = 0,
    γ = 1 they reduce to W_opt.
    """

    q: int
    beta: float
    gamma: float
    family = "wbg"

    def intervals(self) -> Dict[str, Interval]:
        sqrt_q = math.sqrt(self.q)
        return {
            "beta": Interval(
                lower=0.0,
                upper=log2_sqrt(self.q),
                lower_label="beta >= 0",
                upper_label="beta <= log2(q^{1/2})",
            ),
            "gamma": Interval(
                lower=1.0 / sqrt_q,
                upper=1.0 / sqrt_q + sqrt_q - 2.0 ** self.beta,
                lower_label="gamma >= q^{-1/2}",
                upper_label="gamma <= q^{-1/2} + q^{1/2} - 2^beta",
            ),
        }

    def values(self, radii) -> np.ndarray:
        radii = self.check_radii(radii)
        sqrt_q = math.sqrt(self.q)

        result = lambda_q(self.q) + self.excess(radii)
        result[radii == 0] = (self.q + 1.0) * (1.0 - (1.0 / sqrt_q) / self.gamma)
        result[radii == 1] = self.q + 1.0 - sqrt_q * (2.0 ** self.beta + self.gamma)
        return result

    def excess(self, radii) -> np.ndarray:
        radii = self.check_radii(radii)
        sqrt_q = math.sqrt(self.q)

        result = np.empty(radii.shape)

        outer = radii >= 2
        result[outer] = sqrt_q * defect(radii[outer], self.beta)
        result[radii == 0] = sqrt_q * (2.0 - 1.0 / self.gamma - 1.0 / (self.q * self.gamma))
        result[radii == 1] = sqrt_q * (2.0 - 2.0 ** self.beta - self.gamma)

        return result

    @property
    def descriptor(self) -> str:
        return f"wbg:q={self.q},beta={self.beta:.12g},gamma={self.gamma:.12g}"


@dataclass(frozen=True, repr=False)
class WHalfGamma(WBetaGamma):
    """
    W_{1/2,γ}, the member of the W_{β,γ} family that is optimal for Δ, with q^{-1/2} <= γ <= q^{-1/2} + q^{1/2} - 2^{1/2}.
    """

    beta: float = field(default=0.5, init=False)
    family = "whg"

    def intervals(self) -> Dict[str, Interval]:
        return {"gamma": super().intervals()["gamma"]}

    @property
    def descriptor(self) -> str:
        return f"whg:q={self.q},gamma={self.gamma:.12g}"


def w_half_gamma(q: int, gamma: float) -> WHalfGamma:
    return WHalfGamma(q=q, gamma=gamma)


@dataclass(frozen=True, repr=False)
class RemainderRq(RemainderMixin, WeightSpec):
    """
    R_q = W_opt - Λ_q, nonzero only at the root, for which Δ - Λ_q - R_q is critical.
    """

    q: int
    family = "rq"

    def values(self, radii) -> np.ndarray:
        radii = self.check_radii(radii)
        sqrt_q = math.sqrt(self.q)
        return np.where(radii == 0, sqrt_q - 1.0 / sqrt_q, 0.0)

    @property
    def descriptor(self) -> str:
        return f"rq:q={self.q}"


@dataclass(frozen=True, repr=False)
class RemainderBetaGamma(RemainderMixin, WeightSpec):
    """
    R_{β,γ} = W_{β,γ} - Λ_q, a nonnegative improvement of the Poincaré inequality on the whole tree when
    0 <= β <= log₂(3/2 - 1/(2q)) and 1/2 + 1/(2q) <= γ <= 2 - 2^β.
    """

    q: int
    beta: float
    gamma: float
    family = "rbg"

    def intervals(self) -> Dict[str, Interval]:
        return {
            "beta": Interval(
                lower=0.0,
                upper=math.log2(1.5 - 0.5 / self.q),
                lower_label="beta >= 0",
                upper_label="beta <= log2(3/2 - 1/(2q))",
            ),
            "gamma": Interval(
                lower=0.5 + 0.5 / self.q,
                upper=2.0 - 2.0 ** self.beta,
                lower_label="gamma >= 1/2 + 1/(2q)",
                upper_label="gamma <= 2 - 2^beta",
            ),
        }

    def values(self, radii) -> np.ndarray:
        return WBetaGamma(q=self.q, beta=self.beta, gamma=self.gamma).excess(radii)

    @property
    def descriptor(self) -> str:
        return f"rbg:q={self.q},beta={self.beta:.12g},gamma={self.gamma:.12g}"


@dataclass(frozen=True, repr=False)
class RemainderBar(RemainderMixin, WeightSpec):
    """
    R̄(n) = q^{1/2}(2 - (1 + 1/n)^{1/2} - (1 - 1/n)^{1/2}) for n >= 2, the sharp improvement of the Poincaré
    inequality for functions supported outside B_2(o).
    """

    q: int
    family = "rbar"
    first_radius = 2

    def values(self, radii) -> np.ndarray:
        radii = self.check_radii(radii)
        return math.sqrt(self.q) * defect(radii, 0.5)

    @property
    def descriptor(self) -> str:
        return f"rbar:q={self.q}"
