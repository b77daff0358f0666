import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from autohardy.tree.radial_tree import RadialTreeSpec
from autohardy.weights.abstract import Interval, ParamCheck, WeightSpec


@dataclass(frozen=True, repr=False)
class RadialTreeW(WeightSpec):
    """
    The Hardy weight of a radial tree whose branching m̄ is nondecreasing, generated by the supersolution
    u(n) = n^β Ψ^{-1/2}(n), u(0) = γ, where Ψ(1) = psi1 and Ψ(n + 1) = m̄(n) Ψ(n):

    W(0) = m̄(0) + 1 - (m̄(0) + 1) / (γ Ψ^{1/2}(1)),
    W(1) = m̄(1) + 1 - m̄^{1/2}(1) 2^β - Ψ^{1/2}(1) γ,
    W(n) = m̄(n) + 1 - m̄^{1/2}(n) (1 + 1/n)^β - m̄^{1/2}(n - 1) (1 - 1/n)^β  for n >= 2.

    Valid for β < 1 and Ψ^{-1/2}(1) <= γ <= Ψ^{-1/2}(1) (m̄(1) + 1 - m̄^{1/2}(1) 2^β).

    Parameters
    ----------
    spec
        The branching data of the tree.
    beta
        The power of |x| in the supersolution.
    gamma
        The value of the supersolution at the root.
    psi1
        Ψ(1), which fixes the normalisation of Ψ.
    """

    spec: RadialTreeSpec
    beta: float
    gamma: float
    psi1: float = 1.0
    family = "wradial"

    def intervals(self) -> Dict[str, Interval]:
        if self.psi1 <= 0:
            return {}
        root_psi = math.sqrt(self.psi1)
        m1 = self.spec.branching(1)
        return {
            "gamma": Interval(
                lower=1.0 / root_psi,
                upper=(m1 + 1.0 - math.sqrt(m1) * 2.0 ** self.beta) / root_psi,
                lower_label="gamma >= Psi(1)^{-1/2}",
                upper_label="gamma <= Psi(1)^{-1/2} (m(1) + 1 - m(1)^{1/2} 2^beta)",
            ),
        }

    def extra_check(self) -> ParamCheck:
        if self.psi1 <= 0:
            return ParamCheck(ok=False, bound="psi1 > 0", message=f"wradial: psi1={self.psi1:g} must be positive.")
        if self.beta >= 1.0:
            return ParamCheck(ok=False, bound="beta < 1", message=f"wradial: beta={self.beta:g} violates beta < 1.")
        if not self.spec.is_nondecreasing:
            return ParamCheck(
                ok=False,
                bound="m nondecreasing",
                message=f"wradial: the branching sequence of {self.spec.to_string()} is not nondecreasing.",
            )
        return ParamCheck(ok=True)

    def validate(self, tolerance=None) -> ParamCheck:
        check = self.extra_check()
        if not check.ok:
            return check
        return super().validate(tolerance=tolerance)

    def values(self, radii) -> np.ndarray:
        radii = self.check_radii(radii)

        n_max = int(radii.max()) + 1 if radii.size else 1
        branching = self.spec.branching_array(max(n_max, 2)).astype(float)
        root_branching = np.sqrt(branching)

        result = np.empty(radii.shape)

        outer = radii >= 2
        n = radii[outer]
        result[outer] = (
            branching[n]
            + 1.0
            - root_branching[n] * np.exp(self.beta * np.log1p(1.0 / n))
            - root_branching[n - 1] * np.exp(self.beta * np.log1p(-1.0 / n))
        )

        root_psi = math.sqrt(self.psi1)
        result[radii == 0] = (branching[0] + 1.0) * (1.0 - 1.0 / (self.gamma * root_psi))
        result[radii == 1] = branching[1] + 1.0 - root_branching[1] * 2.0 ** self.beta - root_psi * self.gamma

        return result

    @property
    def descriptor(self) -> str:
        return (
            f"wradial:spec={self.spec.to_string()},beta={self.beta:.12g},"
            f"gamma={self.gamma:.12g},psi1={self.psi1:.12g}"
        )
