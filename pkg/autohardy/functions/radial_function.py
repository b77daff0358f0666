"""
Closed-form radial function families on trees.

Every family is strictly positive on its domain and is evaluated through its logarithm, so that values like q^{-n/2}
never underflow. The ratios f(n+1)/f(n) that the radial Laplacian needs are given in closed form per family, which
keeps Δf/f exact at any depth.
"""
import logging
import math
from abc import ABC, abstractmethod
from typing import Optional, Sequence

import numpy as np

from autohardy import exc
from autohardy.functions.potential import as_radii
from autohardy.tree.radial_tree import RadialTreeSpec, log_psi_array
from autohardy.util import config_util
from autohardy.util.log_space import LogMagnitude, Real

logger = logging.getLogger(__name__)


class RadialFunction(ABC):
    """
    A function of the radius |x| on a radial tree.

    Subclasses provide `log_values` (log f at the requested radii) and `step_ratios` (f(n+1)/f(n)).
    """

    family = "radial"
    gamma: Optional[float] = None

    @abstractmethod
    def log_values(self, radii) -> np.ndarray:
        pass

    @abstractmethod
    def step_ratios(self, radii) -> np.ndarray:
        pass

    @property
    def tends_to_zero(self) -> bool:
        """
        Whether f(n) -> 0 as n -> infinity, known from the closed form of the family.
        """
        return False

    def check_domain(self, radii) -> np.ndarray:
        radii = as_radii(radii)
        if self.gamma is None and radii.size and radii.min() == 0:
            raise exc.DomainError(
                f"The {self.family} family has no value at the root unless a gamma is supplied."
            )
        return radii

    def positive_on(self, radii) -> bool:
        return True

    def values(self, radii) -> np.ndarray:
        return np.exp(self.log_values(radii))

    def __call__(self, n: int) -> float:
        return float(self.values(np.array([n]))[0])


class PowerExponential(RadialFunction):
    """
    The family f(n) = scale * q^{alpha n} n^beta for n >= 1, with f(0) = gamma.

    All the closed forms on T_{q+1} are members:

    - Green square root: scale = (q/(q-1))^{1/2}, alpha = -1/2, beta = 0, gamma = scale.
    - u_{β,γ}: alpha = -1/2; u_{α,β,γ}: general alpha.
    - u and v of the Schrödinger pair: alpha = -1/2 with beta = 0 and beta = 1.
    - z = (uv)^{1/2}: beta = 1/2; u0 = u/v: alpha = 0, beta = -1, gamma = 1.
    """

    def __init__(
        self,
        q: float,
        alpha: float,
        beta: float,
        gamma: Optional[float],
        scale: float = 1.0,
        family: str = "power-exponential",
    ):
        if gamma is not None and gamma <= 0:
            raise exc.NonpositiveFunction(f"gamma must be positive, got {gamma}.")

        self.q = q
        self.alpha = float(alpha)
        self.beta = float(beta)
        self.gamma = None if gamma is None else float(gamma)
        self.scale = float(scale)
        self.family = family

    def __repr__(self):
        return (
            f"{self.family}(q={self.q}, alpha={self.alpha:g}, beta={self.beta:g}, "
            f"gamma={self.gamma}, scale={self.scale:g})"
        )

    @property
    def tends_to_zero(self) -> bool:
        return self.alpha < 0 or (self.alpha == 0 and self.beta < 0)

    def log_values(self, radii) -> np.ndarray:
        radii = self.check_domain(radii)
        n = radii.astype(float)

        with np.errstate(divide="ignore"):
            logs = (
                math.log(self.scale)
                + self.alpha * math.log(self.q) * n
                + self.beta * np.log(np.where(radii > 0, n, 1.0))
            )

        if self.gamma is not None:
            logs = np.where(radii == 0, math.log(self.gamma), logs)
        return logs

    def step_ratios(self, radii) -> np.ndarray:
        radii = as_radii(radii)
        n = np.where(radii > 0, radii, 1).astype(float)

        ratios = self.q ** self.alpha * np.exp(self.beta * np.log1p(1.0 / n))

        if np.any(radii == 0):
            self.check_domain(np.array([0]))
            ratios = np.where(radii == 0, self.scale * self.q ** self.alpha / self.gamma, ratios)
        return ratios


def green_sqrt(q: int) -> PowerExponential:
    """
    ũ = G_o^{1/2}, the square root of the Green function G_o(x) = q/(q-1) q^{-|x|} of T_{q+1}.
    """
    scale = math.sqrt(q / (q - 1.0))
    return PowerExponential(q=q, alpha=-0.5, beta=0.0, gamma=scale, scale=scale, family="green-sqrt")


def u_beta_gamma(q: int, beta: float, gamma: Optional[float]) -> PowerExponential:
    """
    The supersolution u_{β,γ}(n) = q^{-n/2} n^β, u_{β,γ}(0) = γ, generating the weights W_{β,γ}.
    """
    return PowerExponential(q=q, alpha=-0.5, beta=beta, gamma=gamma, family="u")


def u_alpha_beta_gamma(q: int, alpha: float, beta: float, gamma: Optional[float]) -> PowerExponential:
    return PowerExponential(q=q, alpha=alpha, beta=beta, gamma=gamma, family="u3")


def pair_u(q: int, gamma: float) -> PowerExponential:
    return PowerExponential(q=q, alpha=-0.5, beta=0.0, gamma=gamma, family="pair-u")


def pair_v(q: int, gamma: float) -> PowerExponential:
    return PowerExponential(q=q, alpha=-0.5, beta=1.0, gamma=gamma, family="pair-v")


def ground_z(q: int, gamma: float) -> PowerExponential:
    """
    z = (uv)^{1/2}, the ground state of Δ - W_{1/2,γ}.
    """
    return PowerExponential(q=q, alpha=-0.5, beta=0.5, gamma=gamma, family="ground-z")


def quotient_u0(q: int = 2) -> PowerExponential:
    """
    u0 = u/v, equal to 1 at the root and 1/n elsewhere.
    """
    return PowerExponential(q=q, alpha=0.0, beta=-1.0, gamma=1.0, family="quotient-u0")


class RadialTreeU(RadialFunction):
    """
    u_{-1/2,β}(n) = n^β Ψ^{-1/2}(n) on a radial tree, with u(0) = γ, where Ψ(1) = psi1 and Ψ(n+1) = m̄(n) Ψ(n).
    """

    family = "radial-u"

    def __init__(self, spec: RadialTreeSpec, beta: float, gamma: Optional[float], psi1: float = 1.0):
        if gamma is not None and gamma <= 0:
            raise exc.NonpositiveFunction(f"gamma must be positive, got {gamma}.")
        if psi1 <= 0:
            raise exc.DomainError(f"Ψ(1) must be positive, got {psi1}.")

        self.spec = spec
        self.beta = float(beta)
        self.gamma = None if gamma is None else float(gamma)
        self.psi1 = float(psi1)

    def __repr__(self):
        return f"radial-u(spec={self.spec.to_string()}, beta={self.beta:g}, gamma={self.gamma}, psi1={self.psi1:g})"

    @property
    def tends_to_zero(self) -> bool:
        return True

    def log_values(self, radii) -> np.ndarray:
        radii = self.check_domain(radii)
        n_max = int(radii.max()) if radii.size else 0

        log_psi = log_psi_array(spec=self.spec, psi1=self.psi1, n_max=max(n_max, 1))
        safe = np.where(radii > 0, radii, 1)

        logs = self.beta * np.log(safe.astype(float)) - 0.5 * log_psi[safe - 1]

        if self.gamma is not None:
            logs = np.where(radii == 0, math.log(self.gamma), logs)
        return logs

    def step_ratios(self, radii) -> np.ndarray:
        radii = as_radii(radii)
        n = np.where(radii > 0, radii, 1)
        branching = self.spec.branching_array(int(n.max()) + 1)[n].astype(float)

        ratios = np.exp(self.beta * np.log1p(1.0 / n)) / np.sqrt(branching)

        if np.any(radii == 0):
            self.check_domain(np.array([0]))
            ratios = np.where(radii == 0, self.psi1 ** -0.5 / self.gamma, ratios)
        return ratios


class TabulatedFunction(RadialFunction):
    """
    A radial function given by its values at the radii 0, 1, ..., len(table) - 1.
    """

    family = "tabulated"

    def __init__(self, table: Sequence[float], tends_to_zero: bool = False):
        self.table = np.asarray(table, dtype=float)
        self.gamma = float(self.table[0])
        self._tends_to_zero = tends_to_zero

    @property
    def tends_to_zero(self) -> bool:
        return self._tends_to_zero

    def _checked(self, radii) -> np.ndarray:
        radii = as_radii(radii)
        if radii.size and radii.max() >= self.table.shape[0]:
            raise exc.DomainError(
                f"Tabulated function covers radii [0, {self.table.shape[0]}), got {radii.max()}."
            )
        return radii

    def positive_on(self, radii) -> bool:
        return bool(np.all(self.table[self._checked(radii)] > 0))

    def values(self, radii) -> np.ndarray:
        return self.table[self._checked(radii)]

    def log_values(self, radii) -> np.ndarray:
        values = self.values(radii)
        if np.any(values <= 0):
            raise exc.NonpositiveFunction("A tabulated function has no logarithm where it is not positive.")
        return np.log(values)

    def step_ratios(self, radii) -> np.ndarray:
        radii = self._checked(np.asarray(radii) + 1) - 1
        current = self.table[radii]
        if np.any(current <= 0):
            raise exc.NonpositiveFunction("Ratios f(n+1)/f(n) need f(n) > 0.")
        return self.table[radii + 1] / current


class ConstantFunction(RadialFunction):
    family = "constant"

    def __init__(self, value: float = 1.0):
        self.value = float(value)
        self.gamma = self.value

    def positive_on(self, radii) -> bool:
        return self.value > 0

    def values(self, radii) -> np.ndarray:
        return np.full(as_radii(radii).shape, self.value)

    def log_values(self, radii) -> np.ndarray:
        if self.value <= 0:
            raise exc.NonpositiveFunction("A nonpositive constant has no logarithm.")
        return np.full(as_radii(radii).shape, math.log(self.value))

    def step_ratios(self, radii) -> np.ndarray:
        return np.ones(as_radii(radii).shape)


class GeometricMean(RadialFunction):
    """
    (u v)^{1/2} of two positive radial functions.
    """

    family = "geometric-mean"

    def __init__(self, u: RadialFunction, v: RadialFunction):
        self.u = u
        self.v = v
        self.gamma = None if u.gamma is None or v.gamma is None else math.sqrt(u.gamma * v.gamma)

    @property
    def tends_to_zero(self) -> bool:
        return self.u.tends_to_zero and self.v.tends_to_zero

    def log_values(self, radii) -> np.ndarray:
        return 0.5 * (self.u.log_values(radii) + self.v.log_values(radii))

    def step_ratios(self, radii) -> np.ndarray:
        return np.sqrt(self.u.step_ratios(radii) * self.v.step_ratios(radii))


def evaluate(function: RadialFunction, n: int) -> Real:
    """
    The value f(n), as a float up to the configured `log_space_radius` and as a `LogMagnitude` beyond it.
    """
    if n > config_util.config_int("numerics", "log_space_radius"):
        return LogMagnitude(log=float(function.log_values(np.array([n]))[0]))
    return float(function.values(np.array([n]))[0])
