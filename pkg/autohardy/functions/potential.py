import math
from abc import ABC, abstractmethod
from typing import Sequence, Tuple

import numpy as np

from autohardy import exc


def lambda_q(q: float) -> float:
    """
    Λ_q = (q^{1/2} - 1)^2, the bottom of the ℓ²-spectrum of the combinatorial Laplacian on T_{q+1} and the sharp
    constant of its Poincaré inequality.
    """
    return (math.sqrt(q) - 1.0) ** 2


def spectrum_bounds(q: float) -> Tuple[float, float]:
    """
    The endpoints [(q^{1/2} - 1)^2, (q^{1/2} + 1)^2] of the ℓ²-spectrum of the Laplacian on T_{q+1}.
    """
    return lambda_q(q), (math.sqrt(q) + 1.0) ** 2


def as_radii(radii) -> np.ndarray:
    radii = np.atleast_1d(np.asarray(radii, dtype=np.int64))
    if radii.size and radii.min() < 0:
        raise exc.DomainError(f"Radii must be nonnegative, got minimum {radii.min()}.")
    return radii


class RadialPotential(ABC):
    """
    A real function of the radius |x|, used for potentials Q of Schrödinger operators Δ + Q and for Hardy weights W.

    Subclasses implement the vectorised `values`; scalar evaluation, rescaling (`c * W`) and sums (`Λ_q + R`) are
    shared.
    """

    first_radius = 0

    @abstractmethod
    def values(self, radii) -> np.ndarray:
        pass

    def __call__(self, n: int) -> float:
        return float(self.values(np.array([n]))[0])

    def __mul__(self, factor: float) -> "RadialPotential":
        return ScaledPotential(potential=self, factor=float(factor))

    __rmul__ = __mul__

    def __add__(self, other: "RadialPotential") -> "RadialPotential":
        return SumPotential(terms=(self, other))

    def __neg__(self) -> "RadialPotential":
        return ScaledPotential(potential=self, factor=-1.0)

    def check_radii(self, radii) -> np.ndarray:
        radii = as_radii(radii)
        if radii.size and radii.min() < self.first_radius:
            raise exc.DomainError(
                f"{type(self).__name__} is defined for radii >= {self.first_radius}, got {radii.min()}."
            )
        return radii


class ConstantPotential(RadialPotential):
    def __init__(self, value: float):
        self.value = float(value)

    def values(self, radii) -> np.ndarray:
        radii = self.check_radii(radii)
        return np.full(radii.shape, self.value)

    def __repr__(self):
        return f"ConstantPotential({self.value})"


class TabulatedPotential(RadialPotential):
    """
    A potential given by its values at the radii start, start + 1, ..., start + len(table) - 1.

    Parameters
    ----------
    table
        The values.
    start
        The radius of the first value.
    fill
        The value returned outside the table; `None` makes evaluation outside the table an error.
    """

    def __init__(self, table: Sequence[float], start: int = 0, fill: float = None):
        self.table = np.asarray(table, dtype=float)
        self.start = int(start)
        self.fill = fill

    @property
    def stop(self) -> int:
        return self.start + self.table.shape[0]

    def values(self, radii) -> np.ndarray:
        radii = as_radii(radii)
        inside = (radii >= self.start) & (radii < self.stop)

        if self.fill is None and not np.all(inside):
            raise exc.DomainError(
                f"Tabulated potential covers radii [{self.start}, {self.stop}), got {radii.min()}..{radii.max()}."
            )

        result = np.full(radii.shape, 0.0 if self.fill is None else float(self.fill))
        result[inside] = self.table[radii[inside] - self.start]
        return result


class ScaledPotential(RadialPotential):
    def __init__(self, potential: RadialPotential, factor: float):
        self.potential = potential
        self.factor = factor
        self.first_radius = potential.first_radius

    def values(self, radii) -> np.ndarray:
        return self.factor * self.potential.values(radii)

    def __repr__(self):
        return f"{self.factor:g} * {self.potential!r}"


class SumPotential(RadialPotential):
    def __init__(self, terms: Tuple[RadialPotential, ...]):
        self.terms = tuple(terms)
        self.first_radius = max(term.first_radius for term in self.terms)

    def values(self, radii) -> np.ndarray:
        return sum(term.values(radii) for term in self.terms)

    def __repr__(self):
        return " + ".join(repr(term) for term in self.terms)


class PotentialQ(RadialPotential):
    """
    The potential Q(0) = 0, Q(1) = q^{1/2}, Q(n) = -Λ_q for n >= 2 on T_{q+1}.

    For this Q the functions u = q^{-n/2} and v = n q^{-n/2} (both equal to γ at the root) are H-harmonic outside
    B_2(o) and H-superharmonic everywhere for q^{-1/2} <= γ <= q^{-1/2} + q^{1/2} - 2^{1/2}, where H = Δ + Q.
    """

    def __init__(self, q: int):
        self.q = q

    def values(self, radii) -> np.ndarray:
        radii = self.check_radii(radii)
        result = np.full(radii.shape, -lambda_q(self.q))
        result[radii == 0] = 0.0
        result[radii == 1] = math.sqrt(self.q)
        return result

    def __repr__(self):
        return f"PotentialQ(q={self.q})"
