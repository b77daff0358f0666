from dataclasses import dataclass

import numpy as np

from autohardy import exc
from autohardy.tree.truncated import TruncatedTree


@dataclass(frozen=True, eq=False)
class VertexFunction:
    """
    A finitely supported function on a tree, given by one value per vertex of a truncation B_N(o) and read as zero
    outside it.
    """

    tree: TruncatedTree
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.tree.vertex_count,):
            raise exc.DomainError(
                f"A vertex function needs {self.tree.vertex_count} values, got shape {values.shape}."
            )
        object.__setattr__(self, "values", values)

    def __mul__(self, factor: float) -> "VertexFunction":
        return VertexFunction(tree=self.tree, values=factor * self.values)

    __rmul__ = __mul__

    @property
    def support_radii(self) -> np.ndarray:
        return np.unique(self.tree.radius[self.values != 0.0])


@dataclass(frozen=True, eq=False)
class RadialVector:
    """
    A radial function φ(x) = φ_{|x|} supported on the radii [start, stop), with coefficients φ_start ... φ_{stop-1}
    and zero elsewhere.
    """

    start: int
    coefficients: np.ndarray

    def __post_init__(self):
        coefficients = np.atleast_1d(np.asarray(self.coefficients, dtype=float))

        if self.start < 0:
            raise exc.DomainError(f"A radial window starts at a nonnegative radius, got {self.start}.")
        if coefficients.ndim != 1 or coefficients.shape[0] == 0:
            raise exc.DomainError("A radial vector needs a nonempty one dimensional array of coefficients.")
        if not np.all(np.isfinite(coefficients)):
            raise exc.DomainError("Radial vector coefficients must be finite.")

        object.__setattr__(self, "start", int(self.start))
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def stop(self) -> int:
        return self.start + self.coefficients.shape[0]

    @property
    def radii(self) -> np.ndarray:
        return np.arange(self.start, self.stop)

    def __mul__(self, factor: float) -> "RadialVector":
        return RadialVector(start=self.start, coefficients=factor * self.coefficients)

    __rmul__ = __mul__

    def at(self, radii) -> np.ndarray:
        """
        φ at arbitrary radii, zero outside the window.
        """
        radii = np.asarray(radii)
        inside = (radii >= self.start) & (radii < self.stop)
        result = np.zeros(radii.shape)
        result[inside] = self.coefficients[radii[inside] - self.start]
        return result
