"""
The Jacobi reduction of radial Schrödinger forms.

For a radial φ supported on the window [a, b) the substitution ψ_n = S_n^{1/2} φ_n turns

    Σ_n E_n (φ_n - φ_{n+1})² - Σ_n S_n V(n) φ_n²

into ψᵀ J ψ for the symmetric tridiagonal matrix J with

    d_n = m̄(n) + 1 - V(n),   e_0 = -(m̄(0) + 1)^{1/2},   e_n = -m̄(n)^{1/2}  (n >= 1).

No sphere count appears in J, so its entries stay of order one at any depth and windows of millions of radii can be
handled. The smallest eigenvalue is found by Sturm-sequence bisection (LAPACK `stebz` through
`scipy.linalg.eigh_tridiagonal`) and its eigenvector by inverse iteration (`stein`).
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import eigh_tridiagonal

from autohardy import exc
from autohardy.functions.potential import RadialPotential
from autohardy.tree.radial_tree import RadialTreeSpec
from autohardy.util import config_util

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class JacobiSystem:
    """
    The tridiagonal matrix of a radial form on the window [start, start + len(diagonal)).

    Parameters
    ----------
    start
        The first radius of the window.
    diagonal
        d_start, ..., d_{stop-1}.
    off_diagonal
        e_start, ..., e_{stop-2}, coupling radius n to radius n + 1.
    spec
        The tree the form lives on.
    potential
        The potential V subtracted from the diagonal, None for the bare Laplacian.
    poincare_shift
        Whether Λ_q was also subtracted from the diagonal.
    """

    start: int
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    spec: RadialTreeSpec
    potential: Optional[RadialPotential] = None
    poincare_shift: bool = False

    @property
    def size(self) -> int:
        return int(self.diagonal.shape[0])

    @property
    def stop(self) -> int:
        return self.start + self.size

    @property
    def window(self) -> Tuple[int, int]:
        return self.start, self.stop

    def dense(self) -> np.ndarray:
        """
        The full matrix, for small windows and tests.
        """
        return np.diag(self.diagonal) + np.diag(self.off_diagonal, 1) + np.diag(self.off_diagonal, -1)

    def quadratic_form(self, psi: np.ndarray) -> float:
        """
        ψᵀ J ψ.
        """
        psi = np.asarray(psi, dtype=float)
        return math.fsum(self.diagonal * psi ** 2) + 2.0 * math.fsum(self.off_diagonal * psi[:-1] * psi[1:])


def build_jacobi(
    spec: RadialTreeSpec,
    potential: Optional[RadialPotential],
    window: Tuple[int, int],
    poincare_shift: bool = False,
) -> JacobiSystem:
    """
    The Jacobi matrix of the radial form of Δ - V on the window [a, b), with Dirichlet (zero) values outside it.

    Parameters
    ----------
    spec
        The tree.
    potential
        V, evaluated on the window; None for V = 0.
    window
        The radii [a, b).
    poincare_shift
        Subtract Λ_q as well, written as d_n - Λ_q = (m̄(n) - q) + 2 q^{1/2} so that the interior diagonal of the
        homogeneous tree is exactly twice its off-diagonal and no cancellation occurs. Needs a homogeneous tree.
    """
    start, stop = window
    if not stop > start >= 0:
        raise exc.DomainError(f"A Jacobi window needs b > a >= 0, got [{start}, {stop}).")

    radii = np.arange(start, stop)
    branching = spec.branching_array(stop).astype(float)[start:]

    if poincare_shift:
        sqrt_q = math.sqrt(spec.q)
        diagonal = (branching - spec.q) + 2.0 * sqrt_q
    else:
        diagonal = branching + 1.0

    if potential is not None:
        diagonal = diagonal - potential.values(radii)

    coupling = branching[:-1].copy()
    if start == 0 and stop > 1:
        coupling[0] += 1.0
    off_diagonal = -np.sqrt(coupling)

    logger.debug(
        f"Jacobi system on [{start}, {stop}) for {spec.to_string()}, potential {potential!r}, "
        f"poincare_shift={poincare_shift}."
    )

    return JacobiSystem(
        start=start,
        diagonal=diagonal,
        off_diagonal=off_diagonal,
        spec=spec,
        potential=potential,
        poincare_shift=poincare_shift,
    )


def _tolerance(tolerance: Optional[float]) -> float:
    if tolerance is None:
        return config_util.config_float("spectral", "bisection_tolerance")
    return tolerance


def tridiagonal_lambda_min(
    diagonal: np.ndarray, off_diagonal: np.ndarray, tolerance: Optional[float] = None
) -> float:
    """
    The smallest eigenvalue of a symmetric tridiagonal matrix by Sturm-sequence bisection.
    """
    if diagonal.shape[0] == 1:
        return float(diagonal[0])

    values = eigh_tridiagonal(
        diagonal,
        off_diagonal,
        eigvals_only=True,
        select="i",
        select_range=(0, 0),
        lapack_driver="stebz",
        tol=_tolerance(tolerance),
    )
    return float(values[0])


def tridiagonal_lambda_min_vector(
    diagonal: np.ndarray, off_diagonal: np.ndarray, tolerance: Optional[float] = None
) -> Tuple[float, np.ndarray]:
    """
    The smallest eigenvalue and a unit eigenvector (bisection, then inverse iteration), signed so that its largest
    entry is positive.
    """
    if diagonal.shape[0] == 1:
        return float(diagonal[0]), np.ones(1)

    values, vectors = eigh_tridiagonal(
        diagonal,
        off_diagonal,
        eigvals_only=False,
        select="i",
        select_range=(0, 0),
        lapack_driver="stebz",
        tol=_tolerance(tolerance),
    )
    vector = vectors[:, 0]
    if vector[np.argmax(np.abs(vector))] < 0:
        vector = -vector
    return float(values[0]), vector


def lambda_min(system: JacobiSystem, tolerance: Optional[float] = None) -> float:
    """
    The smallest eigenvalue of the Jacobi system: the infimum over φ supported in the window of the form divided by
    Σ S_n φ_n².
    """
    return tridiagonal_lambda_min(system.diagonal, system.off_diagonal, tolerance=tolerance)


def lambda_min_vector(system: JacobiSystem, tolerance: Optional[float] = None) -> Tuple[float, np.ndarray]:
    return tridiagonal_lambda_min_vector(system.diagonal, system.off_diagonal, tolerance=tolerance)


def sturm_count(diagonal: np.ndarray, off_diagonal: np.ndarray, x: float) -> int:
    """
    The number of eigenvalues below x of a symmetric tridiagonal matrix, counted as the negative pivots of the
    LDLᵀ factorisation of T - x I (Sylvester's law of inertia).
    """
    tiny = np.finfo(float).tiny
    squares = off_diagonal ** 2

    count = 0
    pivot = float(diagonal[0]) - x
    for k in range(diagonal.shape[0]):
        if k > 0:
            pivot = (float(diagonal[k]) - x) - float(squares[k - 1]) / pivot
        if pivot == 0.0:
            pivot = -tiny
        if pivot < 0.0:
            count += 1
    return count


def gershgorin_bounds(diagonal: np.ndarray, off_diagonal: np.ndarray) -> Tuple[float, float]:
    radius = np.zeros(diagonal.shape[0])
    radius[:-1] += np.abs(off_diagonal)
    radius[1:] += np.abs(off_diagonal)
    return float(np.min(diagonal - radius)), float(np.max(diagonal + radius))


def sturm_bisection(diagonal: np.ndarray, off_diagonal: np.ndarray, tolerance: Optional[float] = None) -> float:
    """
    The smallest eigenvalue by plain bisection on `sturm_count`, bracketed by the Gershgorin bounds. Slower than the
    LAPACK path and kept as an independent check on small windows.
    """
    tolerance = _tolerance(tolerance)
    lower, upper = gershgorin_bounds(diagonal, off_diagonal)

    while upper - lower > tolerance:
        middle = 0.5 * (lower + upper)
        if middle in (lower, upper):
            break
        if sturm_count(diagonal, off_diagonal, middle) >= 1:
            upper = middle
        else:
            lower = middle
    return 0.5 * (lower + upper)
