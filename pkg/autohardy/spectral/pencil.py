"""
The weighted pencil behind the best constant of a Hardy inequality on an annulus.

The best constant C(W) such that ⟨Δφ, φ⟩ - Σ B φ² >= C Σ W φ² for φ supported in [a, N) is the smallest eigenvalue of
the pencil (J_B, D_W), where J_B is the Jacobi matrix of Δ - B and D_W = diag(W(n)). It is computed as 1 + λ with λ
the bottom of D_W^{-1/2} J_{B+W} D_W^{-1/2}, which resolves C - 1 to full precision when C is close to one.

Radii where W vanishes carry no norm; they are removed by Schur-complement deflation, which keeps the reduced matrix
tridiagonal, and restored when an eigenvector is needed.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from autohardy import exc
from autohardy.functions.potential import RadialPotential
from autohardy.spectral.jacobi import (
    JacobiSystem,
    build_jacobi,
    tridiagonal_lambda_min,
    tridiagonal_lambda_min_vector,
)
from autohardy.tree.radial_tree import RadialTreeSpec
from autohardy.util import config_util

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Elimination:
    """
    A radius removed from the pencil, with its neighbours in the chain at the time of removal (-1 for none).
    """

    index: int
    left: int
    right: int
    left_coupling: float
    right_coupling: float
    diagonal: float


@dataclass(frozen=True, eq=False)
class WeightedPencil:
    """
    The pencil (J_{B+W}, D_W) on a window, after deflation of the radii where W vanishes.

    Attributes
    ----------
    system
        The Jacobi system of Δ - B - W on the full window.
    weights
        W on the full window.
    kept
        The window positions that carry norm.
    diagonal, off_diagonal
        The Schur complement of J_{B+W} on the kept positions.
    eliminations
        The deflation steps, in the order they were applied.
    """

    system: JacobiSystem
    weights: np.ndarray
    kept: np.ndarray
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    eliminations: List[Elimination]

    def scaled(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        The standard-form matrix D^{-1/2} J D^{-1/2} on the kept positions.
        """
        root = np.sqrt(self.weights[self.kept])
        return self.diagonal / root ** 2, self.off_diagonal / (root[:-1] * root[1:])

    def bottom(self) -> float:
        diagonal, off_diagonal = self.scaled()
        return tridiagonal_lambda_min(diagonal, off_diagonal)

    def bottom_vector(self) -> Tuple[float, np.ndarray]:
        """
        The bottom eigenvalue λ and the generalised eigenvector ψ on the full window, in Jacobi coordinates.
        """
        diagonal, off_diagonal = self.scaled()
        value, vector = tridiagonal_lambda_min_vector(diagonal, off_diagonal)

        psi = np.zeros(self.system.size)
        psi[self.kept] = vector / np.sqrt(self.weights[self.kept])

        for step in reversed(self.eliminations):
            total = 0.0
            if step.left >= 0:
                total += step.left_coupling * psi[step.left]
            if step.right >= 0:
                total += step.right_coupling * psi[step.right]
            psi[step.index] = -total / step.diagonal

        return value, psi


def _zero_weight_tolerance() -> float:
    return config_util.config_float("numerics", "identity_tolerance")


def build_pencil(
    spec: RadialTreeSpec,
    weight: RadialPotential,
    window: Tuple[int, int],
    baseline: Optional[RadialPotential] = None,
    poincare_baseline: bool = False,
) -> WeightedPencil:
    """
    Assemble the pencil of ⟨Δφ, φ⟩ - Σ B φ² against Σ W φ² on the window.

    Raises
    ------
    NonpositiveWeight
        If W is negative somewhere on the window, or if a radius with W = 0 cannot be deflated.
    """
    start, stop = window
    radii = np.arange(start, stop)
    weights = weight.values(radii)

    tolerance = _zero_weight_tolerance()
    if np.any(weights < -tolerance):
        first = int(radii[np.argmax(weights < -tolerance)])
        raise exc.NonpositiveWeight(f"The weight is negative at radius {first}: {weight(first):.3e}.")

    potential = weight if baseline is None else baseline + weight
    system = build_jacobi(spec=spec, potential=potential, window=window, poincare_shift=poincare_baseline)

    weights = np.maximum(weights, 0.0)
    zero = weights == 0.0
    if np.all(zero):
        raise exc.NonpositiveWeight(f"The weight vanishes on the whole window [{start}, {stop}).")

    if not np.any(zero):
        return WeightedPencil(
            system=system,
            weights=weights,
            kept=np.arange(system.size),
            diagonal=system.diagonal,
            off_diagonal=system.off_diagonal,
            eliminations=[],
        )

    diagonal = system.diagonal.tolist()
    couplings = system.off_diagonal.tolist()
    chain = list(range(system.size))
    eliminations = []

    for index in np.nonzero(zero)[0]:
        position = chain.index(int(index))
        pivot = diagonal[position]
        if pivot <= 0.0:
            raise exc.NonpositiveWeight(
                f"Radius {start + int(index)} has zero weight and a nonpositive pivot, so it cannot be deflated."
            )

        left = chain[position - 1] if position > 0 else -1
        right = chain[position + 1] if position < len(chain) - 1 else -1
        left_coupling = couplings[position - 1] if left >= 0 else 0.0
        right_coupling = couplings[position] if right >= 0 else 0.0

        if left >= 0:
            diagonal[position - 1] -= left_coupling ** 2 / pivot
        if right >= 0:
            diagonal[position + 1] -= right_coupling ** 2 / pivot

        if left >= 0 and right >= 0:
            couplings[position - 1] = -left_coupling * right_coupling / pivot
            del couplings[position]
        elif left >= 0:
            del couplings[position - 1]
        elif right >= 0:
            del couplings[position]

        del diagonal[position]
        del chain[position]

        eliminations.append(
            Elimination(
                index=int(index),
                left=left,
                right=right,
                left_coupling=left_coupling,
                right_coupling=right_coupling,
                diagonal=pivot,
            )
        )

    if eliminations:
        logger.debug(f"Deflated {len(eliminations)} zero-weight radii from [{start}, {stop}).")

    return WeightedPencil(
        system=system,
        weights=weights,
        kept=np.array(chain, dtype=np.int64),
        diagonal=np.array(diagonal),
        off_diagonal=np.array(couplings),
        eliminations=eliminations,
    )


def hardy_ratio_inf(
    spec: RadialTreeSpec,
    weight: RadialPotential,
    annulus: Tuple[int, int],
    baseline: Optional[RadialPotential] = None,
    poincare_baseline: bool = False,
) -> float:
    """
    inf over radial φ supported in the annulus [a, N) of (⟨Δφ, φ⟩ - Σ B φ²) / Σ W φ².

    This is above one on every finite annulus when W is a Hardy weight (for Δ - B), and approaches one as N grows
    when W is optimal near infinity.

    Parameters
    ----------
    spec
        The tree.
    weight
        W, which must be nonnegative on the annulus.
    annulus
        The radii [a, N).
    baseline
        An optional potential B subtracted from the form.
    poincare_baseline
        Subtract Λ_q from the form, cancellation free (homogeneous trees only).
    """
    pencil = build_pencil(
        spec=spec, weight=weight, window=annulus, baseline=baseline, poincare_baseline=poincare_baseline
    )
    return 1.0 + pencil.bottom()
