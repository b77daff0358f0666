import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from autohardy import exc
from autohardy.forms.quadratic import hardy_gap
from autohardy.forms.vectors import RadialVector
from autohardy.functions.potential import ConstantPotential, RadialPotential, lambda_q
from autohardy.spectral.pencil import WeightedPencil, build_pencil
from autohardy.tree.radial_tree import RadialTreeSpec, log_sphere_sizes, sphere_sizes
from autohardy.util import config_util, csv_util
from autohardy.util.log_space import FLOAT_LOG_LIMIT

logger = logging.getLogger(__name__)

VERIFIED_BY_FORMS = "forms"
VERIFIED_BY_JACOBI = "jacobi"

WITNESS_HEADER = ("radius", "value")
WITNESS_SUMMARY_HEADER = ("ratio", "window_start", "window_end", "gap", "verified_by")


@dataclass(frozen=True)
class Witness:
    """
    A radial function violating the inequality with the weight rescaled by the constant C.

    Attributes
    ----------
    vector
        φ on the annulus [a, N), normalised so that the congruence factor is one at radius a.
    ratio
        The best constant on the annulus, below C.
    window
        The annulus [a, N) the witness was found on.
    gap
        The gap of the rescaled inequality at φ (negative), in the coordinates it was verified in.
    verified_by
        `forms` when the gap was recomputed from the quadratic form of φ, `jacobi` when the window is beyond the
        exact count range and the gap was recomputed from ψ_n = S_n^{1/2} φ_n.
    """

    vector: RadialVector
    ratio: float
    window: Tuple[int, int]
    gap: float
    verified_by: str

    @property
    def found(self) -> bool:
        return True

    def to_csv(self) -> str:
        """
        The witness as `radius, value` rows, omitting the radii where φ underflows to zero, followed by a summary row.
        """
        support = self.vector.coefficients != 0.0
        rows = zip(self.vector.radii[support].tolist(), self.vector.coefficients[support])
        text = csv_util.format_rows(header=WITNESS_HEADER, rows=rows)
        summary = (self.ratio, self.window[0], self.window[1], self.gap, self.verified_by)
        return text + csv_util.format_rows(header=WITNESS_SUMMARY_HEADER, rows=[summary])

    def write(self, out: Optional[Union[str, Path]] = None):
        csv_util.write_text(self.to_csv(), out=out)


@dataclass(frozen=True)
class NotFound:
    """
    The outcome of a violator search that exhausted its window budget, with the last best constant reached.
    """

    last_ratio: float
    last_window: Tuple[int, int]
    ratios: Tuple[float, ...]

    @property
    def found(self) -> bool:
        return False

    def to_csv(self) -> str:
        return csv_util.format_rows(
            header=("last_ratio", "last_window_end"), rows=[(self.last_ratio, self.last_window[1])]
        )

    def write(self, out: Optional[Union[str, Path]] = None):
        csv_util.write_text(self.to_csv(), out=out)


def search_windows(start: int, first_stop: int, max_stop: int) -> List[int]:
    """
    The window ends searched: first_stop, doubled until max_stop, with max_stop itself last.

    Raises
    ------
    InvalidParams
        If max_stop does not lie beyond the annulus start, so no annulus [start, stop) is nonempty.
    """
    if max_stop <= start:
        raise exc.InvalidParams(
            bound="max_window > annulus_start",
            message=f"The largest annulus end {max_stop} must exceed the annulus start {start}.",
        )

    stops = []
    stop = max(first_stop, start + 1)
    while stop < max_stop:
        stops.append(stop)
        stop *= 2
    stops.append(max_stop)
    return stops


def _poincare_energy(psi: np.ndarray, sqrt_q: float) -> float:
    """
    ψᵀ J_{Λ_q} ψ on a homogeneous window not containing the root, written as the sum of squares
    q^{1/2} [Σ (ψ_n - ψ_{n+1})² + ψ_a² + ψ_{N-1}²] so that no cancellation occurs.
    """
    differences = psi[:-1] - psi[1:]
    return sqrt_q * (math.fsum(differences ** 2) + psi[0] ** 2 + psi[-1] ** 2)


def _jacobi_gap(
    pencil: WeightedPencil, psi: np.ndarray, constant: float, baseline: Optional[RadialPotential], poincare_baseline: bool
) -> float:
    """
    The gap of the form with weight C W in Jacobi coordinates, ψᵀ J_B ψ - C Σ W ψ².
    """
    system = pencil.system
    weighted = constant * math.fsum(pencil.weights * psi ** 2)

    if poincare_baseline and baseline is None and system.start >= 1:
        return _poincare_energy(psi, math.sqrt(system.spec.q)) - weighted

    # J_{B+W} + D_W = J_B
    return system.quadratic_form(psi) + math.fsum(pencil.weights * psi ** 2) - weighted


def _representable(spec: RadialTreeSpec, window: Tuple[int, int]) -> bool:
    try:
        sphere_sizes(spec=spec, n_max=window[1])
    except exc.OverflowAtDepth:
        return False
    return True


def witness_vector(spec: RadialTreeSpec, pencil: WeightedPencil) -> Tuple[RadialVector, np.ndarray]:
    """
    The bottom generalised eigenvector of a pencil, as the radial function φ_n = ψ_n (S_a / S_n)^{1/2} on its window
    together with ψ itself.
    """
    _, psi = pencil.bottom_vector()
    start, stop = pencil.system.window

    log_sizes = log_sphere_sizes(spec=spec, n_max=stop)[start:]
    with np.errstate(under="ignore"):
        coefficients = psi * np.exp(-(log_sizes - log_sizes[0]) / 2.0)

    return RadialVector(start=start, coefficients=coefficients), psi


def _witness(
    spec: RadialTreeSpec,
    pencil: WeightedPencil,
    weight: RadialPotential,
    constant: float,
    ratio: float,
    baseline: Optional[RadialPotential],
    poincare_baseline: bool,
) -> Witness:
    phi, psi = witness_vector(spec=spec, pencil=pencil)
    start, stop = pencil.system.window

    log_sizes = log_sphere_sizes(spec=spec, n_max=stop)
    if _representable(spec, (start, stop)) and (log_sizes[-1] - log_sizes[start]) / 2.0 < FLOAT_LOG_LIMIT:
        target = constant * weight
        if baseline is not None:
            target = baseline + target
        if poincare_baseline:
            target = ConstantPotential(lambda_q(spec.q)) + target
        gap = float(hardy_gap(spec=spec, weight=target, phi=phi))
        verified_by = VERIFIED_BY_FORMS
    else:
        gap = _jacobi_gap(
            pencil=pencil, psi=psi, constant=constant, baseline=baseline, poincare_baseline=poincare_baseline
        )
        verified_by = VERIFIED_BY_JACOBI

    if gap >= 0.0:
        logger.warning(
            f"The bottom eigenvector on [{start}, {stop}) has ratio {ratio:.9g} < {constant:g} but its recomputed gap "
            f"is {gap:.3e}; rounding dominates at this window."
        )

    return Witness(vector=phi, ratio=ratio, window=(start, stop), gap=gap, verified_by=verified_by)


def find_violator(
    spec: RadialTreeSpec,
    weight: RadialPotential,
    constant: float,
    max_window: Optional[int] = None,
    annulus_start: int = 2,
    first_window: Optional[int] = None,
    baseline: Optional[RadialPotential] = None,
    poincare_baseline: bool = False,
) -> Union[Witness, NotFound]:
    """
    Search for a radial φ supported in some annulus [a, N) with ⟨Δφ, φ⟩ - Σ B φ² < C Σ W φ².

    The annulus end N doubles from `first_window` until the best constant of the annulus drops below C; the bottom
    eigenvector of that annulus is then the witness, and its gap is recomputed independently of the eigen-solve.
    For a Hardy weight optimal near infinity a witness exists for every C > 1; for C <= 1 none can.

    Parameters
    ----------
    spec
        The tree.
    weight
        W, nonnegative on the annuli.
    constant
        C.
    max_window
        The largest annulus end tried, by default the `violator_max_window` of the configuration.
    annulus_start
        a, the inner radius of every annulus.
    first_window
        The first annulus end, by default the `violator_start_window` of the configuration.
    baseline
        An optional potential B subtracted from the form.
    poincare_baseline
        Subtract Λ_q from the form (improved Poincaré inequalities on homogeneous trees).
    """
    if max_window is None:
        max_window = config_util.config_int("spectral", "violator_max_window")
    if first_window is None:
        first_window = config_util.config_int("spectral", "violator_start_window")

    ratios = []
    window = (annulus_start, annulus_start + 1)

    for stop in search_windows(start=annulus_start, first_stop=first_window, max_stop=max_window):
        window = (annulus_start, stop)
        pencil = build_pencil(
            spec=spec, weight=weight, window=window, baseline=baseline, poincare_baseline=poincare_baseline
        )
        ratio = 1.0 + pencil.bottom()
        ratios.append(ratio)

        logger.info(f"Violator search on [{annulus_start}, {stop}): best constant {ratio:.9g} against C = {constant:g}.")

        if ratio < constant:
            return _witness(
                spec=spec,
                pencil=pencil,
                weight=weight,
                constant=constant,
                ratio=ratio,
                baseline=baseline,
                poincare_baseline=poincare_baseline,
            )

    logger.warning(
        f"No violator of C = {constant:g} within annuli up to [{annulus_start}, {max_window}); "
        f"last best constant {ratios[-1]:.9g}."
    )
    return NotFound(last_ratio=ratios[-1], last_window=window, ratios=tuple(ratios))
