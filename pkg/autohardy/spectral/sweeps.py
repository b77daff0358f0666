"""
Window sweeps of the smallest eigenvalue: the bottom of the spectrum, criticality evidence, the best constant on
growing annuli and the null-criticality partial sums.

None of these certify anything about the infinite tree. A sweep reports the values on a sequence of finite windows,
whether they decrease, and a Richardson estimate of their limit assuming a 1/N² approach.
"""
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from autohardy import exc
from autohardy.functions.potential import RadialPotential
from autohardy.functions.radial_function import RadialFunction
from autohardy.spectral.jacobi import build_jacobi, lambda_min, sturm_count
from autohardy.spectral.pencil import hardy_ratio_inf
from autohardy.tree.radial_tree import RadialTreeSpec, log_sphere_sizes
from autohardy.util import config_util, csv_util
from autohardy.util.log_space import Real, maybe_exp

logger = logging.getLogger(__name__)

SWEEP_HEADER = ("window_end", "lambda_min", "monotone_ok")
NULL_CRITICALITY_HEADER = ("n", "partial_sum", "ratio")


def richardson(windows: Sequence[int], values: Sequence[float]) -> Tuple[float, float]:
    """
    Extrapolate the last two values of a sweep to N -> infinity assuming value(N) = limit + c / N².

    Returns
    -------
    The limit estimate and its uncertainty, the distance of the last value from the estimate. A single window gives
    its value with an infinite uncertainty.
    """
    if len(values) == 1:
        return float(values[0]), math.inf

    n_1, n_2 = float(windows[-2]) ** 2, float(windows[-1]) ** 2
    value_1, value_2 = values[-2], values[-1]

    limit = (n_2 * value_2 - n_1 * value_1) / (n_2 - n_1)
    return limit, abs(value_2 - limit)


@dataclass(frozen=True)
class SweepResult:
    """
    The smallest eigenvalue (or best constant) on a strictly increasing sequence of windows.

    Attributes
    ----------
    windows
        The window ends N.
    values
        The value on each window.
    decreasing
        Per window, whether its value is strictly below the previous one (true for the first window).
    limit, uncertainty
        The Richardson estimate of the limit and its uncertainty.
    value_label
        The CSV column name of `values`.
    """

    windows: Tuple[int, ...]
    values: Tuple[float, ...]
    decreasing: Tuple[bool, ...]
    limit: float
    uncertainty: float
    value_label: str = "lambda_min"

    @classmethod
    def from_values(cls, windows: Sequence[int], values: Sequence[float], value_label: str = "lambda_min"):
        decreasing = [True] + [later < earlier for earlier, later in zip(values[:-1], values[1:])]
        limit, uncertainty = richardson(windows=windows, values=values)
        return cls(
            windows=tuple(int(window) for window in windows),
            values=tuple(float(value) for value in values),
            decreasing=tuple(decreasing),
            limit=limit,
            uncertainty=uncertainty,
            value_label=value_label,
        )

    @property
    def is_monotone(self) -> bool:
        return all(self.decreasing)

    @property
    def last(self) -> float:
        return self.values[-1]

    def to_csv(self) -> str:
        header = (SWEEP_HEADER[0], self.value_label, SWEEP_HEADER[2])
        text = csv_util.format_rows(header=header, rows=zip(self.windows, self.values, self.decreasing))
        return text + csv_util.format_rows(header=("limit", "uncertainty"), rows=[(self.limit, self.uncertainty)])

    def write(self, out: Optional[Union[str, Path]] = None):
        csv_util.write_text(self.to_csv(), out=out)


def _checked_windows(windows: Sequence[int], lower: int) -> Tuple[int, ...]:
    windows = tuple(int(window) for window in windows)
    if not windows:
        raise exc.DomainError("A sweep needs at least one window.")
    if windows[0] <= lower:
        raise exc.DomainError(f"Sweep windows must end after radius {lower}, got {windows[0]}.")
    if any(later <= earlier for earlier, later in zip(windows[:-1], windows[1:])):
        raise exc.DomainError(f"Sweep windows must be strictly increasing, got {list(windows)}.")
    return windows


def poincare_bottom_sweep(spec: RadialTreeSpec, windows: Sequence[int]) -> SweepResult:
    """
    The bottom of the Dirichlet Laplacian on the balls B_N = [0, N) of a homogeneous tree.

    The values decrease strictly towards Λ_q = (q^{1/2} - 1)², the bottom of the ℓ² spectrum, from above.
    """
    if not spec.is_homogeneous:
        raise exc.DomainError(f"The Poincaré sweep needs a homogeneous tree, got {spec.to_string()}.")

    windows = _checked_windows(windows, lower=0)

    values = []
    for window in windows:
        value = lambda_min(build_jacobi(spec=spec, potential=None, window=(0, window)))
        logger.info(f"Poincaré sweep: lambda_min(B_{window}) = {value:.12g}.")
        values.append(value)

    return SweepResult.from_values(windows=windows, values=values)


def criticality_probe(spec: RadialTreeSpec, weight: RadialPotential, windows: Sequence[int]) -> SweepResult:
    """
    The bottom of Δ - W on the balls B_N, with Dirichlet conditions outside the ball.

    For a Hardy weight these values are nonnegative and decrease with N. When Δ - W is critical they approach zero,
    while a subcritical deficit keeps them away from zero; the probe reports the trend and its extrapolated limit,
    which is evidence about criticality and never a certificate.

    On windows up to `sturm_certify_limit` a Sturm count independently confirms that no eigenvalue lies below
    -`nonnegativity_tolerance`.

    Raises
    ------
    NonnegativityViolated
        If an eigenvalue below -`nonnegativity_tolerance` is found, which contradicts W being a Hardy weight.
    """
    windows = _checked_windows(windows, lower=0)

    tolerance = config_util.config_float("spectral", "nonnegativity_tolerance")
    certify_limit = config_util.config_int("spectral", "sturm_certify_limit")

    values = []
    for window in windows:
        system = build_jacobi(spec=spec, potential=weight, window=(0, window))
        value = lambda_min(system)

        if value < -tolerance:
            raise exc.NonnegativityViolated(window=window, value=value)

        if window <= certify_limit:
            count = sturm_count(system.diagonal, system.off_diagonal, -tolerance)
            if count > 0:
                raise exc.NonnegativityViolated(window=window, value=value)

        logger.info(f"Criticality probe: lambda_min(Δ - W on B_{window}) = {value:.12g}.")
        values.append(value)

    return SweepResult.from_values(windows=windows, values=values)


def hardy_ratio_sweep(
    spec: RadialTreeSpec,
    weight: RadialPotential,
    windows: Sequence[int],
    annulus_start: int = 2,
    baseline: Optional[RadialPotential] = None,
    poincare_baseline: bool = False,
) -> SweepResult:
    """
    The best constant of the Hardy inequality on the annuli [a, N) for each window end N.

    For a weight optimal near infinity the values decrease towards one. The rate at which they do is reported
    empirically, through the Richardson estimate, and not asserted.
    """
    windows = _checked_windows(windows, lower=annulus_start)

    values = []
    for window in windows:
        value = hardy_ratio_inf(
            spec=spec,
            weight=weight,
            annulus=(annulus_start, window),
            baseline=baseline,
            poincare_baseline=poincare_baseline,
        )
        logger.info(f"Hardy ratio sweep: best constant on [{annulus_start}, {window}) = {value:.12g}.")
        values.append(value)

    return SweepResult.from_values(windows=windows, values=values, value_label="ratio")


@dataclass(frozen=True)
class NullCriticalitySums:
    """
    The partial sums Σ_{k <= n} S_k z(k)² W(k) for n = 0, ..., N, stored through their logarithms, with the
    divergence diagnostic sum(2n) / sum(n).

    A ratio tending to one means the sums converge (z is in ℓ²_W); tending to 2 or 4 means linear or quadratic
    divergence.
    """

    log_partial_sums: np.ndarray
    ratios: np.ndarray

    @property
    def radii(self) -> np.ndarray:
        return np.arange(self.ratios.shape[0])

    @property
    def partial_sums(self):
        return [self.partial_sum(n) for n in range(self.log_partial_sums.shape[0])]

    def partial_sum(self, n: int) -> Real:
        log_sum = float(self.log_partial_sums[n])
        if math.isinf(log_sum):
            return 0.0
        return maybe_exp(log_sum, threshold=config_util.config_float("numerics", "psi_log_threshold"))

    @property
    def final_ratio(self) -> float:
        return float(self.ratios[-1])

    def to_csv(self) -> str:
        count = self.ratios.shape[0]
        rows = zip(range(count), self.partial_sums[:count], self.ratios)
        return csv_util.format_rows(header=NULL_CRITICALITY_HEADER, rows=rows)

    def write(self, out: Optional[Union[str, Path]] = None):
        csv_util.write_text(self.to_csv(), out=out)


def _log_abs(function: RadialFunction, radii: np.ndarray) -> np.ndarray:
    try:
        return function.log_values(radii)
    except exc.NonpositiveFunction:
        with np.errstate(divide="ignore"):
            return np.log(np.abs(function.values(radii)))


def null_criticality_sums(
    spec: RadialTreeSpec, weight: RadialPotential, z: RadialFunction, n_max: int
) -> NullCriticalitySums:
    """
    Partial sums of the ℓ²_W norm of a ground state z, to decide whether z is in ℓ²_W (Hardy weights optimal near
    infinity need it not to be).

    Every term S_k z(k)² W(k) is formed in log space and the sums are accumulated by log-add-exp, so the sums are
    available up to radius 2N whatever the growth of S_k or the decay of z. Zeros of z or W contribute nothing.

    Parameters
    ----------
    spec
        The tree.
    weight
        W, nonnegative.
    z
        The ground state.
    n_max
        N; the sums are formed up to 2N so that every row n <= N has its ratio.
    """
    if n_max < 0:
        raise exc.DomainError(f"Null-criticality sums need N >= 0, got {n_max}.")

    radii = np.arange(2 * n_max + 1)

    weights = weight.values(radii)
    if np.any(weights < -config_util.config_float("numerics", "identity_tolerance")):
        raise exc.NonpositiveWeight("Null-criticality sums need a nonnegative weight.")

    with np.errstate(divide="ignore"):
        log_weights = np.log(np.maximum(weights, 0.0))

    log_terms = log_sphere_sizes(spec=spec, n_max=radii.shape[0]) + 2.0 * _log_abs(z, radii) + log_weights
    log_partial_sums = np.logaddexp.accumulate(log_terms)

    head = log_partial_sums[: n_max + 1]
    doubled = log_partial_sums[2 * radii[: n_max + 1]]

    with np.errstate(invalid="ignore", over="ignore"):
        ratios = np.where(np.isneginf(head), np.nan, np.exp(doubled - head))

    logger.info(
        f"Null-criticality sums of {z!r} against {weight!r}: sum(2N)/sum(N) = {ratios[-1]:.9g} at N = {n_max}."
    )

    return NullCriticalitySums(log_partial_sums=log_partial_sums, ratios=ratios)
