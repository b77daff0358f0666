import logging
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from autohardy import exc
from autohardy.util import config_util
from autohardy.util.log_space import LogMagnitude, Real

logger = logging.getLogger(__name__)

EXTEND_REPEAT = "repeat"
EXTEND_AFFINE = "affine"


@dataclass(frozen=True)
class RadialTreeSpec:
    """
    A tree known up to radial symmetry about its root o, described by its branching sequence m̄(n).

    A vertex at radius n >= 1 has m̄(n) children and one parent, so its degree is m̄(n) + 1. The root has m̄(0) + 1
    children, which makes the homogeneous tree T_{q+1} the case m̄ = q.

    The sequence is stored as a finite prefix plus a policy extending it to all radii:

    - `repeat`: m̄(n) = prefix[-1] beyond the prefix.
    - `affine`: m̄(n) = max(2, floor(a * n + b)) beyond the prefix.

    Parameters
    ----------
    prefix
        The branching values m̄(0), m̄(1), ... given explicitly. Every entry must be >= 2.
    extend
        The extension policy, `repeat` or `affine`.
    affine
        The (a, b) coefficients of the affine extension.
    kind
        `homogeneous` for T_{q+1}, `custom` otherwise.
    """

    prefix: Tuple[int, ...]
    extend: str = EXTEND_REPEAT
    affine: Optional[Tuple[float, float]] = None
    kind: str = "custom"

    def __post_init__(self):
        if len(self.prefix) == 0:
            raise exc.TreeException("A branching sequence needs at least one explicit value.")

        if any(int(value) != value or value < 2 for value in self.prefix):
            raise exc.TreeException(
                f"Branching values must be integers >= 2 (transient trees only), got {self.prefix}."
            )

        if self.extend not in (EXTEND_REPEAT, EXTEND_AFFINE):
            raise exc.TreeException(f"Unknown extension policy {self.extend}.")

        if self.extend == EXTEND_AFFINE and self.affine is None:
            raise exc.TreeException("The affine extension needs (a, b) coefficients.")

    @classmethod
    def homogeneous(cls, q: int) -> "RadialTreeSpec":
        """
        The homogeneous tree T_{q+1}, every vertex having q + 1 neighbours.
        """
        return cls(prefix=(int(q),), extend=EXTEND_REPEAT, kind="homogeneous")

    @classmethod
    def custom(
        cls, prefix, extend: str = EXTEND_REPEAT, affine: Optional[Tuple[float, float]] = None
    ) -> "RadialTreeSpec":
        return cls(
            prefix=tuple(int(value) for value in prefix),
            extend=extend,
            affine=None if affine is None else (float(affine[0]), float(affine[1])),
            kind="custom",
        )

    @classmethod
    def from_string(cls, text: str) -> "RadialTreeSpec":
        """
        Parse the plain-text form `homogeneous:q=<int>` or `custom:prefix=<csv>;extend=<repeat|affine:a,b>`.
        """
        text = text.strip()

        match = re.fullmatch(r"homogeneous:q=(\d+)", text)
        if match:
            return cls.homogeneous(q=int(match.group(1)))

        match = re.fullmatch(r"custom:prefix=([\d,\s]+)(?:;extend=(.+))?", text)
        if match is None:
            raise exc.DescriptorException(f"Cannot parse tree spec '{text}'.")

        prefix = [int(value) for value in match.group(1).split(",") if value.strip()]
        extend_text = (match.group(2) or EXTEND_REPEAT).strip()

        if extend_text == EXTEND_REPEAT:
            return cls.custom(prefix=prefix)

        match = re.fullmatch(r"affine:([-+\d.eE]+),([-+\d.eE]+)", extend_text)
        if match is None:
            raise exc.DescriptorException(f"Cannot parse extension policy '{extend_text}'.")

        return cls.custom(
            prefix=prefix,
            extend=EXTEND_AFFINE,
            affine=(float(match.group(1)), float(match.group(2))),
        )

    def to_string(self) -> str:
        if self.kind == "homogeneous":
            return f"homogeneous:q={self.q}"
        prefix = ",".join(str(value) for value in self.prefix)
        if self.extend == EXTEND_REPEAT:
            return f"custom:prefix={prefix};extend=repeat"
        return f"custom:prefix={prefix};extend=affine:{self.affine[0]:g},{self.affine[1]:g}"

    @property
    def is_homogeneous(self) -> bool:
        return self.kind == "homogeneous"

    @property
    def q(self) -> int:
        """
        The branching number q of a homogeneous tree T_{q+1}.
        """
        if not self.is_homogeneous:
            raise exc.TreeException("Only a homogeneous tree has a single branching number q.")
        return self.prefix[0]

    def branching(self, n: int) -> int:
        """
        The number of children m̄(n) of a vertex at radius n (the root has m̄(0) + 1 children).
        """
        if n < 0:
            raise exc.DomainError(f"Radius must be nonnegative, got {n}.")
        if n < len(self.prefix):
            return self.prefix[n]
        if self.extend == EXTEND_REPEAT:
            return self.prefix[-1]
        a, b = self.affine
        return max(2, int(math.floor(a * n + b)))

    def branching_array(self, n_max: int) -> np.ndarray:
        """
        The branching values m̄(0), ..., m̄(n_max - 1) as an integer array.
        """
        radii = np.arange(n_max)
        values = np.empty(n_max, dtype=np.int64)

        explicit = min(n_max, len(self.prefix))
        values[:explicit] = self.prefix[:explicit]

        if n_max > explicit:
            tail = radii[explicit:]
            if self.extend == EXTEND_REPEAT:
                values[explicit:] = self.prefix[-1]
            else:
                a, b = self.affine
                values[explicit:] = np.maximum(2, np.floor(a * tail + b)).astype(np.int64)

        return values

    def degree(self, n: int) -> int:
        return self.branching(n) + 1

    @cached_property
    def is_nondecreasing(self) -> bool:
        """
        Whether n -> m̄(n) is nondecreasing on all radii, which the radial tree Hardy weights require.
        """
        if any(later < earlier for earlier, later in zip(self.prefix, self.prefix[1:])):
            return False
        if self.extend == EXTEND_REPEAT:
            return True
        if self.affine[0] < 0:
            return False
        return self.branching(len(self.prefix)) >= self.prefix[-1]


def _max_count() -> int:
    return 2 ** config_util.config_int("numerics", "max_count_bits") - 1


def _checked(value: int, depth: int) -> int:
    if value > _max_count():
        raise exc.OverflowAtDepth(depth)
    return value


def sphere_sizes(spec: RadialTreeSpec, n_max: int):
    """
    The exact sphere sizes S_0, ..., S_{n_max} as Python integers, with S_0 = 1, S_1 = m̄(0) + 1 and
    S_{n+1} = m̄(n) S_n. Raises `OverflowAtDepth` as soon as a count leaves the wide-integer range.
    """
    sizes = [1]
    if n_max >= 1:
        sizes.append(_checked(spec.branching(0) + 1, 1))
    for n in range(1, n_max):
        sizes.append(_checked(spec.branching(n) * sizes[n], n + 1))
    return sizes


def sphere_size(spec: RadialTreeSpec, n: int) -> int:
    """
    The number of vertices at distance exactly n from the root.
    """
    if n < 0:
        raise exc.DomainError(f"Radius must be nonnegative, got {n}.")
    return sphere_sizes(spec=spec, n_max=n)[n]


def ball_volume(spec: RadialTreeSpec, n: int) -> int:
    """
    The number of vertices of the ball B_n(o) = {x : |x| < n}, that is S_0 + ... + S_{n-1}.
    """
    if n < 1:
        raise exc.DomainError(f"Balls B_n(o) are defined for n >= 1, got {n}.")
    return _checked(sum(sphere_sizes(spec=spec, n_max=n - 1)), n - 1)


def ball_volume_closed_form(spec: RadialTreeSpec, n: int) -> int:
    """
    #B_n(o) = 1 + (m̄(0)+1) [1 + m̄(1) + m̄(1)m̄(2) + ... + m̄(1)...m̄(n-2)], the closed formula used as a check.
    """
    if n < 1:
        raise exc.DomainError(f"Balls B_n(o) are defined for n >= 1, got {n}.")
    if n == 1:
        return 1

    total = 0
    product = 1
    for k in range(1, n - 1):
        total += product
        product *= spec.branching(k)
    total += product

    return 1 + (spec.branching(0) + 1) * total


def edge_count_between_spheres(spec: RadialTreeSpec, n: int) -> int:
    """
    The number of edges joining the sphere of radius n to the sphere of radius n + 1, E_0 = S_1 and
    E_n = m̄(n) S_n. Every vertex at radius n + 1 has exactly one parent, so E_n = S_{n+1}.
    """
    if n < 0:
        raise exc.DomainError(f"Radius must be nonnegative, got {n}.")
    return sphere_size(spec=spec, n=n + 1)


def _cumulative_logs(increments: np.ndarray) -> np.ndarray:
    """
    The inclusive cumulative sums of log increments, accurate to a few ulps at any depth.

    Runs of equal increments (the repeated tail of a branching sequence) are filled in closed form, start + k * value,
    and the run totals are accumulated with Neumaier compensation, so the error does not grow with the depth.
    """
    increments = np.asarray(increments, dtype=float)
    if increments.size == 0:
        return increments.copy()

    starts = np.concatenate(([0], np.flatnonzero(np.diff(increments) != 0.0) + 1))
    lengths = np.diff(np.append(starts, increments.size))
    run_values = increments[starts]

    offsets = np.empty(starts.size)
    total = 0.0
    compensation = 0.0
    for run, run_total in enumerate((lengths * run_values).tolist()):
        offsets[run] = total + compensation
        updated = total + run_total
        if abs(total) >= abs(run_total):
            compensation += (total - updated) + run_total
        else:
            compensation += (run_total - updated) + total
        total = updated

    run_of = np.repeat(np.arange(starts.size), lengths)
    steps = np.arange(increments.size) - starts[run_of] + 1
    return offsets[run_of] + steps * run_values[run_of]


def log_sphere_sizes(spec: RadialTreeSpec, n_max: int) -> np.ndarray:
    """
    log S_0, ..., log S_{n_max - 1}, accumulated in log space so that any depth can be reached.
    """
    logs = np.zeros(n_max)
    if n_max > 1:
        branching = spec.branching_array(n_max).astype(float)
        increments = np.log(branching[: n_max - 1])
        increments[0] = math.log(branching[0] + 1.0)
        logs[1:] = _cumulative_logs(increments)
    return logs


def log_edge_counts(spec: RadialTreeSpec, n_max: int) -> np.ndarray:
    """
    log E_0, ..., log E_{n_max - 1}.
    """
    return log_sphere_sizes(spec=spec, n_max=n_max + 1)[1:]


def log_psi_sequence(spec: RadialTreeSpec, psi1: float, n: int) -> float:
    """
    log Ψ(n) for the sequence Ψ(1) = psi1, Ψ(n+1) = m̄(n) Ψ(n).
    """
    if n < 1:
        raise exc.DomainError(f"Ψ is defined for radii n >= 1, got {n}.")
    if psi1 <= 0:
        raise exc.DomainError(f"Ψ(1) must be positive, got {psi1}.")
    if n == 1:
        return math.log(psi1)
    branching = spec.branching_array(n)[1:n].astype(float)
    return math.log(psi1) + float(_cumulative_logs(np.log(branching))[-1])


def log_psi_array(spec: RadialTreeSpec, psi1: float, n_max: int) -> np.ndarray:
    """
    log Ψ(1), ..., log Ψ(n_max) as an array (entry k holds log Ψ(k + 1)).
    """
    branching = spec.branching_array(n_max).astype(float)
    logs = np.full(n_max, math.log(psi1))
    if n_max > 1:
        logs[1:] += _cumulative_logs(np.log(branching[1:n_max]))
    return logs


def psi_sequence(spec: RadialTreeSpec, psi1: float, n: int) -> Real:
    """
    The sequence Ψ with Ψ(1) = psi1 and Ψ(n+1) = m̄(n) Ψ(n), which ties the growth of Ψ to the branching of the tree.

    Values are computed exactly (integer product times psi1) while their magnitude stays below the configured
    `psi_log_threshold`; beyond it a `LogMagnitude` is returned.
    """
    log_value = log_psi_sequence(spec=spec, psi1=psi1, n=n)
    threshold = config_util.config_float("numerics", "psi_log_threshold")

    if abs(log_value) > threshold:
        logger.info(f"Ψ({n}) exceeds the float threshold, returning it in log space.")
        return LogMagnitude(log=log_value)

    product = 1
    for k in range(1, n):
        product *= spec.branching(k)

    return psi1 * product

