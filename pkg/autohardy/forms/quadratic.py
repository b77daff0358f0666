"""
The quadratic form of the combinatorial Laplacian,

    ⟨Δφ, φ⟩ = ½ Σ_{x ~ y} (φ(x) - φ(y))²,

and the weighted norms Σ W φ² it is compared with, on explicit truncations and on radial vectors.

A radial vector with coefficients φ_n has form Σ_n E_n (φ_n - φ_{n+1})² and norm Σ_n S_n W(n) φ_n², where S_n and
E_n = S_{n+1} are the sphere and edge counts of the tree. While the exact counts fit the wide-integer range these sums
are formed from the counts directly; deeper windows are summed in log space and may return a `LogMagnitude`.
"""
import logging
import math
from typing import Optional, Tuple, Union

import numpy as np

from autohardy import exc
from autohardy.forms.vectors import RadialVector, VertexFunction
from autohardy.functions.potential import ConstantPotential, RadialPotential, lambda_q
from autohardy.tree.radial_tree import RadialTreeSpec, log_sphere_sizes, sphere_sizes
from autohardy.tree.truncated import TruncatedTree
from autohardy.util import config_util
from autohardy.util.log_space import FLOAT_LOG_LIMIT, Real, maybe_exp

logger = logging.getLogger(__name__)

TestFunction = Union[RadialVector, VertexFunction]


def compensated_total(terms: np.ndarray) -> float:
    """
    The sum of the terms, switching to `math.fsum` above the configured `compensated_sum_terms`.
    """
    if terms.shape[0] > config_util.config_int("numerics", "compensated_sum_terms"):
        return math.fsum(terms)
    return float(np.sum(terms))


def _exact_counts(spec: RadialTreeSpec, start: int, stop: int) -> Optional[np.ndarray]:
    """
    S_start, ..., S_{stop-1} as floats converted from the exact counts, or None beyond the wide-integer range.
    """
    try:
        sizes = sphere_sizes(spec=spec, n_max=stop - 1)
    except exc.OverflowAtDepth:
        return None
    return np.array([float(size) for size in sizes[start:stop]])


def _signed_log_total(log_terms: np.ndarray, signs: np.ndarray) -> Real:
    """
    Σ sign_k exp(log_k) with the largest magnitude factored out, as a float when representable.
    """
    finite = np.isfinite(log_terms)
    if not np.any(finite):
        return 0.0

    offset = float(np.max(log_terms[finite]))
    scaled = compensated_total(np.where(finite, signs * np.exp(log_terms - offset), 0.0))

    if scaled == 0.0:
        return 0.0
    return maybe_exp(offset + math.log(abs(scaled)), threshold=FLOAT_LOG_LIMIT, sign=1 if scaled > 0 else -1)


def _form_terms(spec: RadialTreeSpec, phi: RadialVector) -> Tuple[Optional[np.ndarray], np.ndarray, np.ndarray]:
    """
    The edge terms E_n (φ_n - φ_{n+1})² of a radial vector, over the edges from radius start - 1 (or the root) to
    stop: exact terms when the counts are representable, and their logarithms.
    """
    lower = max(phi.start - 1, 0)
    edges = np.arange(lower, phi.stop)
    differences = phi.at(edges) - phi.at(edges + 1)

    counts = _exact_counts(spec=spec, start=lower + 1, stop=phi.stop + 1)

    with np.errstate(divide="ignore"):
        log_terms = log_sphere_sizes(spec=spec, n_max=phi.stop + 1)[lower + 1:] + 2.0 * np.log(np.abs(differences))

    exact = None if counts is None else counts * differences ** 2
    return exact, log_terms, np.ones(edges.shape)


def _norm_terms(
    spec: RadialTreeSpec, weight: RadialPotential, phi: RadialVector
) -> Tuple[Optional[np.ndarray], np.ndarray, np.ndarray]:
    support = phi.coefficients != 0.0
    radii = phi.radii[support]
    coefficients = phi.coefficients[support]

    if radii.size == 0:
        return np.zeros(0), np.zeros(0), np.zeros(0)

    weights = weight.values(radii)
    counts = _exact_counts(spec=spec, start=phi.start, stop=phi.stop)

    with np.errstate(divide="ignore"):
        log_terms = (
            log_sphere_sizes(spec=spec, n_max=phi.stop)[radii]
            + np.log(np.abs(weights))
            + 2.0 * np.log(np.abs(coefficients))
        )

    exact = None if counts is None else counts[support] * weights * coefficients ** 2
    return exact, log_terms, np.sign(weights)


def _log_space_note(name: str, phi: RadialVector):
    logger.warning(
        f"{name} on the window [{phi.start}, {phi.stop}) exceeds the exact count range and is summed in log space "
        f"(relative accuracy about 1e-14)."
    )


def quadform_full(tree: TruncatedTree, phi: VertexFunction, strict_interior: bool = False) -> float:
    """
    ½ Σ_{x ~ y} (φ(x) - φ(y))² for a function on an explicit truncation, read as zero outside it.

    Every edge inside the truncation is counted once, and every edge from the outermost sphere to a child outside
    the truncation contributes φ(x)².

    Parameters
    ----------
    tree
        The truncation B_N(o).
    phi
        The function, one value per vertex.
    strict_interior
        If True the function must vanish on the outermost sphere, as for functions supported in B_{N-1}(o).
    """
    values = phi.values
    outer = tree.level(tree.depth - 1)

    if strict_interior and np.any(values[outer] != 0.0):
        raise exc.SupportTouchesBoundary(
            f"The function is nonzero on the outermost sphere (radius {tree.depth - 1}) of the truncation."
        )

    edges = tree.edges()
    differences = values[edges[:, 0]] - values[edges[:, 1]]

    interior = compensated_total(differences ** 2)
    boundary = compensated_total(tree.boundary_degree[outer] * values[outer] ** 2)

    return interior + boundary


def quadform_radial(spec: RadialTreeSpec, phi: RadialVector) -> Real:
    """
    Σ_n E_n (φ_n - φ_{n+1})², the form ⟨Δφ, φ⟩ of the radial function with coefficients φ_n.
    """
    exact, log_terms, signs = _form_terms(spec=spec, phi=phi)
    if exact is not None:
        return compensated_total(exact)

    _log_space_note("quadform_radial", phi)
    return _signed_log_total(log_terms, signs)


def weighted_norm(spec: RadialTreeSpec, weight: RadialPotential, phi: TestFunction) -> Real:
    """
    Σ_x W(|x|) φ(x)², which is Σ_n S_n W(n) φ_n² for a radial vector.

    The weight is only evaluated where φ is nonzero, so a weight defined outside B_2(o) accepts functions supported
    there.
    """
    if isinstance(phi, VertexFunction):
        support = phi.values != 0.0
        if not np.any(support):
            return 0.0
        return compensated_total(weight.values(phi.tree.radius[support]) * phi.values[support] ** 2)

    exact, log_terms, signs = _norm_terms(spec=spec, weight=weight, phi=phi)
    if exact is not None:
        return compensated_total(exact)

    _log_space_note("weighted_norm", phi)
    return _signed_log_total(log_terms, signs)


def hardy_gap(spec: RadialTreeSpec, weight: RadialPotential, phi: TestFunction) -> Real:
    """
    ⟨Δφ, φ⟩ - Σ W φ², nonnegative for every finitely supported φ exactly when W is a Hardy weight.
    """
    if isinstance(phi, VertexFunction):
        return quadform_full(tree=phi.tree, phi=phi) - weighted_norm(spec=spec, weight=weight, phi=phi)

    form_exact, form_logs, form_signs = _form_terms(spec=spec, phi=phi)
    norm_exact, norm_logs, norm_signs = _norm_terms(spec=spec, weight=weight, phi=phi)

    if form_exact is not None and norm_exact is not None:
        return compensated_total(form_exact) - compensated_total(norm_exact)

    _log_space_note("hardy_gap", phi)
    return _signed_log_total(
        np.concatenate([form_logs, norm_logs]), np.concatenate([form_signs, -norm_signs])
    )


def poincare_gap(spec: RadialTreeSpec, remainder: RadialPotential, phi: TestFunction) -> Real:
    """
    ⟨Δφ, φ⟩ - Λ_q Σ φ² - Σ R φ², the gap of the improved Poincaré inequality with remainder R on T_{q+1}.
    """
    baseline = ConstantPotential(lambda_q(spec.q))
    return hardy_gap(spec=spec, weight=baseline + remainder, phi=phi)


def radial_to_vertex(tree: TruncatedTree, phi: RadialVector) -> VertexFunction:
    """
    Realise a radial vector on an explicit truncation, φ(x) = φ_{|x|}.
    """
    if phi.stop > tree.depth:
        raise exc.DomainError(
            f"The window [{phi.start}, {phi.stop}) does not fit in a truncation of depth {tree.depth}."
        )
    return VertexFunction(tree=tree, values=phi.at(tree.radius))

