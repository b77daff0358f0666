from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Union

import numpy as np

from autohardy.forms.quadratic import (
    TestFunction,
    hardy_gap,
    quadform_full,
    quadform_radial,
    weighted_norm,
)
from autohardy.forms.vectors import VertexFunction
from autohardy.functions.potential import RadialPotential
from autohardy.tree.radial_tree import RadialTreeSpec, log_sphere_sizes
from autohardy.util import csv_util
from autohardy.util.log_space import Real

GAP_TABLE_HEADER = ("n_or_vertex", "phi", "W", "contribution")


@dataclass(frozen=True)
class GapRow:
    index: int
    phi: float
    weight: float
    contribution: float


@dataclass(frozen=True)
class GapTable:
    """
    The per-radius (or per-vertex) contributions S_n W(n) φ_n² to the weighted norm, with the totals of the form,
    the norm and the gap.
    """

    rows: List[GapRow]
    total_form: Real
    total_norm: Real
    gap: Real

    def to_csv(self) -> str:
        rows = [(row.index, row.phi, row.weight, row.contribution) for row in self.rows]
        text = csv_util.format_rows(header=GAP_TABLE_HEADER, rows=rows)
        summary = csv_util.format_rows(
            header=("total_form", "total_norm", "gap"), rows=[(self.total_form, self.total_norm, self.gap)]
        )
        return text + summary

    def write(self, out: Optional[Union[str, Path]] = None):
        csv_util.write_text(self.to_csv(), out=out)


def gap_table(spec: RadialTreeSpec, weight: RadialPotential, phi: TestFunction) -> GapTable:
    """
    Tabulate where the Hardy gap ⟨Δφ, φ⟩ - Σ W φ² of a test function comes from.
    """
    if isinstance(phi, VertexFunction):
        indices = np.nonzero(phi.values)[0]
        values = phi.values[indices]
        weights = weight.values(phi.tree.radius[indices])
        contributions = weights * values ** 2
        total_form = quadform_full(tree=phi.tree, phi=phi)
    else:
        support = phi.coefficients != 0.0
        indices = phi.radii[support]
        values = phi.coefficients[support]
        weights = weight.values(indices)
        with np.errstate(over="ignore"):
            sizes = np.exp(log_sphere_sizes(spec=spec, n_max=phi.stop)[indices])
        contributions = sizes * weights * values ** 2
        total_form = quadform_radial(spec=spec, phi=phi)

    rows = [
        GapRow(index=int(index), phi=float(value), weight=float(w), contribution=float(contribution))
        for index, value, w, contribution in zip(indices, values, weights, contributions)
    ]

    return GapTable(
        rows=rows,
        total_form=total_form,
        total_norm=weighted_norm(spec=spec, weight=weight, phi=phi),
        gap=hardy_gap(spec=spec, weight=weight, phi=phi),
    )
