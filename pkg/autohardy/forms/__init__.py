from autohardy.forms.gap_table import GAP_TABLE_HEADER, GapRow, GapTable, gap_table
from autohardy.forms.quadratic import (
    compensated_total,
    hardy_gap,
    poincare_gap,
    quadform_full,
    quadform_radial,
    radial_to_vertex,
    weighted_norm,
)
from autohardy.forms.random_functions import GAUSSIAN, UNIFORM, counter_generator, random_test_function
from autohardy.forms.vectors import RadialVector, VertexFunction
