"""Exact higher-order tensor traces and their use on uniform hypergraph spectra."""
from .arith import Rational, UniPoly, factorial, multinomial, rational_format, rational_parse
from .combin import (
    ArcMultiset,
    IndexAssignment,
    arc_multiset_of,
    census_balanced,
    compositions,
    count_closed_walks,
    m_valent,
    walk_count_table_w,
    weight_b,
    weight_c,
)
from .errors import ResourceLimitError
from .oracle import matrix_power_trace, symbolic_trace_power, trace_d_oracle
from .spectral import (
    charpoly,
    charpoly_coeffs,
    is_p_hm_bipartite,
    laplacian_separation,
    power_sum_check,
    schur_P,
    symmetry_report,
)
from .tensors import (
    Hypergraph,
    Tensor,
    adjacency_tensor,
    degree_tensor,
    laplacian,
    signless_laplacian,
    unit_tensor,
)
from .trace_engine import pi_E, trace_2_closed, trace_3_closed, trace_d

__version__ = "0.1.0"
FORMAT_VERSION = "1"
