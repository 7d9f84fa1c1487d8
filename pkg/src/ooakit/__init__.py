"""Toolkit for ordered orthogonal arrays.

Verification with per-shape evidence, exact and parametric size bounds,
constructions (full factorial, derivative evaluation, digit extraction),
exact minimal-size search at desk scale, and a machine-checkable model of
the basis-certification framework behind the existence bounds.
"""

from .bounds import (
    BoundReport,
    DimsRecord,
    bound_report,
    dims,
    existence_upper_bound,
    klp_threshold,
    net_ooa_params,
    net_to_ooa_params,
    ooa_lower_bound,
    ooa_to_net_params,
    rao_bound_oa,
)
from .construct import (
    PointSet,
    full_factorial,
    hermite_ooa,
    oa_to_ooa,
    ooa_to_oa,
    points_to_array,
)
from .core import (
    ArrayParams,
    ColumnIndex,
    Shape,
    SymbolArray,
    count_shapes,
    enumerate_shapes,
    shape_to_columns,
)
from .gf import FieldSpec, field_make, field_op, taylor_shift
from .klp import (
    CertReport,
    PartialAssignment,
    certify,
    count_reduced_assignments,
    dual_matrix,
    dual_value,
    enumerate_domain_family,
    enumerate_full_assignments,
    enumerate_reduced_assignments,
    indicator_matrix,
    indicator_value,
    integer_rank,
    precedes,
    sentinel_extension,
)
from .search import SearchResult, anneal_search, find_min_size, violation_count
from .verifier import (
    Failure,
    VerifyReport,
    project_columns,
    tuple_census,
    verify_oa,
    verify_ooa,
)

__version__ = "0.1.0"
