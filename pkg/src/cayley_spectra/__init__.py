"""Exact spectra of Cayley graphs over small finite groups.

Groups are multiplication tables, subsets are bitmasks, and every
integrality verdict is certified with exact integer arithmetic; floats
appear only as cross-checks and human-readable evidence.
"""

from .catalog import (
    GroupParseError,
    all_groups_of_order,
    build,
    build_cached,
    catalog_up_to_12,
    parse_group_expr,
)
from .cayley import (
    AsymmetricSubsetError,
    CayleyGraph,
    SymmetricSubset,
    lift_from_quotient,
    lift_from_subgroup,
    lift_preimage,
    union_product_subset,
)
from .groups import (
    ElementSubset,
    FiniteGroup,
    closure,
    direct_product,
    is_normal,
    is_subgroup,
    quotient,
    semidirect_product,
    subgroup_group,
)
from .integrality import (
    BoundCheck,
    SpectrumVerdict,
    divisibility_bound_check,
    spectrum_of_subset_list,
    verdict,
)
from .intlinalg import IntMatrix, IntPolynomial
from .repcheck import ExplicitRep, RepSystem, ds_union_check, rep_integral, rep_sum
from .search import (
    GroupVerdict,
    ScanCapExceeded,
    SubsetFamily,
    Witness,
    exhaustive_scan,
    find_witness,
    is_cayley_integral,
    is_cis,
    symmetric_subsets,
)

__version__ = "0.1.0"

__all__ = [
    "AsymmetricSubsetError",
    "BoundCheck",
    "CayleyGraph",
    "ElementSubset",
    "ExplicitRep",
    "FiniteGroup",
    "GroupParseError",
    "GroupVerdict",
    "IntMatrix",
    "IntPolynomial",
    "RepSystem",
    "ScanCapExceeded",
    "SpectrumVerdict",
    "SubsetFamily",
    "SymmetricSubset",
    "Witness",
    "all_groups_of_order",
    "build",
    "build_cached",
    "catalog_up_to_12",
    "closure",
    "direct_product",
    "divisibility_bound_check",
    "ds_union_check",
    "exhaustive_scan",
    "find_witness",
    "is_cayley_integral",
    "is_cis",
    "is_normal",
    "is_subgroup",
    "lift_from_quotient",
    "lift_from_subgroup",
    "lift_preimage",
    "parse_group_expr",
    "quotient",
    "rep_integral",
    "rep_sum",
    "semidirect_product",
    "spectrum_of_subset_list",
    "subgroup_group",
    "symmetric_subsets",
    "union_product_subset",
    "verdict",
    "__version__",
]
