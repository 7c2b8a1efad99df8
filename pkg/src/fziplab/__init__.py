"""Exact invariants of mod-p Hodge structures on truncated standard complexes.

The pieces, bottom up: exact fields and linear algebra, split root data with
Weyl combinatorics, minimal coset representatives for a cocharacter
parabolic, integral highest-weight modules, filtered Frobenius zips, the two
truncated standard complexes with their filtrations, and the Casimir
extraction that ties the complexes to the coset page.
"""

from .casimir import (
    CasimirCollisionError,
    IsotypicSlice,
    casimir_isotypic,
    isotypic_page_check,
    trace_form,
)
from .catalog import builtin, builtin_catalog, builtin_names
from .complexes import (
    BGGPage,
    FilteredComplex,
    bgg_page,
    euler_character_check,
    graded_compare,
    p_std_complex,
    std_complex,
)
from .fields import GF, QQ
from .fzip import (
    FZip,
    SearchBudgetError,
    direct_sum_fzip,
    dual_fzip,
    fzip_from_graded_data,
    is_isomorphic,
    point_fzip,
    random_fzip,
    tensor_fzip,
)
from .gmodule import (
    GModule,
    dual_module,
    kostant_check,
    standard_module,
    sym_power,
    tensor_module,
    trivial_module,
    wedge_power,
    weyl_module,
)
from .parabolic import ParabolicData
from .rootdata import (
    RootDatum,
    Vec,
    WeylElement,
    freudenthal_weights,
    is_p_small,
    product_datum,
    type_A,
    type_C,
    weyl_dimension,
)

__version__ = "0.1.0"

__all__ = [
    "BGGPage",
    "CasimirCollisionError",
    "FZip",
    "FilteredComplex",
    "GF",
    "GModule",
    "IsotypicSlice",
    "ParabolicData",
    "QQ",
    "RootDatum",
    "SearchBudgetError",
    "Vec",
    "WeylElement",
    "bgg_page",
    "builtin",
    "builtin_catalog",
    "builtin_names",
    "casimir_isotypic",
    "direct_sum_fzip",
    "dual_fzip",
    "dual_module",
    "euler_character_check",
    "freudenthal_weights",
    "fzip_from_graded_data",
    "graded_compare",
    "is_isomorphic",
    "is_p_small",
    "isotypic_page_check",
    "kostant_check",
    "p_std_complex",
    "point_fzip",
    "product_datum",
    "random_fzip",
    "standard_module",
    "std_complex",
    "sym_power",
    "tensor_fzip",
    "tensor_module",
    "trace_form",
    "trivial_module",
    "type_A",
    "type_C",
    "wedge_power",
    "weyl_dimension",
    "weyl_module",
    "__version__",
]
