"""Construction, verification, equivalence and search for cyclic Legendre pairs."""

from .catalog import builtin_catalog, expand_record, get_family
from .correlation import (
    DFType,
    DifferenceFamily,
    ParameterSet,
    df_type,
    is_legendre_pair,
    paf,
    to_sequence,
    verify_df,
)
from .equivalence import Transform, apply, canonical_form, equivalent, fingerprint
from .zmod import Block, SubgroupH, expand, subgroup_generated

__version__ = "0.1.0"
