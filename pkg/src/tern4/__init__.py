"""tern4: the base-3 numeral system with the redundant digit alphabet {0,1,2,3}.

Exact digit-string arithmetic and rewrites (`tern4.digits`), the distribution
of the random series with i.i.d. digits (`tern4.measure`), box-counting
dimensions of digit-restricted sets and the base-4 level-set map
(`tern4.fractal`), the governing series and its subsums (`tern4.series`),
and a batch CLI (`tern4.cli`).
"""

from tern4.digits import (
    Cardinality,
    Cylinder,
    DigitString,
    ParseError,
    ReprCardinality,
    RewriteSite,
    admissible_prefixes,
    apply_rewrite,
    classify_cardinality,
    count_expansion_prefixes,
    cylinder_interval,
    cylinder_number_interval,
    cylinder_overlap,
    enumerate_representations,
    evaluate,
    parse,
    rewrite_sites,
)
from tern4.measure import (
    CharfnResult,
    DistributionClass,
    DistributionKind,
    ProbVector,
    charfn,
    classify,
    limsup_lower_bound,
)

__version__ = "0.1.0"

__all__ = [
    "Cardinality",
    "CharfnResult",
    "Cylinder",
    "DigitString",
    "DistributionClass",
    "DistributionKind",
    "ParseError",
    "ProbVector",
    "ReprCardinality",
    "RewriteSite",
    "admissible_prefixes",
    "apply_rewrite",
    "charfn",
    "classify",
    "classify_cardinality",
    "count_expansion_prefixes",
    "cylinder_interval",
    "cylinder_number_interval",
    "cylinder_overlap",
    "enumerate_representations",
    "evaluate",
    "limsup_lower_bound",
    "parse",
    "rewrite_sites",
    "__version__",
]
