"""Link diagrams, Milnor invariants, multi-infection and hypothesis certificates."""

from .certify import (
    FreeQuotientWitness,
    IntersectionLedger,
    SliceCertificate,
    certify_slice,
    certify_solvable,
    refined_bounds_choices,
    required_length_thm14,
    required_length_thm15,
)
from .classical import (
    LaurentPoly,
    alexander_poly,
    g4_bounds_from_c,
    seifert_matrix,
    signature,
)
from .derived import derived_depth, fox_derivative, in_derived, solvable_nf
from .diagram import DiagramError, DiagramSyntaxError, LinkDiagram
from .families import gen_family
from .groups import FreeWord, GroupPresentation, commutator, longitude, wirtinger
from .infection import MultiDiskPattern, SiteStrand, multi_infect
from .magnus import DegreeCapError, TruncatedSeries, magnus_expand
from .milnor import (
    MilnorTable,
    first_nonvanishing_length,
    milnor_mu,
    milnor_table,
    mu_vanish_up_to,
    refined_vanish,
)
from .tangle import (
    StringLinkDiagram,
    cable,
    closure,
    cut_open,
    from_braid,
    from_morse_word,
)
from .textio import parse_diagram, parse_string_link, read_diagram, read_string_link

__all__ = [
    "DegreeCapError",
    "DiagramError",
    "DiagramSyntaxError",
    "FreeQuotientWitness",
    "FreeWord",
    "GroupPresentation",
    "IntersectionLedger",
    "LaurentPoly",
    "LinkDiagram",
    "MilnorTable",
    "MultiDiskPattern",
    "SiteStrand",
    "SliceCertificate",
    "StringLinkDiagram",
    "TruncatedSeries",
    "alexander_poly",
    "cable",
    "certify_slice",
    "certify_solvable",
    "closure",
    "commutator",
    "cut_open",
    "derived_depth",
    "first_nonvanishing_length",
    "fox_derivative",
    "from_braid",
    "from_morse_word",
    "g4_bounds_from_c",
    "gen_family",
    "in_derived",
    "longitude",
    "magnus_expand",
    "milnor_mu",
    "milnor_table",
    "mu_vanish_up_to",
    "multi_infect",
    "parse_diagram",
    "parse_string_link",
    "read_diagram",
    "read_string_link",
    "refined_bounds_choices",
    "refined_vanish",
    "required_length_thm14",
    "required_length_thm15",
    "seifert_matrix",
    "signature",
    "solvable_nf",
    "wirtinger",
]
