"""Integrality of Cayley graphs with small connection sets.

Finite groups as multiplication tables, exact integrality tests for Cayley
graphs, the symbol-matrix decomposition over an abelian subgroup, and an
enumerative decision procedure for the classes G_k.
"""

__version__ = "0.1.0"

from .errors import CayleyGkError, InvariantViolation, UnknownLabel  # noqa: E402
from .group import Group, SubgroupHandle, fingerprint, generated_subgroup, quotient  # noqa: E402
from .constructions import (  # noqa: E402
    direct_product,
    from_permutations,
    generalized_dicyclic,
    make_abelian,
    make_dihedral,
    named_group,
    semidirect_product,
)
from .spectral import ConnectionSet, cayley_adjacency, integrality_test, spectrum_report  # noqa: E402
from .charpoly import char_poly  # noqa: E402
from .kmmm import kmmm_spectrum, left_transversal, lift_connection_set, symbol_matrix  # noqa: E402
from .classifier import cayley_integral_check, enumerate_connection_sets, gk_membership  # noqa: E402
from .spec_grammar import build, format_spec, parse_spec  # noqa: E402
from .catalog import CATALOG, classify_catalog  # noqa: E402

__all__ = [
    "CATALOG",
    "CayleyGkError",
    "ConnectionSet",
    "Group",
    "InvariantViolation",
    "SubgroupHandle",
    "UnknownLabel",
    "build",
    "cayley_adjacency",
    "cayley_integral_check",
    "char_poly",
    "classify_catalog",
    "direct_product",
    "enumerate_connection_sets",
    "fingerprint",
    "format_spec",
    "from_permutations",
    "generalized_dicyclic",
    "generated_subgroup",
    "gk_membership",
    "integrality_test",
    "kmmm_spectrum",
    "left_transversal",
    "lift_connection_set",
    "make_abelian",
    "make_dihedral",
    "named_group",
    "parse_spec",
    "quotient",
    "semidirect_product",
    "spectrum_report",
    "symbol_matrix",
]
