"""Combinatorics of parabolic Deligne-Lusztig varieties and their pieces."""

from .cohom import (
    Bipartition,
    CharLabel,
    GradedModule,
    bn_table,
    branch_restrict_B,
    check_les_consistency,
    gm_cohomology,
    hc_restrict_module,
    shift,
    tensor,
    twist,
)
from .cosets import K_of, double_coset_min_reps, factor, unipotent_intersection_dim
from .decomp import (
    ChainSpec,
    ChainTerm,
    PieceClassification,
    chain_summary,
    classify_piece,
    coxeter_report,
    enumerate_pieces,
    validate_chain,
)
from .deodhar import (
    Subexpression,
    deodhar_mass,
    distinguished_subexpressions,
    enumerate_cells,
    piece_nonempty,
    r_polynomial,
)
from .errors import PreconditionError
from .poly import Poly
from .rootsys import CartanDatum, RootSystem, build_root_system, named_cartan
from .weyl import WeylElt, bruhat_leq, from_word, identity, longest_element, reduced_word, simple_reflection

__version__ = "0.1.0"
