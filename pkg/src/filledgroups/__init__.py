"""Product-free sets in finite groups and the classification of filled groups.

A product-free set ``S`` fills ``G`` when every non-identity element lies in
``S`` or ``SS``; ``G`` is filled when every locally maximal product-free set
fills it.
"""

from .classify import Verdict, classify
from .elementset import ElementSet
from .group import (
    FamilyTag,
    FiniteGroup,
    center,
    conjugacy_classes,
    direct_product,
    dump_cayley_table,
    element_order,
    is_abelian,
    load_cayley_table,
    make_cyclic,
    make_dicyclic,
    make_dihedral,
    make_elementary_abelian_2,
    make_from_permutations,
    make_semidirect_cp_c4,
    parse_permutation_cycles,
)
from .pfs import (
    dihedral_decompose,
    extend_to_locally_maximal,
    fills,
    inverse_set,
    is_locally_maximal_pf,
    is_product_free,
    product_set,
    sqrt_set,
    t_closure,
    uncovered,
)
from .search import SearchBudget, SearchOutcome, decide_filled, find_nonfilling_lmpf_of_size
from .subgroups import Subgroup, generated_subgroup, normal_subgroups, quotient
from .witnesses import Certificate, d44_witness, odd_dihedral_witness, verify_witness

__version__ = "0.1.0"
