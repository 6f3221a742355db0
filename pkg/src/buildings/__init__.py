"""Small buildings, built concretely and checked exhaustively.

The package constructs chamber systems with group-valued metrics at desk
scale: Coxeter complexes for any small Coxeter system, the flag building
of GF(p)^n, the coset building of GL_n(GF(p)) from its subgroup pair, the
isotropic-flag building of Sp_4 with its rank-2 incidence graph, the
truncated (q+1)-valent tree, and the sign-vector chambers of the braid
arrangement.  Every axiom the objects are supposed to satisfy has a
brute-force verifier.
"""

from .chamber_system import ChamberSystem, Gallery, SimplicialComplex, is_gallery
from .core import (
    ApartmentEmbedding,
    Report,
    WMetricBuilding,
    building_from_complex,
    check_apartment_axioms,
    check_b1,
    check_b2,
    delta_from_apartments,
    is_isometry,
    non_reduced_caveat_check,
)
from .coxeter import (
    CayleyGraph,
    CoxeterElement,
    CoxeterMatrix,
    canonical,
    canonical_word,
    enumerate_group,
    is_reduced,
    reduced_words,
    symbol_to_matrix,
    type_a_permutation,
    words_equal,
)
from .coxeter_complex import CoxeterComplex, build_coxeter_complex, delta_w
from .ff_linalg import (
    FpMatrix,
    FpScalar,
    Subspace,
    contains,
    enumerate_subspaces,
    rref,
    subspace_intersect,
    subspace_sum,
)
from .flag import (
    Flag,
    FlagBuilding,
    Frame,
    apartment_from_frame,
    build_flag_building,
    delta_flag,
    enumerate_frames,
)
from .bruhat import (
    BorelCoset,
    BruhatCell,
    GBBuilding,
    bruhat_permutation,
    build_gb_building,
    cell_sizes,
    check_bn_axioms,
    coset_canonical,
    iso_to_flag,
)
from .symplectic import (
    IsotropicFlag,
    SpBuilding,
    SymplecticSpace,
    bipartite_isomorphism,
    build_sp_building,
    incidence_graph,
    is_totally_isotropic,
    signed_frame_apartment,
    sylvester_graph,
)
from .tree import TruncatedTree, build_tree, check_b2_interior, delta_tree, tree_building
from .arrangement import braid_chambers, braid_panels, regular_action_check

__version__ = "0.1.0"
