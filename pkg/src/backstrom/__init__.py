"""Cohen-Macaulay representation data and singularity-category invariants
of split basic glued orders over a complete discrete valuation ring."""

from .classify import (
    ClassificationReport,
    classify,
    classify_quiver,
    finite_gldim,
    gorenstein,
    gproj_nonprojective_vertices,
    iwanaga_gorenstein,
    self_injective_pattern,
    sg_hom_finite,
    stripped_core,
)
from .errors import (
    InternalInvariantError,
    InvalidOrderError,
    InvalidQuiverError,
    NotFiniteTypeError,
    NotSemisimpleError,
)
from .linalg import ExactMatrix, GroundField, block_diag_embed, kernel_basis, rank
from .orders import BackstromOrder, GluingPartition, HereditarySpec, Node, validate
from .oracle import (
    HRepresentation,
    algebra_side_syzygy,
    brute_force_strip_check,
    cross_check_dsg,
    cross_check_syzygy,
    h_module_of_gamma_projective,
    h_projective_cover,
    random_order,
)
from .singularity import (
    StabilizedHom,
    WedderburnBlock,
    WedderburnData,
    dsg_hom_dim,
    end_dim,
    hom_table,
    stable_hom_level0,
    suspension_orbit,
    v_lambda,
)
from .species import (
    BipartiteHQuiver,
    CartanData,
    ComponentClass,
    ValuedArrow,
    ValuedQuiver,
    build_h,
    cartan_of_component,
    count_indec_cm,
    dynkin_components,
    is_finite_cm_type,
    positive_roots,
    underlying_valued_graph,
)
from .syzygy import (
    StableObject,
    TrivialExtensionData,
    build_a_lambda,
    first_syzygy_from_h_module,
    full_cover_kernel,
    j_prime,
    syzygy,
    syzygy_of_gamma,
    syzygy_of_node,
)

__all__ = [name for name in dir() if not name.startswith("_")]
