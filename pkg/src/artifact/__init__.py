"""Exact constructive homological algebra over Z, Q, and prime fields:
connective chain complexes with their projective model structure, the
correspondence with simplicial modules, finite simplicial sets, and the
shuffle product with its comparison map."""

from .errors import (
    ClassError,
    DivisibilityError,
    DomainError,
    InvalidRing,
    NotAComplex,
    NotSimplicial,
    RingError,
    ShapeError,
    SquareError,
)
from .rings import GF, QQ, RingOps, RingTag, ZZ, parse_ring, ring_ops
from .linalg import (
    HomologyGroup,
    Matrix,
    SmithDecomposition,
    block_matrix,
    canonical_columns,
    has_free_cokernel,
    hcat,
    homology_at,
    homology_to_json,
    identity,
    image_basis,
    is_injective,
    is_surjective,
    kernel_basis,
    kron,
    mat_from_json,
    mat_to_json,
    smith_normal_form,
    solve,
    vcat,
    zeros,
)
from .deltacat import (
    MonotoneMap,
    Shuffle,
    compose,
    degeneracy,
    degeneracy_set,
    enumerate_jointly_monic_pairs,
    enumerate_shuffles,
    enumerate_surjections,
    epi_mono_factorize,
    face,
    identity_map,
    monotone_from_json,
    monotone_to_json,
    pair_of_shuffle,
    shuffle_count,
    shuffle_of_pair,
    shuffle_sign,
    surjection_with_degeneracy_set,
)
from .chains import (
    ChainMap,
    ConnComplex,
    ModelClass,
    RlpReport,
    classify,
    complex_from_json,
    complex_to_json,
    compose_maps,
    disk,
    factor_cof_trivfib,
    factor_trivcof_fib,
    homology,
    identity_chain_map,
    is_exact,
    lift_square,
    map_from_json,
    map_to_json,
    mapping_cone,
    rlp_generator_check,
    sphere,
    tensor,
    tensor_blocks,
    tensor_map,
)
from .simplicial import (
    ContractionReport,
    EmbeddedComplex,
    FinPoset,
    FinSimplicialSet,
    IdentityReport,
    SimplicialMap,
    SimplicialModule,
    boundary_simplex_set,
    chain_poset,
    check_simplicial_identities,
    compose_simplicial,
    copower,
    coproduct,
    cylinder,
    degenerate_part,
    direct_sum_sm,
    dk,
    dk_blocks,
    dk_map,
    dk_transition,
    free_module,
    identity_simplicial_map,
    least_element,
    module_from_json,
    module_to_json,
    moore,
    nerve,
    nor,
    nor_map,
    poset_from_json,
    poset_to_json,
    product,
    simplex_set,
    tensor_sm,
    verify_nerve_contraction,
)
from .shuffle import (
    NorTensorReport,
    ShuffleComplex,
    boxtimes_generator_tests,
    ez_map,
    nor_tensor_compare,
    shuffle_map_left,
    shuffle_map_right,
    shuffle_product,
    shuffle_to_json,
)

__all__ = [
    "ChainMap",
    "ClassError",
    "ConnComplex",
    "ContractionReport",
    "DivisibilityError",
    "DomainError",
    "EmbeddedComplex",
    "FinPoset",
    "FinSimplicialSet",
    "GF",
    "HomologyGroup",
    "IdentityReport",
    "InvalidRing",
    "Matrix",
    "ModelClass",
    "MonotoneMap",
    "NorTensorReport",
    "NotAComplex",
    "NotSimplicial",
    "QQ",
    "RingError",
    "RingOps",
    "RingTag",
    "RlpReport",
    "ShapeError",
    "Shuffle",
    "ShuffleComplex",
    "SimplicialMap",
    "SimplicialModule",
    "SmithDecomposition",
    "SquareError",
    "ZZ",
    "block_matrix",
    "boundary_simplex_set",
    "boxtimes_generator_tests",
    "canonical_columns",
    "chain_poset",
    "check_simplicial_identities",
    "classify",
    "complex_from_json",
    "complex_to_json",
    "compose",
    "compose_maps",
    "compose_simplicial",
    "copower",
    "coproduct",
    "cylinder",
    "degeneracy",
    "degeneracy_set",
    "degenerate_part",
    "direct_sum_sm",
    "disk",
    "dk",
    "dk_blocks",
    "dk_map",
    "dk_transition",
    "enumerate_jointly_monic_pairs",
    "enumerate_shuffles",
    "enumerate_surjections",
    "epi_mono_factorize",
    "ez_map",
    "face",
    "factor_cof_trivfib",
    "factor_trivcof_fib",
    "free_module",
    "has_free_cokernel",
    "hcat",
    "homology",
    "homology_at",
    "homology_to_json",
    "identity",
    "identity_chain_map",
    "identity_map",
    "identity_simplicial_map",
    "image_basis",
    "is_exact",
    "is_injective",
    "is_surjective",
    "kernel_basis",
    "kron",
    "least_element",
    "lift_square",
    "map_from_json",
    "map_to_json",
    "mapping_cone",
    "mat_from_json",
    "mat_to_json",
    "module_from_json",
    "module_to_json",
    "monotone_from_json",
    "monotone_to_json",
    "moore",
    "nerve",
    "nor",
    "nor_map",
    "nor_tensor_compare",
    "pair_of_shuffle",
    "parse_ring",
    "poset_from_json",
    "poset_to_json",
    "product",
    "ring_ops",
    "rlp_generator_check",
    "shuffle_count",
    "shuffle_map_left",
    "shuffle_map_right",
    "shuffle_of_pair",
    "shuffle_product",
    "shuffle_sign",
    "shuffle_to_json",
    "simplex_set",
    "smith_normal_form",
    "solve",
    "sphere",
    "surjection_with_degeneracy_set",
    "tensor",
    "tensor_blocks",
    "tensor_map",
    "tensor_sm",
    "vcat",
    "verify_nerve_contraction",
    "zeros",
]
