"""Exact lattice, positivity, and moduli divisor-class computations for
polarized Nikulin surfaces."""

from .chow import (
    BaseClass,
    FiberPoly,
    GammaCoefficients,
    HODGE,
    ModuliDivisorClass,
    NODAL_C1,
    NODAL_TWIST,
    POLAR_C1,
    POLAR_TWIST,
    TANGENT_C2,
    c1_pushforward_bundle,
    chern_character,
    divisor_class,
    gamma_basis,
    gamma_basis_reduce,
    gamma_invariance_check,
    pushforward,
    pushforward_bundle_rank,
    substitute_kappas,
    todd_relative,
    twist_kappas,
)
from .detvar import (
    QuadricSpaceDims,
    det_degree,
    expected_rank_ideal_dim,
    quadric_space_dims,
    rank_locus_codim,
)
from .errors import (
    DerivationFailureError,
    FormulaViolationError,
    InternalInconsistencyError,
    InvalidBoundsError,
    InvalidGenusError,
    NikulinError,
    OutOfRangeError,
    ParityError,
    TheoremCheckError,
)
from .lattice import (
    DivisorClass,
    GenusProfile,
    basis_coordinates,
    decompose_profile,
    gram_matrix,
    intersect,
    is_two_divisible,
    nikulin_block_determinant,
    riemann_roch_chi,
    sectional_genus,
)
from .positivity import (
    DEFAULT_BOUNDS,
    CliffordData,
    EmbeddingData,
    LkSystem,
    PositivityVerdict,
    SearchBounds,
    ampleness_analytic_check,
    clifford_max,
    embedding_data,
    lk_system_analysis,
    movable_decomposition_search,
    noether_lefschetz_condition_search,
    rational_obstruction_search,
    very_ample_check,
    very_ampleness_threshold,
)

__version__ = "0.1.0"
