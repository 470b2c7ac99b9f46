"""Exact computation of Bredon homology and proper-action K-theory data for
finitely presented groups with cyclic torsion structure."""

from .bredon import (
    BredonResult,
    KTheoryResult,
    TorsionDatum,
    bredon_full,
    bredon_h0,
    bredon_h1,
    bredon_h2,
    detect_asphericity,
    ktheory,
    one_relator_product_homology,
    torsion_data,
)
from .finite_oracle import (
    character_count,
    cyclic_bredon_homology,
    embed,
    shift_matrix,
    verify_cyclic_resolution,
)
from .fox import (
    FreeRingElement,
    augment,
    fox_derivative,
    fundamental_identity_check,
    total_derivative,
)
from .free_group import (
    Alphabet,
    CyclicDecomposition,
    GeneratorId,
    Letter,
    Root,
    Word,
    are_conjugate,
    is_cyclic_rotation,
)
from .hempel import (
    HempelContext,
    HempelReport,
    HnnPresentation,
    X1Letter,
    build_hnn,
    check_hempel,
    hempel_context,
    hnn_roundtrip_check,
    rewrite_in_normal_closure_basis,
)
from .int_linalg import (
    AbelianGroupInvariants,
    IntMatrix,
    cokernel_invariants,
    determinant,
    homology_invariants,
    kernel_rank,
    rank,
    smith_normal_form,
)
from .presentation import (
    DECLARED,
    DERIVE_FROM_ROOTS,
    Presentation,
    document_text,
    exponent_matrix,
    kill_torsion_presentation,
    parse,
    parse_word,
    presentation_text,
    root_presentation,
)

__version__ = "0.1.0"
