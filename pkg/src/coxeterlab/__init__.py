"""Exact-arithmetic toolkit for Coxeter transformations and the McKay-Slodowy correspondence."""

from .cartan import (
    AFFINE,
    FINITE,
    INDEFINITE_DEGENERATE,
    INDEFINITE_NONDEGENERATE,
    BlockDecomposition,
    CartanData,
    SymmetrizationError,
    block_decomposition,
    cartan_matrix,
    kernel_of_b,
)
from .charpoly import (
    charpoly_direct,
    charpoly_glue,
    charpoly_split,
    family_diagram,
    family_polynomial,
    join_diagrams,
)
from .coxeter import (
    CoxeterAnalysis,
    Eigenvalue,
    RootSystem,
    coxeter_transformation,
    df_fd_spectra,
    dominant_phi,
    enumerate_roots,
    exponents_and_weyl_order,
    jordan_basis,
    phi_to_lambda,
)
from .diagrams import (
    BicoloredPartition,
    Diagram,
    DiagramError,
    add_edge,
    bicolor,
    catalog_lookup,
    catalog_names,
    diagram_from_json,
    diagram_to_json,
    diagrams_isomorphic,
    fold,
    glue_star,
    kolmykov_graph,
    permutation_match,
    star_diagram,
    t_diagram,
)
from .mckay import (
    EmbeddingError,
    GroupError,
    McKayData,
    SlodowyData,
    SlodowyPair,
    SU2Group,
    build_group,
    folded_reference,
    induce_character,
    match_folded,
    mckay_matrix,
    restrict_character,
    slodowy_matrices,
    slodowy_pair,
)
from .poincare import (
    FoldingCase,
    GeneratingFunction,
    KostantClosedForm,
    MultiplicityTable,
    ebeling_ratio,
    folding_proportionality,
    generating_function,
    hopf_poincare_product,
    kostant_closed_form,
    sym_power_multiplicities,
)
from .polynomials import (
    IntPolynomial,
    RationalFunction,
    cyclotomic,
    mahler_measure,
    max_real_root,
)

__all__ = [name for name in dir() if not name.startswith("_")]
