"""Finite colored linear orders with a lexicographic first-difference function."""

from .rational import Rat, RationalFormatError, from_wire, rat, to_wire
from .core import (
    EMPTY,
    Embedding,
    EmbeddingError,
    ExtensionSpec,
    InconsistentSpecError,
    InvalidStructureError,
    InvariantViolation,
    LexError,
    LexStructure,
    ValidationReport,
    Violation,
    check_case_form,
    class_order,
    enumerate_extensions,
    is_embedding,
    lex_model,
    monotonicity_violations,
    random_structure,
    random_superstructure,
    realize_extension,
    restrict,
    sim_partition,
    validate,
)
from .amalgam import Amalgam, AmalgamStrategy, amalgamate, check_amalgam, joint_embed
from .generic import (
    Demand,
    SaturationLog,
    check_extension_axioms,
    demands,
    ef_game,
    find_witness,
    saturate,
)
from .analysis import (
    Cut,
    FiniteTree,
    GapClass,
    GapProfile,
    WitnessSide,
    check_infimum,
    check_supremum,
    classify_gap_profile,
    complete_structure,
    embed_linear_order,
    enumerate_cuts,
    insert_into_cut,
    tree_to_order,
)
from .formats import FormatError, dump_structure, load_structure

__version__ = "0.1.0"
