"""Shortest self-orthogonal embeddings of binary linear codes."""

from .codes import (
    LinearCode,
    WeightDistribution,
    even_code,
    hamming,
    parse_hex,
    emit_hex,
    reed_muller,
    repetition,
    simplex,
)
from .embed import (
    EmbeddingResult,
    check_structure,
    embed_dfs,
    embed_even_canonical,
    embed_shortest,
    embed_theorem_odd,
    shortest_length,
)
from .errors import (
    CapabilityError,
    DomainError,
    EmptyCodeError,
    EquivalenceUndecided,
    FormatError,
    InfeasibleEmbedding,
    SOEmbedError,
    StructureViolation,
)
from .gf2 import BinaryMatrix, BitVector
from .orthosearch import (
    coset_representatives,
    orthogonal_group,
    orthogonal_group_order,
    orthonormalize,
    selfdual_embed_systematic,
    sweep_selfdual_embeddings,
)
from .search import SearchConfig, are_equivalent, fingerprint, search_all

__version__ = "0.1.0"
