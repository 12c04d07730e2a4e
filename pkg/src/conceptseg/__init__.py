"""Taxonomy learning with formal concept analysis and concept-oriented text segmentation."""

from .errors import ConceptSegError, FormatError, InputError, ParseError, PreconditionError
from .fca import (
    ConceptLattice,
    FormalConcept,
    FormalContext,
    MergeReport,
    build_lattice,
    clarify,
    concept_leq,
    derive_attrs,
    derive_objs,
    enumerate_concepts,
    is_clarified,
    is_concept,
    is_reducible_attribute,
    is_reducible_object,
    reduce,
)
from .segmentation import (
    ClusteringResult,
    Segmentation,
    SentenceVector,
    TermFrequencyTable,
    build_vectors,
    cluster_to_segmentation,
    compute_frequencies,
    cosine_similarity,
    explain_cluster,
    kmeans,
    select_terms,
)
from .taxonomy import Taxonomy, direct_descendants, extract_taxonomy, root_to_leaf_paths
from .textio import (
    AnnotatedCorpus,
    AnnotatedToken,
    VerbNounPair,
    build_context,
    extract_pairs,
    filter_frequent,
    parse_corpus,
    read_corpus,
)

__version__ = "0.1.0"
