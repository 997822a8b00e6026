"""Clustering of author texts in a WordNet semantic-field vector space."""

from semfields._core import (  # noqa: F401
    AuthorDistribution,
    ClusterAssignment,
    Corpus,
    Dendrogram,
    DocVector,
    Document,
    DominanceEntry,
    DominanceReport,
    FieldMatrix,
    HeightScale,
    Lexicon,
    Merge,
    PolysemyMode,
    Pos,
    ReducedCoords,
    SemanticField,
    SemfieldsError,
    SvdFactorization,
    TruncatedSvd,
    author_distribution,
    build_field_matrix,
    build_lexicon,
    compute_svd,
    compute_svd_rows,
    cut_dendrogram,
    document_vector,
    document_vectors,
    dominance,
    euclidean_distance,
    expand_derivatives,
    ingest_directory,
    lexnum_to_field,
    load_plain_lexicon,
    load_plain_lexicon_file,
    parse_wordnet_file,
    project_corpus,
    project_document,
    purity,
    reconstruct,
    run_pipeline,
    standard_fields,
    to_newick,
    tokenize,
    truncate,
    ward_cluster,
    ward_cluster_vectors,
)

__version__ = "0.1.0"
