"""Lexicon-guided whole-word-masking pretraining data pipeline for Chinese
social-media text: cleaning, segmentation, lexicon expansion, chunking,
masking, and classification metrics."""

from .cleaning import (
    CleaningConfig,
    CorpusStats,
    RawPost,
    aggregate_stats,
    clean_text,
    filter_short,
)
from .chunking import TokenChunk, Vocab, chunk_stream, load_vocab, tokenize
from .errors import LexmaskError, RecordError, ValidationError
from .lexicon import (
    AssociationGraph,
    Lexicon,
    build_association_graph,
    expand_lexicon,
    find_lexicon_words,
    load_lexicon,
    propagate_labels,
)
from .masking import (
    MaskedExample,
    MaskPlan,
    MaskPolicy,
    apply_masks,
    make_probe,
    plan_masks,
)
from .metrics import (
    DatasetSummary,
    EvalReport,
    LabelSet,
    confusion_counts,
    dataset_summary,
    evaluate,
    kfold_split,
    prf,
)
from .segmentation import SegmentDict, SegmentedDoc, build_dict, segment_fmm

__version__ = "0.1.0"

__all__ = [
    "AssociationGraph",
    "CleaningConfig",
    "CorpusStats",
    "DatasetSummary",
    "EvalReport",
    "LabelSet",
    "Lexicon",
    "LexmaskError",
    "MaskPlan",
    "MaskPolicy",
    "MaskedExample",
    "RawPost",
    "RecordError",
    "SegmentDict",
    "SegmentedDoc",
    "TokenChunk",
    "ValidationError",
    "Vocab",
    "aggregate_stats",
    "apply_masks",
    "build_association_graph",
    "build_dict",
    "chunk_stream",
    "clean_text",
    "confusion_counts",
    "dataset_summary",
    "evaluate",
    "expand_lexicon",
    "filter_short",
    "find_lexicon_words",
    "kfold_split",
    "load_lexicon",
    "load_vocab",
    "make_probe",
    "plan_masks",
    "prf",
    "propagate_labels",
    "segment_fmm",
    "tokenize",
]
