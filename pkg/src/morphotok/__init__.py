"""Morpheme-aware subword tokenization toolkit."""

from .align import (
    MorphemeAnnotation,
    SurfaceSegmentation,
    align_morphemes,
    load_sigmorphon,
    segmentation_to_tags,
    tags_to_segments,
)
from .errors import (
    AlignmentError,
    FormatError,
    ModelFormatError,
    MorphotokError,
    UnknownWordError,
    VocabularyError,
)
from .evaluation import (
    FertilityReport,
    FrequencyBinReport,
    SegScore,
    evaluate_segmenter,
    fertility_report,
    sample_frequency_bins,
    score_word,
    segmentation_f1,
)
from .segment import (
    ExternalSegmentations,
    WordpieceSegmenter,
    load_external_segmentations,
    segment_word,
)
from .tagger import (
    FeatureTemplate,
    TaggerModel,
    TrainConfig,
    extract_features,
    load_model,
    save_model,
    tag_word,
    train_tagger,
)
from .tokenizer import (
    TokenizerConfig,
    detokenize,
    normalize,
    pretokenize,
    tokenize_text,
    wordpiece_tokenize,
)
from .vocab import Vocabulary, load_vocab, save_vocab
from .vocabuild import (
    SubwordCounts,
    assemble_vocab,
    count_subwords,
    extract_unique_words,
    filter_biomedical_subset,
    parse_rrf,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "ExternalSegmentations",
    "FeatureTemplate",
    "FertilityReport",
    "FormatError",
    "FrequencyBinReport",
    "ModelFormatError",
    "MorphemeAnnotation",
    "MorphotokError",
    "SegScore",
    "SubwordCounts",
    "SurfaceSegmentation",
    "TaggerModel",
    "TokenizerConfig",
    "TrainConfig",
    "UnknownWordError",
    "Vocabulary",
    "VocabularyError",
    "WordpieceSegmenter",
    "align_morphemes",
    "assemble_vocab",
    "count_subwords",
    "detokenize",
    "evaluate_segmenter",
    "extract_features",
    "extract_unique_words",
    "fertility_report",
    "filter_biomedical_subset",
    "load_external_segmentations",
    "load_model",
    "load_sigmorphon",
    "load_vocab",
    "normalize",
    "parse_rrf",
    "pretokenize",
    "sample_frequency_bins",
    "save_model",
    "save_vocab",
    "score_word",
    "segment_word",
    "segmentation_f1",
    "segmentation_to_tags",
    "tag_word",
    "tags_to_segments",
    "tokenize_text",
    "train_tagger",
    "wordpiece_tokenize",
]
