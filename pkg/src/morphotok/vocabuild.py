"""Building a domain vocabulary from concept phrases.

Pipeline: extract unique words from phrases, segment each unique word once,
count positional subwords (word-initial vs continuation), drop singletons,
and merge the survivors into a base vocabulary.
"""

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Mapping

from ._io import open_text, source_name
from .align import MorphemeAnnotation
from .errors import FormatError, MorphotokError
from .segment import segment_word
from .tokenizer import TokenizerConfig, is_punctuation, normalize, pretokenize
from .vocab import (
    DEFAULT_CONTINUATION_PREFIX,
    DEFAULT_SPECIAL_TOKENS,
    DEFAULT_UNKNOWN_TOKEN,
    Vocabulary,
)

logger = logging.getLogger(__name__)

RRF_PHRASE_COLUMN = 14  # concept-string column of the standard concept-names table
RRF_DELIMITER = "|"


@dataclass(frozen=True)
class SubwordCounts:
    """Occurrence counts of positional subwords.

    Word-initial and continuation occurrences of the same string are distinct
    keys; continuation keys carry the continuation prefix.
    """

    counts: dict[str, int]

    def __post_init__(self):
        for subword, count in self.counts.items():
            if count <= 0:
                raise ValueError(f"non-positive count {count} for {subword!r}")

    def __len__(self) -> int:
        return len(self.counts)


def extract_unique_words(phrases: Iterable[str], cfg: TokenizerConfig) -> dict[str, int]:
    """Count the words of normalized, pre-tokenized phrases.

    Punctuation-only words are discarded; everything else accumulates.
    """
    counts: dict[str, int] = {}
    for phrase in phrases:
        for word in pretokenize(normalize(phrase, cfg)):
            if all(is_punctuation(ch) for ch in word):
                continue
            counts[word] = counts.get(word, 0) + 1
    return counts


class RrfPhrases:
    """Single-pass stream over one column of a pipe-delimited concept table.

    Lines with too few fields are skipped and counted in `skipped`. If every
    line of a non-empty file lacks the column, iteration ends with a
    FormatError since the column index is evidently wrong.
    """

    def __init__(
        self,
        source: str | os.PathLike | IO[str],
        column: int = RRF_PHRASE_COLUMN,
        delimiter: str = RRF_DELIMITER,
    ):
        if column < 0:
            raise ValueError(f"column must be >= 0, got {column}")
        self.source = source
        self.column = column
        self.delimiter = delimiter
        self.lines = 0
        self.skipped = 0
        self.yielded = 0

    def __iter__(self) -> Iterator[str]:
        name = source_name(self.source)
        with open_text(self.source) as stream:
            for line in stream:
                line = line.rstrip("\n").rstrip("\r")
                if not line:
                    continue
                self.lines += 1
                fields = line.split(self.delimiter)
                if len(fields) <= self.column:
                    self.skipped += 1
                    continue
                self.yielded += 1
                yield fields[self.column]
        if self.lines and not self.yielded:
            raise FormatError(
                f"column {self.column} out of range on every line", source=name
            )


def parse_rrf(
    source: str | os.PathLike | IO[str],
    column: int = RRF_PHRASE_COLUMN,
    delimiter: str = RRF_DELIMITER,
) -> RrfPhrases:
    """Stream the phrase column of a concept-names table (default column 14)."""
    return RrfPhrases(source, column=column, delimiter=delimiter)


def count_subwords(
    segmenter,
    words: Mapping[str, int],
    weight_by_count: bool = False,
    continuation_prefix: str = DEFAULT_CONTINUATION_PREFIX,
) -> SubwordCounts:
    """Segment each unique word once and accumulate positional subwords.

    Each unique word contributes 1 per subword occurrence by default; set
    `weight_by_count` to weight by the word's corpus count instead. Words the
    segmenter fails on are skipped with a logged warning.
    """
    if not words:
        raise ValueError("empty word mapping")
    counts: dict[str, int] = {}
    for word, word_count in words.items():
        try:
            segmentation = segment_word(segmenter, word)
        except (MorphotokError, ValueError) as exc:
            logger.warning("skipping unsegmentable word %r: %s", word, exc)
            continue
        increment = word_count if weight_by_count else 1
        for index, segment in enumerate(segmentation.segments()):
            key = segment if index == 0 else continuation_prefix + segment
            counts[key] = counts.get(key, 0) + increment
    return SubwordCounts(counts)


def assemble_vocab(
    subwords: SubwordCounts,
    min_count: int = 2,
    base: Vocabulary | None = None,
    *,
    special_tokens: tuple[str, ...] = DEFAULT_SPECIAL_TOKENS,
    continuation_prefix: str = DEFAULT_CONTINUATION_PREFIX,
    unknown_token: str = DEFAULT_UNKNOWN_TOKEN,
) -> Vocabulary:
    """Filter subwords by count and merge them into a vocabulary.

    Subwords with count >= min_count are kept (the default of 2 removes
    singletons). Base tokens come first in their original order, keeping
    their ids stable; new subwords follow, ordered by descending count then
    lexicographically. Duplicates appear once, at their base position.
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    kept = sorted(
        (subword for subword, count in subwords.counts.items() if count >= min_count),
        key=lambda s: (-subwords.counts[s], s),
    )
    if base is not None:
        leading = list(base.tokens)
        specials = base.special_tokens
        continuation_prefix = base.continuation_prefix
        unknown_token = base.unknown_token
    else:
        specials_list = list(special_tokens)
        if unknown_token not in specials_list:
            specials_list.insert(0, unknown_token)
        leading = specials_list
        specials = frozenset(specials_list)
    present = set(leading)
    tokens = leading + [s for s in kept if s not in present]
    return Vocabulary(
        tokens=tuple(tokens),
        continuation_prefix=continuation_prefix,
        special_tokens=specials,
        unknown_token=unknown_token,
    )


def filter_biomedical_subset(
    annotations: list[MorphemeAnnotation],
    lexicon: Mapping[str, int],
    min_count: int = 5,
) -> list[MorphemeAnnotation]:
    """Keep annotations whose surface occurs at least `min_count` times in `lexicon`."""
    return [ann for ann in annotations if lexicon.get(ann.surface, 0) >= min_count]
