"""Uniform word-segmenter interface.

A segmenter is anything `segment_word` understands: a trained TaggerModel, a
mapping from word to SurfaceSegmentation (e.g. loaded from a TSV produced by
an external model), or an object with a `segment(word)` method such as
WordpieceSegmenter, which views a subword vocabulary as a segmenter.
"""

from __future__ import annotations

import os
from typing import IO, Mapping

from ._io import open_text, source_name
from .align import MorphemeAnnotation, SurfaceSegmentation, align_morphemes, tags_to_segments
from .errors import FormatError, UnknownWordError
from .tagger import TaggerModel, tag_word
from .tokenizer import TokenizerConfig, normalize, wordpiece_tokenize
from .vocab import Vocabulary


class WordpieceSegmenter:
    """Greedy subword decoding viewed as a surface segmenter.

    Spans index the original word. The whole word becomes a single span when
    decoding yields the unknown token or when normalization changes the
    word's length (so spans would no longer line up).
    """

    def __init__(self, vocab: Vocabulary, cfg: TokenizerConfig | None = None):
        self.vocab = vocab
        self.cfg = cfg or TokenizerConfig()

    def segment(self, word: str) -> SurfaceSegmentation:
        if not word:
            raise ValueError("empty word")
        whole = SurfaceSegmentation(surface=word, spans=((0, len(word)),))
        normalized = normalize(word, self.cfg)
        if len(normalized) != len(word) or " " in normalized:
            return whole
        tokens = wordpiece_tokenize(normalized, self.vocab, self.cfg)
        if tokens == [self.cfg.unknown_token]:
            return whole
        prefix = self.vocab.continuation_prefix
        spans = []
        cursor = 0
        for token in tokens:
            piece = token[len(prefix):] if cursor > 0 and token.startswith(prefix) else token
            spans.append((cursor, cursor + len(piece)))
            cursor += len(piece)
        return SurfaceSegmentation(surface=word, spans=tuple(spans))


class ExternalSegmentations:
    """Fixed word -> segmentation table, e.g. output of an external tagger."""

    def __init__(self, table: Mapping[str, SurfaceSegmentation]):
        self.table = dict(table)

    def segment(self, word: str) -> SurfaceSegmentation:
        try:
            return self.table[word]
        except KeyError:
            raise UnknownWordError(f"no segmentation recorded for {word!r}") from None

    def __len__(self) -> int:
        return len(self.table)

    @classmethod
    def from_annotations(cls, annotations: list[MorphemeAnnotation]) -> "ExternalSegmentations":
        """Gold-replay table: each word maps to its aligned gold segmentation."""
        table = {}
        for ann in annotations:
            seg, _ = align_morphemes(ann)
            table[ann.surface] = seg
        return cls(table)


def load_external_segmentations(
    source: str | os.PathLike | IO[str],
) -> dict[str, SurfaceSegmentation]:
    """Parse lines "word TAB seg1 seg2 ..." into a word -> segmentation map.

    The segments must concatenate back to the word; duplicate words are
    rejected. Both violations report the offending line number.
    """
    name = source_name(source)
    table: dict[str, SurfaceSegmentation] = {}
    with open_text(source) as stream:
        for lineno, line in enumerate(stream, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            columns = line.split("\t")
            if len(columns) < 2:
                raise FormatError("expected 'word<TAB>segments'", line=lineno, source=name)
            word = columns[0]
            segments = columns[1].split()
            if "".join(segments) != word:
                raise FormatError(
                    f"segments {segments!r} do not concatenate to {word!r}",
                    line=lineno,
                    source=name,
                )
            if word in table:
                raise FormatError(f"duplicate word {word!r}", line=lineno, source=name)
            table[word] = SurfaceSegmentation.from_segments(segments)
    return table


def segment_word(segmenter, word: str) -> SurfaceSegmentation:
    """Segment one word with whichever backend `segmenter` is."""
    if not word:
        raise ValueError("empty word")
    if isinstance(segmenter, TaggerModel):
        return tags_to_segments(word, tag_word(segmenter, word))
    if hasattr(segmenter, "segment"):
        return segmenter.segment(word)
    if isinstance(segmenter, Mapping):
        try:
            return segmenter[word]
        except KeyError:
            raise UnknownWordError(f"no segmentation recorded for {word!r}") from None
    raise TypeError(f"not a segmenter: {type(segmenter).__name__}")
