"""Mapping gold morpheme lists onto surface character spans and B/I tags.

Canonical morphemes need not match a word's characters (canonical "neuron"
surfaces as "neur" in "neurology"), so each annotation is aligned to its word
by a global unit-cost edit-distance DP. Surface characters inherit the
morpheme of the concatenation character they align to; unaligned surface
characters (connecting vowels) attach to the preceding span.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import IO

from ._io import open_text, source_name
from .errors import AlignmentError, FormatError

DEFAULT_MORPHEME_SEPARATOR = "@@"


@dataclass(frozen=True)
class MorphemeAnnotation:
    """A surface word paired with its gold canonical morpheme list."""

    surface: str
    morphemes: tuple[str, ...]
    word_class: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "morphemes", tuple(self.morphemes))
        if not self.surface:
            raise ValueError("empty surface word")
        if not self.morphemes:
            raise ValueError(f"no morphemes for {self.surface!r}")
        if any(m == "" for m in self.morphemes):
            raise ValueError(f"empty morpheme in annotation for {self.surface!r}")


@dataclass(frozen=True)
class SurfaceSegmentation:
    """Contiguous, exhaustive character spans of a word."""

    surface: str
    spans: tuple[tuple[int, int], ...]

    def __post_init__(self):
        spans = tuple((int(s), int(e)) for s, e in self.spans)
        object.__setattr__(self, "spans", spans)
        if not self.surface:
            raise ValueError("empty surface word")
        if not spans:
            raise ValueError(f"no spans for {self.surface!r}")
        cursor = 0
        for start, end in spans:
            if start != cursor or end <= start:
                raise ValueError(f"spans of {self.surface!r} are not contiguous: {spans}")
            cursor = end
        if cursor != len(self.surface):
            raise ValueError(f"spans of {self.surface!r} do not cover the word: {spans}")

    def segments(self) -> list[str]:
        return [self.surface[s:e] for s, e in self.spans]

    @classmethod
    def from_segments(cls, segments: list[str]) -> "SurfaceSegmentation":
        """Build a segmentation whose surface is the concatenation of `segments`."""
        spans = []
        cursor = 0
        for seg in segments:
            spans.append((cursor, cursor + len(seg)))
            cursor += len(seg)
        return cls(surface="".join(segments), spans=tuple(spans))


def align_morphemes(ann: MorphemeAnnotation) -> tuple[SurfaceSegmentation, list[str]]:
    """Map each canonical morpheme onto a contiguous span of the surface word.

    Runs a unit-cost edit-distance DP between the surface and the morpheme
    concatenation, tracing back with the preference match > substitution >
    deletion > insertion. Inserted surface characters attach to the preceding
    span (the following one when word-initial). Morphemes that end up with no
    characters are dropped and reported in the returned warning list.
    """
    surface = ann.surface
    concat = "".join(ann.morphemes)
    morph_of = [k for k, m in enumerate(ann.morphemes) for _ in m]

    n, m = len(surface), len(concat)
    dist = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        dist[i][0] = i
    for j in range(1, m + 1):
        dist[0][j] = j
    for i in range(1, n + 1):
        row = dist[i]
        prev = dist[i - 1]
        s_char = surface[i - 1]
        for j in range(1, m + 1):
            cost = 0 if s_char == concat[j - 1] else 1
            row[j] = min(prev[j - 1] + cost, row[j - 1] + 1, prev[j] + 1)

    # Traceback; owner[i] is the morpheme index surface[i] aligns to, or None
    # for inserted characters.
    owner: list[int | None] = [None] * n
    i, j = n, m
    while i > 0 or j > 0:
        here = dist[i][j]
        if i > 0 and j > 0 and surface[i - 1] == concat[j - 1] and here == dist[i - 1][j - 1]:
            owner[i - 1] = morph_of[j - 1]
            i, j = i - 1, j - 1
        elif i > 0 and j > 0 and here == dist[i - 1][j - 1] + 1:
            owner[i - 1] = morph_of[j - 1]
            i, j = i - 1, j - 1
        elif j > 0 and here == dist[i][j - 1] + 1:
            j -= 1  # concatenation character unrealized in the surface
        else:
            i -= 1  # surface character with no counterpart (e.g. connecting vowel)

    last: int | None = None
    for idx in range(n):
        if owner[idx] is None:
            owner[idx] = last
        else:
            last = owner[idx]
    follow: int | None = None
    for idx in reversed(range(n)):
        if owner[idx] is None:
            owner[idx] = follow
        else:
            follow = owner[idx]

    spans: list[tuple[int, int]] = []
    kept: list[int] = []
    start = 0
    for idx in range(1, n + 1):
        if idx == n or owner[idx] != owner[idx - 1]:
            spans.append((start, idx))
            kept.append(owner[start])  # type: ignore[arg-type]
            start = idx
    if not spans:
        raise AlignmentError(f"no morpheme of {ann.morphemes!r} aligns to {surface!r}")

    kept_set = set(kept)
    warnings = [
        f"{surface!r}: morpheme {k} ({ann.morphemes[k]!r}) received no characters and was dropped"
        for k in range(len(ann.morphemes))
        if k not in kept_set
    ]
    return SurfaceSegmentation(surface=surface, spans=tuple(spans)), warnings


def segmentation_to_tags(seg: SurfaceSegmentation) -> str:
    """One tag per character: B at every span start, I elsewhere."""
    tags = ["I"] * len(seg.surface)
    for start, _ in seg.spans:
        tags[start] = "B"
    return "".join(tags)


def tags_to_segments(word: str, tags: str) -> SurfaceSegmentation:
    """Inverse of segmentation_to_tags."""
    if len(tags) != len(word):
        raise ValueError(f"malformed tags: length {len(tags)} != word length {len(word)}")
    if any(t not in "BI" for t in tags):
        raise ValueError(f"malformed tags: {tags!r} contains labels outside {{B, I}}")
    if not tags or tags[0] != "B":
        raise ValueError(f"malformed tags: {tags!r} does not start with B")
    starts = [i for i, t in enumerate(tags) if t == "B"]
    spans = tuple(
        (start, starts[k + 1] if k + 1 < len(starts) else len(word))
        for k, start in enumerate(starts)
    )
    return SurfaceSegmentation(surface=word, spans=spans)


def load_sigmorphon(
    source: str | os.PathLike | IO[str],
    separator: str = DEFAULT_MORPHEME_SEPARATOR,
) -> list[MorphemeAnnotation]:
    """Parse shared-task TSV rows: surface TAB morphemes (TAB class).

    Morphemes are joined by `separator` with optional surrounding spaces,
    e.g. "onconeural<TAB>onco @@neur @@al". Empty lines are skipped; rows
    with a missing column are rejected with their line number.
    """
    name = source_name(source)
    annotations: list[MorphemeAnnotation] = []
    with open_text(source) as stream:
        for lineno, line in enumerate(stream, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            columns = line.split("\t")
            if len(columns) < 2:
                raise FormatError("expected at least 2 tab-separated columns", line=lineno, source=name)
            morphemes = tuple(part.strip() for part in columns[1].split(separator))
            word_class = columns[2] if len(columns) > 2 and columns[2] != "" else None
            try:
                annotations.append(
                    MorphemeAnnotation(surface=columns[0], morphemes=morphemes, word_class=word_class)
                )
            except ValueError as exc:
                raise FormatError(str(exc), line=lineno, source=name) from exc
    return annotations


def format_segmentation(seg: SurfaceSegmentation) -> str:
    """Render a segmentation as the interchange line "word TAB seg1 seg2 ..."."""
    return f"{seg.surface}\t{' '.join(seg.segments())}"


def format_annotation(ann: MorphemeAnnotation, separator: str = DEFAULT_MORPHEME_SEPARATOR) -> str:
    """Render an annotation as a shared-task TSV row."""
    joined = f" {separator}".join(ann.morphemes)
    if ann.word_class is not None:
        return f"{ann.surface}\t{joined}\t{ann.word_class}"
    return f"{ann.surface}\t{joined}"
