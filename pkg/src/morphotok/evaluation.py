"""Scoring segmenters against gold morpheme data, plus corpus diagnostics.

The segmentation score treats a word's predicted and gold segments as
multisets of strings: true positives are the multiset intersection, so
matching is position-independent. Gold segments live in surface space
(aligned gold morphemes), because subword tokenizers can only emit surface
substrings, never canonical allomorphs.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .align import MorphemeAnnotation, SurfaceSegmentation, align_morphemes
from .segment import segment_word
from .tokenizer import TokenizerConfig, is_punctuation, normalize, pretokenize, wordpiece_tokenize
from .vocab import Vocabulary

DEFAULT_BIN_EDGES = (1, 10, 100, 500, 5000)


@dataclass(frozen=True)
class SegScore:
    """Precision/recall/F1 with the raw match counts behind them."""

    true_positive: int
    predicted_total: int
    gold_total: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, true_positive: int, predicted_total: int, gold_total: int) -> "SegScore":
        precision = true_positive / predicted_total if predicted_total else 0.0
        recall = true_positive / gold_total if gold_total else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        return cls(true_positive, predicted_total, gold_total, precision, recall, f1)

    def as_dict(self) -> dict:
        return {
            "true_positive": self.true_positive,
            "predicted_total": self.predicted_total,
            "gold_total": self.gold_total,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
        }


def score_word(pred: SurfaceSegmentation, gold: SurfaceSegmentation) -> tuple[int, int, int]:
    """(true positives, predicted segments, gold segments) for one word.

    True positives are the size of the multiset intersection of predicted and
    gold segment strings, regardless of position.
    """
    if pred.surface != gold.surface:
        raise ValueError(f"surface mismatch: {pred.surface!r} vs {gold.surface!r}")
    pred_segments = Counter(pred.segments())
    gold_segments = Counter(gold.segments())
    true_positive = sum((pred_segments & gold_segments).values())
    return true_positive, sum(pred_segments.values()), sum(gold_segments.values())


def segmentation_f1(
    pairs: Sequence[tuple[SurfaceSegmentation, SurfaceSegmentation]],
    mode: str = "micro",
) -> SegScore:
    """Aggregate word scores over (pred, gold) pairs.

    micro (default): sum counts over all words, then compute p/r/f1.
    macro: average the per-word precision/recall/f1; counts are zeroed.
    """
    if not pairs:
        raise ValueError("empty pair list")
    if mode not in ("micro", "macro"):
        raise ValueError(f"mode must be 'micro' or 'macro', got {mode!r}")
    word_counts = [score_word(pred, gold) for pred, gold in pairs]
    if mode == "micro":
        tp = sum(c[0] for c in word_counts)
        pred_n = sum(c[1] for c in word_counts)
        gold_n = sum(c[2] for c in word_counts)
        return SegScore.from_counts(tp, pred_n, gold_n)
    word_scores = [SegScore.from_counts(*counts) for counts in word_counts]
    n = len(word_scores)
    return SegScore(
        true_positive=0,
        predicted_total=0,
        gold_total=0,
        precision=sum(s.precision for s in word_scores) / n,
        recall=sum(s.recall for s in word_scores) / n,
        f1=sum(s.f1 for s in word_scores) / n,
    )


def evaluate_segmenter(
    segmenter,
    annotations: Sequence[MorphemeAnnotation],
    mode: str = "micro",
    warnings_out: list[str] | None = None,
) -> SegScore:
    """Score a segmenter against gold annotations.

    Gold surface segmentations come from align_morphemes; predictions from
    segment_word. Alignment warnings are appended to `warnings_out` when a
    list is supplied.
    """
    if not annotations:
        raise ValueError("no annotations to evaluate")
    pairs = []
    for ann in annotations:
        gold, warnings = align_morphemes(ann)
        if warnings_out is not None:
            warnings_out.extend(warnings)
        pred = segment_word(segmenter, ann.surface)
        pairs.append((pred, gold))
    return segmentation_f1(pairs, mode)


@dataclass(frozen=True)
class FertilityReport:
    """Tokens-per-word and unknown-token statistics for a corpus."""

    words: int
    tokens: int
    unk_words: int
    fertility: float
    unk_rate: float
    tokens_per_word: dict[int, int]
    vocab_tokens_used: int
    vocab_coverage: float

    def as_dict(self) -> dict:
        return {
            "words": self.words,
            "tokens": self.tokens,
            "unk_words": self.unk_words,
            "fertility": self.fertility,
            "unk_rate": self.unk_rate,
            "tokens_per_word": {str(k): v for k, v in sorted(self.tokens_per_word.items())},
            "vocab_tokens_used": self.vocab_tokens_used,
            "vocab_coverage": self.vocab_coverage,
        }


def fertility_report(
    vocab: Vocabulary,
    cfg: TokenizerConfig,
    corpus: Iterable[str],
) -> FertilityReport:
    """Mean tokens per word, unknown-word rate, and tokens-per-word histogram."""
    words = 0
    tokens = 0
    unk_words = 0
    histogram: dict[int, int] = {}
    used: set[str] = set()
    for line in corpus:
        for word in pretokenize(normalize(line, cfg)):
            pieces = wordpiece_tokenize(word, vocab, cfg)
            words += 1
            tokens += len(pieces)
            histogram[len(pieces)] = histogram.get(len(pieces), 0) + 1
            if pieces == [cfg.unknown_token]:
                unk_words += 1
            used.update(pieces)
    return FertilityReport(
        words=words,
        tokens=tokens,
        unk_words=unk_words,
        fertility=tokens / words if words else 0.0,
        unk_rate=unk_words / words if words else 0.0,
        tokens_per_word=histogram,
        vocab_tokens_used=len(used),
        vocab_coverage=len(used) / len(vocab) if len(vocab) else 0.0,
    )


@dataclass(frozen=True)
class BinStat:
    label: str
    low: int
    high: int | None  # None = unbounded
    available: int
    sampled: int
    mean_tokens_per_word: float | None = None
    unk_rate: float | None = None

    def as_dict(self) -> dict:
        return {
            "bin": self.label,
            "low": self.low,
            "high": self.high,
            "available": self.available,
            "sampled": self.sampled,
            "mean_tokens_per_word": self.mean_tokens_per_word,
            "unk_rate": self.unk_rate,
        }


@dataclass(frozen=True)
class FrequencyBinReport:
    """Per-bin sampling statistics for the masked-instance dataset."""

    bin_edges: tuple[int, ...]
    bins: tuple[BinStat, ...] = field(default_factory=tuple)

    def as_dict(self) -> dict:
        return {
            "bin_edges": list(self.bin_edges),
            "bins": [b.as_dict() for b in self.bins],
        }


def _scan_words(line: str) -> list[tuple[str, int, int]]:
    """(word, start, end) spans in the raw line; mirrors pretokenize."""
    spans: list[tuple[str, int, int]] = []
    start = None
    for index, char in enumerate(line):
        if char.isspace() or is_punctuation(char):
            if start is not None:
                spans.append((line[start:index], start, index))
                start = None
            if is_punctuation(char):
                spans.append((char, index, index + 1))
        elif start is None:
            start = index
    if start is not None:
        spans.append((line[start:], start, len(line)))
    return spans


def _bin_label(low: int, high: int | None) -> str:
    return f"[{low},{high})" if high is not None else f"[{low},inf)"


def sample_frequency_bins(
    corpus: Iterable[str],
    bins: Sequence[int] = DEFAULT_BIN_EDGES,
    n_per_bin: int = 10000,
    seed: int = 0,
    vocab: Vocabulary | None = None,
    cfg: TokenizerConfig | None = None,
) -> tuple[list[dict], FrequencyBinReport]:
    """Sample word instances per corpus-frequency bin for external masking.

    Each record carries the raw sentence, the target word, and its character
    offsets. Frequencies are counted over lowercased words; punctuation-only
    tokens are ignored. Sampling is without replacement over instances and
    deterministic for a fixed seed; bins with fewer instances than
    `n_per_bin` contribute everything they have.

    When a vocabulary is supplied, each bin also reports the mean subword
    count and unknown rate of its sampled instances.
    """
    if n_per_bin < 1:
        raise ValueError(f"n_per_bin must be >= 1, got {n_per_bin}")
    edges = tuple(sorted(set(int(b) for b in bins)))
    if not edges:
        raise ValueError("no bin edges")
    intervals = [
        (edges[k], edges[k + 1] if k + 1 < len(edges) else None) for k in range(len(edges))
    ]

    sentences = [line.rstrip("\n") for line in corpus]
    instances: list[tuple[int, str, int, int]] = []
    frequencies: Counter[str] = Counter()
    for line_index, sentence in enumerate(sentences):
        for word, start, end in _scan_words(sentence):
            if all(is_punctuation(ch) for ch in word):
                continue
            instances.append((line_index, word, start, end))
            frequencies[word.lower()] += 1
    if not instances:
        raise ValueError("empty corpus")

    pools: dict[int, list[tuple[int, str, int, int]]] = {k: [] for k in range(len(intervals))}
    for instance in instances:
        frequency = frequencies[instance[1].lower()]
        for k, (low, high) in enumerate(intervals):
            if frequency >= low and (high is None or frequency < high):
                pools[k].append(instance)
                break

    rng = random.Random(seed)
    records: list[dict] = []
    stats: list[BinStat] = []
    tokenizer_cfg = cfg or TokenizerConfig()
    for k, (low, high) in enumerate(intervals):
        pool = pools[k]
        chosen = pool if len(pool) <= n_per_bin else rng.sample(pool, n_per_bin)
        chosen = sorted(chosen)
        token_counts: list[int] = []
        unk = 0
        label = _bin_label(low, high)
        for line_index, word, start, end in chosen:
            records.append(
                {
                    "sentence": sentences[line_index],
                    "word": word,
                    "start": start,
                    "end": end,
                    "frequency": frequencies[word.lower()],
                    "frequency_bin": label,
                }
            )
            if vocab is not None:
                normalized = normalize(word, tokenizer_cfg)
                pieces = (
                    wordpiece_tokenize(normalized, vocab, tokenizer_cfg)
                    if normalized
                    else [tokenizer_cfg.unknown_token]
                )
                token_counts.append(len(pieces))
                if pieces == [tokenizer_cfg.unknown_token]:
                    unk += 1
        stats.append(
            BinStat(
                label=label,
                low=low,
                high=high,
                available=len(pool),
                sampled=len(chosen),
                mean_tokens_per_word=(
                    sum(token_counts) / len(token_counts) if vocab is not None and chosen else None
                ),
                unk_rate=unk / len(chosen) if vocab is not None and chosen else None,
            )
        )
    return records, FrequencyBinReport(bin_edges=edges, bins=tuple(stats))
