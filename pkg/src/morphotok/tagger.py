"""Trainable character-level {B, I} sequence labeler.

A linear structured model over explicit character window features, trained
with the averaged structured perceptron and decoded with Viterbi. Position 0
is constrained to B; exact score ties prefer I (fewer boundaries) so decoding
is deterministic.
"""

from __future__ import annotations

import json
import math
import os
import random
from dataclasses import dataclass, field
from typing import IO

from ._io import open_text, source_name
from .errors import ModelFormatError

LABELS = ("B", "I")
VOWELS = frozenset("aeiou")
# Boundary padding for window features; private-use code points so they can
# never collide with characters of real words.
PAD_LEFT = ""
PAD_RIGHT = ""

MODEL_FORMAT = "morphotok-tagger"
MODEL_VERSION = 1

_NEG_INF = float("-inf")


@dataclass(frozen=True)
class FeatureTemplate:
    """Window radius and n-gram orders for character features."""

    radius: int = 3
    ngram_orders: tuple[int, ...] = (1, 2, 3, 4)

    def __post_init__(self):
        object.__setattr__(self, "ngram_orders", tuple(self.ngram_orders))
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        if any(order < 1 for order in self.ngram_orders):
            raise ValueError(f"n-gram orders must be >= 1, got {self.ngram_orders}")


@dataclass
class TrainConfig:
    epochs: int = 10
    seed: int = 0
    shuffle: bool = True
    averaging: bool = True

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")


@dataclass
class TaggerModel:
    """Feature template plus learned emission and transition weights."""

    template: FeatureTemplate = field(default_factory=FeatureTemplate)
    weights: dict[tuple[str, str], float] = field(default_factory=dict)
    transitions: dict[tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self):
        for table in (self.weights, self.transitions):
            for key, value in table.items():
                if not math.isfinite(value):
                    raise ValueError(f"non-finite weight {value!r} for {key!r}")


def extract_features(word: str, position: int, template: FeatureTemplate) -> list[str]:
    """Deterministic feature identifiers for one character position."""
    n = len(word)
    if not 0 <= position < n:
        raise IndexError(f"position {position} out of range for word of length {n}")

    def char_at(k: int) -> str:
        if k < 0:
            return PAD_LEFT
        if k >= n:
            return PAD_RIGHT
        return word[k]

    features = []
    for offset in range(-template.radius, template.radius + 1):
        features.append(f"c{offset}={char_at(position + offset)}")
    for order in template.ngram_orders:
        left = "".join(char_at(position - order + d) for d in range(order))
        right = "".join(char_at(position + d) for d in range(order))
        features.append(f"l{order}={left}")
        features.append(f"r{order}={right}")
    features.append("vow=1" if word[position].lower() in VOWELS else "vow=0")
    features.append(f"bkt={(5 * position) // n}")
    return features


def _decode(
    word: str,
    template: FeatureTemplate,
    weights: dict[tuple[str, str], float],
    transitions: dict[tuple[str, str], float],
) -> str:
    """Viterbi over {B, I} with position 0 forced to B; ties prefer I."""
    n = len(word)
    getw = weights.get
    gett = transitions.get

    def emit(position: int, label: str) -> float:
        total = 0.0
        for feature in extract_features(word, position, template):
            total += getw((feature, label), 0.0)
        return total

    prev = {"B": emit(0, "B"), "I": _NEG_INF}
    backpointers: list[dict[str, str]] = []
    for position in range(1, n):
        current: dict[str, float] = {}
        pointer: dict[str, str] = {}
        for label in LABELS:
            # Evaluate the I predecessor first so exact ties keep I.
            best_prev, best_score = "I", prev["I"] + gett(("I", label), 0.0)
            from_b = prev["B"] + gett(("B", label), 0.0)
            if from_b > best_score:
                best_prev, best_score = "B", from_b
            current[label] = best_score + emit(position, label)
            pointer[label] = best_prev
        prev = current
        backpointers.append(pointer)

    label = "I" if prev["I"] >= prev["B"] else "B"
    tags = [label]
    for pointer in reversed(backpointers):
        label = pointer[label]
        tags.append(label)
    return "".join(reversed(tags))


def tag_word(model: TaggerModel, word: str) -> str:
    """Viterbi-optimal tag string; length equals the word length, first tag B."""
    if not word:
        raise ValueError("empty word")
    return _decode(word, model.template, model.weights, model.transitions)


def _validate_pair(word: str, tags: str, index: int) -> None:
    if not word:
        raise ValueError(f"empty word at index {index}")
    if len(tags) != len(word):
        raise ValueError(f"tag/word length mismatch at index {index}: {word!r} vs {tags!r}")
    if tags[0] != "B" or any(t not in "BI" for t in tags):
        raise ValueError(f"malformed tags at index {index}: {tags!r}")


def train_tagger(
    data: list[tuple[str, str]],
    cfg: TrainConfig | None = None,
    template: FeatureTemplate | None = None,
) -> TaggerModel:
    """Averaged structured perceptron over (word, tag string) pairs.

    Deterministic for a fixed config: shuffling uses cfg.seed and weights are
    accumulated in a fixed order. Zero-valued weights are dropped from the
    returned model.
    """
    if not data:
        raise ValueError("empty data")
    cfg = cfg or TrainConfig()
    template = template or FeatureTemplate()
    for index, (word, tags) in enumerate(data):
        _validate_pair(word, tags, index)

    weights: dict[tuple[str, str], float] = {}
    transitions: dict[tuple[str, str], float] = {}
    # Classic lazy-averaging bookkeeping: accumulated[key] collects
    # weight * (steps it was in effect); stamps[key] is the last update step.
    accumulated = ({}, {})
    stamps = ({}, {})
    tables = (weights, transitions)
    step = 0

    def bump(table_id: int, key, delta: float) -> None:
        table = tables[table_id]
        acc = accumulated[table_id]
        stamp = stamps[table_id]
        current = table.get(key, 0.0)
        acc[key] = acc.get(key, 0.0) + (step - stamp.get(key, 0)) * current
        stamp[key] = step
        table[key] = current + delta

    feature_cache = [
        [extract_features(word, i, template) for i in range(len(word))] for word, _ in data
    ]

    rng = random.Random(cfg.seed)
    order = list(range(len(data)))
    for _ in range(cfg.epochs):
        if cfg.shuffle:
            rng.shuffle(order)
        for index in order:
            word, gold = data[index]
            step += 1
            predicted = _decode(word, template, weights, transitions)
            if predicted == gold:
                continue
            features = feature_cache[index]
            for i, (g, p) in enumerate(zip(gold, predicted)):
                if g == p:
                    continue
                for feature in features[i]:
                    bump(0, (feature, g), 1.0)
                    bump(0, (feature, p), -1.0)
            for i in range(1, len(word)):
                gold_pair = (gold[i - 1], gold[i])
                pred_pair = (predicted[i - 1], predicted[i])
                if gold_pair != pred_pair:
                    bump(1, gold_pair, 1.0)
                    bump(1, pred_pair, -1.0)

    final: list[dict] = [{}, {}]
    for table_id, table in enumerate(tables):
        acc = accumulated[table_id]
        stamp = stamps[table_id]
        for key, value in table.items():
            if cfg.averaging:
                value = (acc.get(key, 0.0) + (step - stamp.get(key, 0)) * value) / step
            if value != 0.0:
                final[table_id][key] = value
    return TaggerModel(template=template, weights=final[0], transitions=final[1])


def save_model(model: TaggerModel, dest: str | os.PathLike | IO[str]) -> None:
    """Serialize a model as versioned JSON; floats round-trip exactly."""
    payload = {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "template": {
            "radius": model.template.radius,
            "ngram_orders": list(model.template.ngram_orders),
        },
        "weights": [[f, label, w] for (f, label), w in sorted(model.weights.items())],
        "transitions": [[a, b, w] for (a, b), w in sorted(model.transitions.items())],
    }
    with open_text(dest, "w") as stream:
        json.dump(payload, stream, ensure_ascii=False)
        stream.write("\n")


def load_model(source: str | os.PathLike | IO[str]) -> TaggerModel:
    name = source_name(source)
    with open_text(source) as stream:
        try:
            payload = json.load(stream)
        except json.JSONDecodeError as exc:
            raise ModelFormatError(f"unreadable model file {name or ''}: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != MODEL_FORMAT:
        raise ModelFormatError(f"not a {MODEL_FORMAT} model file: {name or '<stream>'}")
    if payload.get("version") != MODEL_VERSION:
        raise ModelFormatError(
            f"unsupported model version {payload.get('version')!r} (expected {MODEL_VERSION})"
        )
    template = FeatureTemplate(
        radius=payload["template"]["radius"],
        ngram_orders=tuple(payload["template"]["ngram_orders"]),
    )
    weights = {(f, label): float(w) for f, label, w in payload["weights"]}
    transitions = {(a, b): float(w) for a, b, w in payload["transitions"]}
    return TaggerModel(template=template, weights=weights, transitions=transitions)
