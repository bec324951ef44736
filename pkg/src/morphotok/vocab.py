"""Ordered subword token inventory and its vocab.txt on-disk format.

The file format is the BERT convention: one token per line, the line number
(0-based) is the token id. Published vocab.txt files load unmodified.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import IO, Iterable

from ._io import open_text, source_name
from .errors import FormatError, VocabularyError

DEFAULT_SPECIAL_TOKENS = ("[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]")
DEFAULT_UNKNOWN_TOKEN = "[UNK]"
DEFAULT_CONTINUATION_PREFIX = "##"


@dataclass(frozen=True)
class Vocabulary:
    """Immutable token inventory; the index in `tokens` is the token id.

    A token either starts with `continuation_prefix` (word-internal form) or
    not (word-initial form); the two are distinct entries. Tokens are stored
    as exact strings: no Unicode normalization happens at load time.
    """

    tokens: tuple[str, ...]
    continuation_prefix: str = DEFAULT_CONTINUATION_PREFIX
    special_tokens: frozenset[str] = frozenset(DEFAULT_SPECIAL_TOKENS)
    unknown_token: str = DEFAULT_UNKNOWN_TOKEN
    token_to_id: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        tokens = tuple(self.tokens)
        if not tokens:
            raise VocabularyError("empty vocabulary")
        mapping: dict[str, int] = {}
        specials = frozenset(self.special_tokens) & set(tokens)
        for idx, token in enumerate(tokens):
            if token == "":
                raise VocabularyError(f"empty token at id {idx}")
            if token in mapping:
                raise VocabularyError(f"duplicate token {token!r} (ids {mapping[token]} and {idx})")
            if token not in specials and any(ch.isspace() for ch in token):
                raise VocabularyError(f"token {token!r} at id {idx} contains whitespace")
            mapping[token] = idx
        if self.unknown_token not in mapping:
            raise VocabularyError(f"unknown token {self.unknown_token!r} is not in the vocabulary")
        object.__setattr__(self, "tokens", tokens)
        object.__setattr__(self, "special_tokens", specials)
        object.__setattr__(self, "token_to_id", mapping)

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self.token_to_id

    def id(self, token: str) -> int:
        return self.token_to_id[token]


def load_vocab(
    source: str | os.PathLike | IO[str],
    *,
    continuation_prefix: str = DEFAULT_CONTINUATION_PREFIX,
    special_tokens: Iterable[str] = DEFAULT_SPECIAL_TOKENS,
    unknown_token: str = DEFAULT_UNKNOWN_TOKEN,
) -> Vocabulary:
    """Read a vocab.txt stream (one token per line, line number = id).

    Line order is preserved. Duplicate tokens and empty lines are rejected
    with the offending line number. Special tokens absent from the file are
    simply not marked special; the file contents win.
    """
    name = source_name(source)
    tokens: list[str] = []
    seen: dict[str, int] = {}
    with open_text(source) as stream:
        for lineno, line in enumerate(stream, start=1):
            token = line.rstrip("\n").rstrip("\r")
            if token == "":
                raise FormatError("empty line", line=lineno, source=name)
            if token in seen:
                raise FormatError(
                    f"duplicate token {token!r} (first seen on line {seen[token]})",
                    line=lineno,
                    source=name,
                )
            seen[token] = lineno
            tokens.append(token)
    if not tokens:
        raise FormatError("empty vocabulary file", source=name)
    return Vocabulary(
        tokens=tuple(tokens),
        continuation_prefix=continuation_prefix,
        special_tokens=frozenset(special_tokens),
        unknown_token=unknown_token,
    )


def save_vocab(vocab: Vocabulary, dest: str | os.PathLike | IO[str]) -> None:
    """Write `vocab` in vocab.txt format; load_vocab(save_vocab(v)) == v."""
    with open_text(dest, "w") as stream:
        for token in vocab.tokens:
            stream.write(token)
            stream.write("\n")
