"""Normalization, pre-tokenization, and greedy longest-match subword decoding.

The decoder walks a word left to right and repeatedly takes the longest
vocabulary entry that matches at the cursor (word-initial form at position 0,
continuation form after). Any mid-word failure maps the whole word to the
unknown token. Cursor arithmetic is over Unicode scalar values, so multi-byte
characters (Greek letters etc.) are never split.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .vocab import DEFAULT_UNKNOWN_TOKEN, Vocabulary


@dataclass
class TokenizerConfig:
    """Decoding parameters inherited from the BERT-uncased convention."""

    lowercase: bool = True
    strip_accents: bool | None = None  # None: follow `lowercase`
    max_word_chars: int = 100
    unknown_token: str = DEFAULT_UNKNOWN_TOKEN

    def __post_init__(self):
        if self.max_word_chars < 1:
            raise ValueError(f"max_word_chars must be >= 1, got {self.max_word_chars}")

    @property
    def effective_strip_accents(self) -> bool:
        if self.strip_accents is None:
            return self.lowercase
        return self.strip_accents


def _is_whitespace(char: str) -> bool:
    # \t, \n, and \r are technically control characters but are treated
    # as whitespace, matching the BERT cleanup rules.
    if char in (" ", "\t", "\n", "\r"):
        return True
    return unicodedata.category(char) == "Zs"


def _is_control(char: str) -> bool:
    if char in ("\t", "\n", "\r"):
        return False
    return unicodedata.category(char).startswith("C")


def is_punctuation(char: str) -> bool:
    """All non-letter/number ASCII plus the Unicode P categories."""
    cp = ord(char)
    if (33 <= cp <= 47) or (58 <= cp <= 64) or (91 <= cp <= 96) or (123 <= cp <= 126):
        return True
    return unicodedata.category(char).startswith("P")


def normalize(text: str, cfg: TokenizerConfig) -> str:
    """Remove control characters, canonicalize whitespace, fold case and accents."""
    chars = []
    for char in text:
        cp = ord(char)
        if cp == 0 or cp == 0xFFFD or _is_control(char):
            continue
        chars.append(" " if _is_whitespace(char) else char)
    text = "".join(chars)
    if cfg.lowercase:
        text = text.lower()
    if cfg.effective_strip_accents:
        text = "".join(
            ch for ch in unicodedata.normalize("NFD", text) if unicodedata.category(ch) != "Mn"
        )
    return " ".join(text.split())


def pretokenize(text: str) -> list[str]:
    """Split normalized text on whitespace and isolate punctuation characters."""
    words: list[str] = []
    for chunk in text.split():
        run: list[str] = []
        for char in chunk:
            if is_punctuation(char):
                if run:
                    words.append("".join(run))
                    run = []
                words.append(char)
            else:
                run.append(char)
        if run:
            words.append("".join(run))
    return words


def wordpiece_tokenize(word: str, vocab: Vocabulary, cfg: TokenizerConfig) -> list[str]:
    """Greedy left-to-right longest-match decoding of a single word.

    Returns `[unknown_token]` when the word exceeds `cfg.max_word_chars` or
    when no vocabulary entry matches at some cursor position. Otherwise the
    emitted tokens, with continuation prefixes stripped, concatenate back to
    the word.
    """
    if not word:
        raise ValueError("empty word")
    if any(_is_whitespace(ch) for ch in word):
        raise ValueError(f"word {word!r} contains whitespace")
    if len(word) > cfg.max_word_chars:
        return [cfg.unknown_token]

    prefix = vocab.continuation_prefix
    tokens: list[str] = []
    start = 0
    while start < len(word):
        end = len(word)
        match = None
        while start < end:
            candidate = word[start:end]
            if start > 0:
                candidate = prefix + candidate
            if candidate in vocab:
                match = candidate
                break
            end -= 1
        if match is None:
            return [cfg.unknown_token]
        tokens.append(match)
        start = end
    return tokens


def tokenize_text(text: str, vocab: Vocabulary, cfg: TokenizerConfig) -> list[str]:
    """normalize -> pretokenize -> wordpiece over each word, concatenated."""
    tokens: list[str] = []
    for word in pretokenize(normalize(text, cfg)):
        tokens.extend(wordpiece_tokenize(word, vocab, cfg))
    return tokens


def detokenize(tokens: list[str], vocab: Vocabulary) -> str:
    """Concatenate tokens with continuation prefixes stripped.

    Raises ValueError when the sequence contains the unknown token, since the
    original text is then unrecoverable.
    """
    prefix = vocab.continuation_prefix
    parts = []
    for token in tokens:
        if token == vocab.unknown_token:
            raise ValueError("lossy sequence: unknown token cannot be detokenized")
        parts.append(token[len(prefix):] if token.startswith(prefix) else token)
    return "".join(parts)
