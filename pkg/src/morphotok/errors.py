"""Exception types shared across the package."""


class MorphotokError(Exception):
    """Base class for errors raised by this package."""


class FormatError(MorphotokError):
    """A line-oriented input violates its expected format."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        parts = []
        if source:
            parts.append(str(source))
        if line is not None:
            parts.append(f"line {line}")
        prefix = ", ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.line = line
        self.source = source


class VocabularyError(MorphotokError):
    """A token inventory violates its construction invariants."""


class AlignmentError(MorphotokError):
    """A morpheme annotation cannot be mapped onto its surface word."""


class UnknownWordError(MorphotokError):
    """A lookup-backed segmenter was asked about a word it does not know."""


class ModelFormatError(MorphotokError):
    """A serialized tagger model is corrupt or has an unsupported version."""
