"""Small helpers for functions that accept either paths or open text streams."""

from __future__ import annotations

import contextlib
import io
import os
from typing import IO, Iterator


@contextlib.contextmanager
def open_text(source: str | os.PathLike | IO[str], mode: str = "r") -> Iterator[IO[str]]:
    """Yield a text stream for `source`, opening (and closing) it if it is a path."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, mode, encoding="utf-8") as handle:
            yield handle
    else:
        yield source


def source_name(source) -> str | None:
    """Best-effort display name for error messages."""
    if isinstance(source, (str, os.PathLike)):
        return str(source)
    return getattr(source, "name", None) if not isinstance(source, io.StringIO) else None
