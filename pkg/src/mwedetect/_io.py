"""Small helpers for loaders that accept either a path or an open stream."""

from __future__ import annotations

import contextlib
import os
from collections.abc import Iterable, Iterator


@contextlib.contextmanager
def text_lines(source: str | os.PathLike | Iterable[str]) -> Iterator[Iterable[str]]:
    """Yield an iterable of lines from a path or a pre-opened line source.

    Strings and PathLikes are treated as file system paths and opened UTF-8;
    anything else is assumed to already iterate over lines and is not closed.
    """
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as handle:
            yield handle
    else:
        yield source
