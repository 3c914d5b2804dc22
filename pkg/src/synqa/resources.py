"""Loaders for the versioned data files shipped with the package.

All tables are plain UTF-8 text, one entry per line, `#` comments and
blank lines ignored. Two-column tables use a single tab separator.
The directory holding them can be overridden with the SYNQA_DATA_DIR
environment variable (it must mirror the shipped layout).
"""

from __future__ import annotations

import os
from functools import lru_cache
from pathlib import Path

_SHIPPED = Path(__file__).parent / "data"


def data_dir() -> Path:
    override = os.environ.get("SYNQA_DATA_DIR")
    return Path(override) if override else _SHIPPED


def default_template_path() -> Path:
    return data_dir() / "templates" / "default.tpl"


def _lines(path: Path) -> list[str]:
    out = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def _pairs(path: Path) -> dict[str, str]:
    table = {}
    for line in _lines(path):
        key, _, value = line.partition("\t")
        if not value:
            raise ValueError(f"{path.name}: expected 'key<TAB>value', got {line!r}")
        table[key] = value
    return table


# The caches key on the resolved directory so a SYNQA_DATA_DIR change
# between calls is honored.


@lru_cache(maxsize=None)
def _cached_lines(path: str) -> tuple[str, ...]:
    return tuple(_lines(Path(path)))


@lru_cache(maxsize=None)
def _cached_pairs(path: str) -> dict[str, str]:
    return _pairs(Path(path))


def contractions() -> dict[str, str]:
    """Contraction -> expansion table used by normalization."""
    return _cached_pairs(str(data_dir() / "contractions.txt"))


def abbreviations() -> frozenset[str]:
    """Abbreviations (with trailing period) that never end a sentence."""
    return frozenset(_cached_lines(str(data_dir() / "abbreviations.txt")))


def closed_class_lexicon() -> dict[str, str]:
    """Lower-cased closed-class word -> POS tag."""
    return _cached_pairs(str(data_dir() / "lexicon.txt"))


def irregular_verbs() -> dict[str, str]:
    """Irregular verb surface form -> lemma."""
    return _cached_pairs(str(data_dir() / "irregular_verbs.txt"))


def common_words() -> frozenset[str]:
    """Frequent lower-cased words that veto PROPN for sentence-initial tokens."""
    return frozenset(_cached_lines(str(data_dir() / "common_words.txt")))
