"""Shared immutable text-domain types and span arithmetic.

Offsets throughout the package count Unicode code points (Python string
indices), never bytes. A Span is half-open: [start, end).
"""

from __future__ import annotations

from dataclasses import dataclass, field


POS_TAGS = frozenset(
    {"DET", "NOUN", "PROPN", "VERB", "ADJ", "ADV", "PRON", "ADP", "NUM", "CONJ", "PART", "PUNCT", "X"}
)

ENTITY_LABELS = frozenset({"PERSON", "LOCATION", "ORG", "DATE", "TIME", "NUMBER", "MISC"})

# Fixed confidence per detector; a detector never emits any other value.
SOURCE_CONFIDENCE = {
    "GAZETTEER": 1.0,
    "REGEX": 0.9,
    "CAPITALIZATION": 0.6,
}


@dataclass(frozen=True, order=True)
class Span:
    """Half-open character interval [start, end) in code points."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if not (0 <= self.start <= self.end):
            raise ValueError(f"invalid span [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start


def span_text(text: str, span: Span) -> str:
    """Substring of `text` covered by `span`.

    Raises ValueError if the span reaches past the end of the text; a
    caller holding such a span has a bookkeeping bug.
    """
    if span.end > len(text):
        raise ValueError(f"span [{span.start}, {span.end}) exceeds text of length {len(text)}")
    return text[span.start : span.end]


def project_span(inner: Span, outer: Span) -> Span:
    """Lift a span expressed relative to a region onto that region's parent.

    `inner` is relative to a text that occupies `outer` in the parent text.
    """
    projected = Span(outer.start + inner.start, outer.start + inner.end)
    if projected.end > outer.end:
        raise ValueError(f"inner span {inner} does not fit inside {outer}")
    return projected


@dataclass(frozen=True)
class Token:
    """One token of a sentence; `span` is relative to the owning sentence.

    `pos` and `lemma` are None until analysis assigns them.
    """

    text: str
    span: Span
    pos: str | None = None
    lemma: str | None = None

    def __post_init__(self) -> None:
        if not self.text:
            raise ValueError("token text must be non-empty")
        if self.pos is not None and self.pos not in POS_TAGS:
            raise ValueError(f"unknown POS tag {self.pos!r}")


@dataclass(frozen=True)
class Sentence:
    """A segmented sentence; `span` is relative to the document's normalized text."""

    text: str
    span: Span
    tokens: tuple[Token, ...]
    index: int

    def token_text(self, first: int, last: int) -> str:
        """Exact sentence substring from token `first` through token `last` (inclusive)."""
        return self.text[self.tokens[first].span.start : self.tokens[last].span.end]


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    raw_text: str
    normalized_text: str
    sentences: tuple[Sentence, ...]


@dataclass(frozen=True)
class Entity:
    """A labeled token range within one sentence.

    `token_range` is an inclusive (first, last) pair of token indices.
    Confidence is a fixed function of the detector that produced the
    entity, so it is derived rather than passed in.
    """

    label: str
    token_range: tuple[int, int]
    source: str
    confidence: float = field(init=False)

    def __post_init__(self) -> None:
        if self.label not in ENTITY_LABELS:
            raise ValueError(f"unknown entity label {self.label!r}")
        if self.source not in SOURCE_CONFIDENCE:
            raise ValueError(f"unknown entity source {self.source!r}")
        first, last = self.token_range
        if first < 0 or last < first:
            raise ValueError(f"invalid token range {self.token_range}")
        object.__setattr__(self, "confidence", SOURCE_CONFIDENCE[self.source])
