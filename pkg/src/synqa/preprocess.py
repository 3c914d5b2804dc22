"""Text cleanup, sentence segmentation, and tokenization.

normalize() produces the text every downstream span is anchored to, so
its output is stable by contract: same input, same output, and running
it twice is a no-op. Punctuation is kept and case is preserved (there is
an opt-in lowercase switch) because answers must remain literal
substrings of the stored context and the entity heuristics need
capitalization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import resources
from .model import Document, Sentence, Span, Token

_QUOTE_FOLDS = {
    "“": '"',  # left double
    "”": '"',  # right double
    "„": '"',  # low double
    "‘": "'",  # left single
    "’": "'",  # right single
    "‚": "'",  # low single
}

_WS_RUN = re.compile(r"\s+")

# Punctuation that is always split off into its own token; hyphens stay
# inside words, periods stay inside abbreviations and between digits.
SPLIT_PUNCT = set('.,;:!?"\'()[]')

_TERMINATORS = set(".?!")


@dataclass(frozen=True)
class NormalizationReport:
    contractions_expanded: int = 0
    quotes_normalized: int = 0
    whitespace_collapsed: int = 0


def _contraction_pattern(table: dict[str, str]) -> re.Pattern[str]:
    keys = sorted(table, key=len, reverse=True)
    variants = []
    for key in keys:
        variants.append(re.escape(key))
        variants.append(re.escape(key.capitalize()))
    return re.compile(r"\b(?:%s)\b" % "|".join(variants))


def normalize(raw: str, *, lowercase: bool = False) -> tuple[str, NormalizationReport]:
    """Clean raw text: fold curly quotes, expand contractions, collapse whitespace.

    Whitespace runs become a single space, except runs containing two or
    more newlines, which become exactly one blank line (a paragraph
    break). Leading and trailing whitespace is dropped.
    """
    quotes = 0
    chars = []
    for ch in raw:
        folded = _QUOTE_FOLDS.get(ch)
        if folded is not None:
            quotes += 1
            chars.append(folded)
        else:
            chars.append(ch)
    text = "".join(chars)

    table = resources.contractions()
    expanded = 0

    def _expand(match: re.Match[str]) -> str:
        nonlocal expanded
        expanded += 1
        hit = match.group(0)
        replacement = table.get(hit.lower(), hit)
        if hit[0].isupper():
            replacement = replacement[0].upper() + replacement[1:]
        return replacement

    text = _contraction_pattern(table).sub(_expand, text)

    collapsed = 0
    stripped = text.strip()
    if stripped != text:
        collapsed += 1
    text = stripped

    def _collapse(match: re.Match[str]) -> str:
        nonlocal collapsed
        run = match.group(0)
        replacement = "\n\n" if run.count("\n") >= 2 else " "
        if run != replacement:
            collapsed += 1
        return replacement

    text = _WS_RUN.sub(_collapse, text)

    if lowercase:
        text = text.lower()

    report = NormalizationReport(
        contractions_expanded=expanded,
        quotes_normalized=quotes,
        whitespace_collapsed=collapsed,
    )
    return text, report


def _word_ending_at(text: str, index: int) -> str:
    """Non-whitespace run of `text` that ends at `index` (inclusive)."""
    start = index
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    return text[start : index + 1]


def segment(normalized: str, *, abbreviations: frozenset[str] | None = None) -> list[Span]:
    """Sentence spans over normalized text, excluding surrounding whitespace.

    A boundary falls after [.?!] followed by whitespace and an uppercase
    letter or digit, unless the word carrying the terminator is a known
    abbreviation. A paragraph break always ends a sentence; trailing text
    without a terminator forms a final sentence.
    """
    if abbreviations is None:
        abbreviations = resources.abbreviations()

    spans: list[Span] = []
    n = len(normalized)
    start = 0

    def _emit(lo: int, hi: int) -> None:
        while lo < hi and normalized[lo].isspace():
            lo += 1
        while hi > lo and normalized[hi - 1].isspace():
            hi -= 1
        if hi > lo:
            spans.append(Span(lo, hi))

    i = 0
    while i < n:
        ch = normalized[i]
        if ch == "\n" and normalized[i : i + 2] == "\n\n":
            _emit(start, i)
            start = i + 2
            i += 2
            continue
        if ch in _TERMINATORS:
            j = i + 1
            while j < n and normalized[j].isspace():
                j += 1
            if j == i + 1:
                # No whitespace after the terminator: not a boundary
                # (covers "3.5", "?!", and end handled after the loop).
                i += 1
                continue
            if j < n and not (normalized[j].isupper() or normalized[j].isdigit()):
                i += 1
                continue
            if ch == ".":
                word = _word_ending_at(normalized, i).lstrip("\"'([")
                if word in abbreviations:
                    i += 1
                    continue
            _emit(start, i + 1)
            start = j
            i = j
            continue
        i += 1
    _emit(start, n)
    return spans


def _is_abbreviation(chunk: str, abbreviations: frozenset[str]) -> bool:
    return chunk in abbreviations


def _digit_period(chunk: str, k: int) -> bool:
    """True when chunk[k] is a period with digits on both sides."""
    return (
        chunk[k] == "."
        and 0 < k < len(chunk) - 1
        and chunk[k - 1].isdigit()
        and chunk[k + 1].isdigit()
    )


def tokenize(sentence_text: str, *, abbreviations: frozenset[str] | None = None) -> list[Token]:
    """Split a sentence into tokens carrying sentence-relative spans.

    Whitespace separates chunks; listed punctuation splits into its own
    token except periods kept inside abbreviations ("Dr.") and between
    digits ("3.5"). Hyphens never split a word. POS is left unset.
    """
    if abbreviations is None:
        abbreviations = resources.abbreviations()

    tokens: list[Token] = []

    def _emit(lo: int, hi: int) -> None:
        tokens.append(Token(text=sentence_text[lo:hi], span=Span(lo, hi)))

    def _split_chunk(lo: int, hi: int) -> None:
        chunk = sentence_text[lo:hi]
        if not chunk:
            return
        # Whole-chunk abbreviations keep their periods ("U.S.", "e.g.").
        if _is_abbreviation(chunk, abbreviations):
            _emit(lo, hi)
            return
        if chunk[0] in SPLIT_PUNCT:
            _emit(lo, lo + 1)
            _split_chunk(lo + 1, hi)
            return
        if chunk[-1] in SPLIT_PUNCT:
            _split_chunk(lo, hi - 1)
            _emit(hi - 1, hi)
            return
        # Split at the first interior punctuation that is not protected:
        # periods stay between digits ("3.5") and inside abbreviations.
        for k in range(1, len(chunk) - 1):
            ch = chunk[k]
            if ch in SPLIT_PUNCT:
                if ch == "." and _digit_period(chunk, k):
                    continue
                if ch == "." and _is_abbreviation(chunk[: k + 1], abbreviations):
                    continue
                _split_chunk(lo, lo + k)
                _emit(lo + k, lo + k + 1)
                _split_chunk(lo + k + 1, hi)
                return
        _emit(lo, hi)

    for match in re.finditer(r"\S+", sentence_text):
        _split_chunk(match.start(), match.end())
    return tokens


def build_document(doc_id: str, title: str, raw_text: str, *, lowercase: bool = False) -> Document:
    """Run the full preprocessing pipeline on one document's raw text."""
    normalized, _ = normalize(raw_text, lowercase=lowercase)
    sentences = []
    for index, span in enumerate(segment(normalized)):
        text = normalized[span.start : span.end]
        sentences.append(
            Sentence(text=text, span=span, tokens=tuple(tokenize(text)), index=index)
        )
    return Document(
        id=doc_id,
        title=title,
        raw_text=raw_text,
        normalized_text=normalized,
        sentences=tuple(sentences),
    )


def paragraph_spans(normalized: str) -> list[Span]:
    """Spans of the whitespace-trimmed paragraphs of normalized text."""
    spans = []
    start = 0
    while start <= len(normalized):
        brk = normalized.find("\n\n", start)
        end = brk if brk != -1 else len(normalized)
        lo, hi = start, end
        while lo < hi and normalized[lo].isspace():
            lo += 1
        while hi > lo and normalized[hi - 1].isspace():
            hi -= 1
        if hi > lo:
            spans.append(Span(lo, hi))
        if brk == -1:
            break
        start = brk + 2
    return spans
