"""Rule-based linguistic analysis: POS tags, entities, chunks, and facts.

Everything here is deterministic. The tagger is a fixed rule cascade, the
entity recognizer runs three detectors in a fixed priority order, the
chunker is a greedy regular grammar, and fact extraction reduces a
sentence to at most one subject-verb-object(+adjuncts) tuple. The exact
rules are documented in docs/formats.md; the hand-annotated golden file
under tests/fixtures pins their behavior.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import resources
from .model import ENTITY_LABELS, Entity, Sentence, Token
from .preprocess import SPLIT_PUNCT

SUBORDINATORS = frozenset({"that", "which", "who", "because", "if", "when"})

TITLE_CUES = frozenset({"Dr.", "Mr.", "Mrs.", "Ms.", "Prof."})

PLACE_PREPOSITIONS = frozenset({"in", "at", "near"})

# Two labels matching the same span resolve in this order.
LABEL_PRIORITY = ("PERSON", "LOCATION", "ORG", "DATE", "TIME", "NUMBER", "MISC")

MONTHS = frozenset(
    {
        "January", "February", "March", "April", "May", "June",
        "July", "August", "September", "October", "November", "December",
    }
)

_NUM_RE = re.compile(r"^\d+(?:\.\d+)?$")
_YEAR_RE = re.compile(r"^[12]\d{3}$")
_ADJ_SUFFIXES = ("ous", "ful", "able", "ive")
_NOUN_SUFFIXES = ("tion", "ness", "ment", "ity")

NP_HEAD_TAGS = frozenset({"NOUN", "PROPN", "NUM"})


@dataclass(frozen=True)
class Gazetteer:
    """Case-sensitive surface forms for one entity label."""

    label: str
    entries: frozenset[str]

    def __post_init__(self) -> None:
        if self.label not in ENTITY_LABELS:
            raise ValueError(f"unknown gazetteer label {self.label!r}")
        for entry in self.entries:
            if not entry or entry != entry.strip():
                raise ValueError(f"bad gazetteer entry {entry!r}")


def load_gazetteers(directory: str | Path) -> list[Gazetteer]:
    """Load `<label>.txt` files (one surface form per line) from a directory."""
    gazetteers = []
    for path in sorted(Path(directory).glob("*.txt")):
        label = path.stem.upper()
        entries = frozenset(
            line.strip()
            for line in path.read_text(encoding="utf-8").splitlines()
            if line.strip() and not line.startswith("#")
        )
        if entries:
            gazetteers.append(Gazetteer(label=label, entries=entries))
    return gazetteers


@dataclass(frozen=True)
class Chunk:
    """Inclusive token range forming a noun phrase or prepositional phrase."""

    token_range: tuple[int, int]
    kind: str  # NP or PP

    def __post_init__(self) -> None:
        if self.kind not in ("NP", "PP"):
            raise ValueError(f"unknown chunk kind {self.kind!r}")

    def contains(self, other: "Chunk") -> bool:
        return self.token_range[0] <= other.token_range[0] and other.token_range[1] <= self.token_range[1]


@dataclass(frozen=True)
class Adjunct:
    kind: str  # TIME, PLACE, or OTHER
    chunk: Chunk
    entity: Entity | None = None


@dataclass(frozen=True)
class Fact:
    """Shallow subject-verb-object reading of one sentence.

    The owning (tagged) sentence and its entities ride along so
    downstream consumers can recover surface text, spans, and entity
    confidence without re-running analysis.
    """

    sentence_ref: tuple[str, int]
    subject: Chunk
    verb: int
    verb_lemma: str
    object: Chunk | None
    adjuncts: tuple[Adjunct, ...]
    subject_entity: str | None
    object_entity: str | None
    sentence: Sentence = field(repr=False)
    entities: tuple[Entity, ...] = field(repr=False, default=())


# ---------------------------------------------------------------------------
# POS tagging and lemmas


def _strip_verb_suffix(word: str) -> str:
    """Heuristic -ed/-ing removal with doubling and silent-e repair."""
    lower = word.lower()
    if lower.endswith("eed"):
        return lower[:-1]
    if lower.endswith("ied"):
        return lower[:-3] + "y"
    if lower.endswith("ed"):
        stem = lower[:-2]
    elif lower.endswith("ing") and len(lower) > 4:
        stem = lower[:-3]
    else:
        return lower
    if not stem:
        return lower
    if stem.endswith("i"):
        return stem[:-1] + "y"
    if len(stem) >= 2 and stem[-1] == stem[-2] and stem[-1] in "bdgkmnprt":
        return stem[:-1]
    # English stems never end in these letters bare: restore the silent e
    # ("arriv" -> "arrive", "danc" -> "dance").
    if stem[-1] in "vcuz":
        return stem + "e"
    if _is_single_syllable_cvc(stem):
        return stem + "e"
    return stem


_VOWELS = set("aeiou")


def _is_single_syllable_cvc(stem: str) -> bool:
    groups = len(re.findall(r"[aeiou]+", stem))
    if groups != 1 or len(stem) < 3:
        return False
    a, b, c = stem[-3], stem[-2], stem[-1]
    return a not in _VOWELS and b in _VOWELS and c not in _VOWELS and c not in "wxy"


def _strip_plural(word: str) -> str:
    lower = word.lower()
    if lower.endswith("ies") and len(lower) > 4:
        return lower[:-3] + "y"
    if lower.endswith(("xes", "ches", "shes", "sses")):
        return lower[:-2]
    if lower.endswith("s") and not lower.endswith(("ss", "us", "is")) and len(lower) > 3:
        return lower[:-1]
    return lower


def _lemma_for(text: str, pos: str, irregulars: dict[str, str]) -> str:
    lower = text.lower()
    if pos == "VERB":
        if lower in irregulars:
            return irregulars[lower]
        return _strip_verb_suffix(lower)
    if pos == "NOUN":
        return _strip_plural(lower)
    if pos == "PROPN":
        return text
    return lower


def tag_pos(
    tokens: list[Token] | tuple[Token, ...],
    *,
    lexicon: dict[str, str] | None = None,
    common: frozenset[str] | None = None,
    irregulars: dict[str, str] | None = None,
) -> list[Token]:
    """Assign POS and lemma to every token of one sentence.

    Cascade per token: closed-class lexicon; irregular-verb forms; suffix
    rules (-ly adverb, -ed/-ing verb for words longer than four
    characters, adjective and noun suffixes); numeric shape; pure
    punctuation; capitalization (vetoed for sentence-initial tokens found
    in the common-word list); default NOUN for anything with a letter or
    digit, X otherwise.
    """
    if lexicon is None:
        lexicon = resources.closed_class_lexicon()
    if common is None:
        common = resources.common_words()
    if irregulars is None:
        irregulars = resources.irregular_verbs()

    tagged: list[Token] = []
    for position, token in enumerate(tokens):
        text = token.text
        lower = text.lower()
        pos: str | None = None
        if lower in lexicon:
            pos = lexicon[lower]
        elif lower in irregulars:
            # Irregular past/participle forms carry no -ed marker, so the
            # suffix rules would miss them ("met", "won", "wrote").
            pos = "VERB"
        elif lower.endswith("ly"):
            pos = "ADV"
        elif (lower.endswith("ed") or lower.endswith("ing")) and len(lower) > 4:
            pos = "VERB"
        elif lower.endswith(_ADJ_SUFFIXES):
            pos = "ADJ"
        elif lower.endswith(_NOUN_SUFFIXES):
            pos = "NOUN"
        elif _NUM_RE.match(text):
            pos = "NUM"
        elif all(ch in SPLIT_PUNCT for ch in text):
            pos = "PUNCT"
        elif text[0].isupper() and not (position == 0 and lower in common):
            pos = "PROPN"
        elif any(ch.isalnum() for ch in text):
            pos = "NOUN"
        else:
            pos = "X"
        tagged.append(replace(token, pos=pos, lemma=_lemma_for(text, pos, irregulars)))
    return tagged


# ---------------------------------------------------------------------------
# Entity recognition


def _adjacent(tokens: tuple[Token, ...], i: int, j: int) -> bool:
    return tokens[i].span.end == tokens[j].span.start


def _gazetteer_entities(sentence: Sentence, gazetteers: list[Gazetteer], taken: set[int]) -> list[Entity]:
    tokens = sentence.tokens
    by_label: dict[str, set[tuple[str, ...]]] = {}
    max_len = 1
    for gaz in gazetteers:
        words = by_label.setdefault(gaz.label, set())
        for entry in gaz.entries:
            parts = tuple(entry.split())
            words.add(parts)
            max_len = max(max_len, len(parts))

    label_rank = {label: rank for rank, label in enumerate(LABEL_PRIORITY)}
    entities: list[Entity] = []
    i = 0
    while i < len(tokens):
        if i in taken:
            i += 1
            continue
        best: tuple[int, str] | None = None  # (length, label)
        upper = min(max_len, len(tokens) - i)
        for length in range(upper, 0, -1):
            if any(k in taken for k in range(i, i + length)):
                continue
            window = tuple(t.text for t in tokens[i : i + length])
            hits = [label for label, entries in by_label.items() if window in entries]
            if hits:
                hits.sort(key=lambda lab: label_rank.get(lab, len(label_rank)))
                best = (length, hits[0])
                break
        if best is not None:
            length, label = best
            entities.append(Entity(label=label, token_range=(i, i + length - 1), source="GAZETTEER"))
            taken.update(range(i, i + length))
            i += length
        else:
            i += 1
    return entities


def _regex_entities(sentence: Sentence, taken: set[int]) -> list[Entity]:
    tokens = sentence.tokens
    entities: list[Entity] = []
    i = 0
    n = len(tokens)
    while i < n:
        if i in taken:
            i += 1
            continue
        text = tokens[i].text
        # Month [day][, year] dates, longest first.
        if text in MONTHS:
            last = i
            j = i + 1
            if j < n and j not in taken and tokens[j].text.isdigit() and 1 <= int(tokens[j].text) <= 31:
                last = j
                j += 1
            if (
                j < n
                and tokens[j].text == ","
                and j + 1 < n
                and j + 1 not in taken
                and _YEAR_RE.match(tokens[j + 1].text)
            ):
                last = j + 1
            entities.append(Entity(label="DATE", token_range=(i, last), source="REGEX"))
            taken.update(range(i, last + 1))
            i = last + 1
            continue
        # Clock time split as NUM ":" NUM with no intervening spaces.
        if (
            text.isdigit()
            and len(text) <= 2
            and int(text) <= 23
            and i + 2 < n
            and tokens[i + 1].text == ":"
            and tokens[i + 2].text.isdigit()
            and len(tokens[i + 2].text) == 2
            and int(tokens[i + 2].text) <= 59
            and _adjacent(tokens, i, i + 1)
            and _adjacent(tokens, i + 1, i + 2)
            and not {i + 1, i + 2} & taken
        ):
            entities.append(Entity(label="TIME", token_range=(i, i + 2), source="REGEX"))
            taken.update(range(i, i + 3))
            i += 3
            continue
        # Four-digit years in a plausible range.
        if _YEAR_RE.match(text):
            entities.append(Entity(label="DATE", token_range=(i, i), source="REGEX"))
            taken.add(i)
            i += 1
            continue
        # Any remaining numeric token.
        if tokens[i].pos == "NUM" and _NUM_RE.match(text):
            entities.append(Entity(label="NUMBER", token_range=(i, i), source="REGEX"))
            taken.add(i)
            i += 1
            continue
        i += 1
    return entities


def _capitalization_entities(sentence: Sentence, taken: set[int]) -> list[Entity]:
    tokens = sentence.tokens
    entities: list[Entity] = []
    i = 0
    n = len(tokens)
    while i < n:
        if i in taken or tokens[i].pos != "PROPN":
            i += 1
            continue
        start = i
        while i < n and i not in taken and tokens[i].pos == "PROPN":
            i += 1
        end = i - 1
        first = start
        titled = False
        while first <= end and tokens[first].text in TITLE_CUES:
            titled = True
            first += 1
        if first > end:
            continue
        if not titled and start > 0 and tokens[start - 1].text in TITLE_CUES:
            titled = True
        label = "PERSON" if titled else "MISC"
        entities.append(Entity(label=label, token_range=(first, end), source="CAPITALIZATION"))
    return entities


def recognize_entities(sentence: Sentence, gazetteers: list[Gazetteer]) -> list[Entity]:
    """Run the three entity detectors in priority order without overlaps."""
    taken: set[int] = set()
    entities = _gazetteer_entities(sentence, gazetteers, taken)
    entities += _regex_entities(sentence, taken)
    entities += _capitalization_entities(sentence, taken)
    entities.sort(key=lambda e: e.token_range)
    return entities


# ---------------------------------------------------------------------------
# Chunking


def chunk_phrases(sentence: Sentence) -> list[Chunk]:
    """Greedy left-to-right NP and PP chunks.

    NP is an optional determiner, then adverbs, then adjectives, then one
    or more NOUN/PROPN/NUM heads, always maximal. PP is a preposition
    directly followed by an NP; the inner NP is reported as well.
    """
    tokens = sentence.tokens
    n = len(tokens)

    def _np_at(i: int) -> tuple[int, int] | None:
        j = i
        if j < n and tokens[j].pos == "DET":
            j += 1
        while j < n and tokens[j].pos == "ADV":
            j += 1
        while j < n and tokens[j].pos == "ADJ":
            j += 1
        heads = j
        while j < n and tokens[j].pos in NP_HEAD_TAGS:
            j += 1
        if j == heads:
            return None
        return (i, j - 1)

    chunks: list[Chunk] = []
    i = 0
    while i < n:
        if tokens[i].pos == "ADP":
            inner = _np_at(i + 1)
            if inner is not None:
                chunks.append(Chunk(token_range=(i, inner[1]), kind="PP"))
                chunks.append(Chunk(token_range=inner, kind="NP"))
                i = inner[1] + 1
                continue
            i += 1
            continue
        np = _np_at(i)
        if np is not None:
            chunks.append(Chunk(token_range=np, kind="NP"))
            i = np[1] + 1
            continue
        i += 1
    return chunks


def head_range(sentence: Sentence, chunk: Chunk) -> tuple[int, int]:
    """Token range of the NOUN/PROPN/NUM head run of an NP chunk."""
    first, last = chunk.token_range
    i = first
    while i <= last and sentence.tokens[i].pos not in NP_HEAD_TAGS:
        i += 1
    return (i, last)


# ---------------------------------------------------------------------------
# Fact extraction


def _inside_any(index: int, pps: list[Chunk]) -> bool:
    return any(pp.token_range[0] <= index <= pp.token_range[1] for pp in pps)


def extract_facts(
    sentence: Sentence,
    entities: list[Entity],
    chunks: list[Chunk],
    *,
    doc_id: str = "",
) -> list[Fact]:
    """Reduce a sentence to at most one subject-verb-object fact.

    The main verb is the first VERB token outside any PP and not after a
    non-initial subordinator. The subject is the last NP outside any PP
    ending before it, the object the first NP outside any PP after it,
    and trailing PPs become TIME/PLACE/OTHER adjuncts.
    """
    tokens = sentence.tokens
    pps = [c for c in chunks if c.kind == "PP"]
    nps = [c for c in chunks if c.kind == "NP"]

    subordinator_positions = [
        i
        for i, tok in enumerate(tokens)
        if i > 0 and tok.text.lower() in SUBORDINATORS
    ]

    verb_index = None
    for i, tok in enumerate(tokens):
        if tok.pos != "VERB" or _inside_any(i, pps):
            continue
        if any(p < i for p in subordinator_positions):
            continue
        verb_index = i
        break
    if verb_index is None:
        return []

    subject = None
    for np in nps:
        if np.token_range[1] < verb_index and not _inside_any(np.token_range[0], pps):
            subject = np
    if subject is None:
        return []

    obj = None
    for np in nps:
        if np.token_range[0] > verb_index and not _inside_any(np.token_range[0], pps):
            obj = np
            break

    entity_by_range = {e.token_range: e for e in entities}

    def _entity_covering_heads(chunk: Chunk) -> Entity | None:
        return entity_by_range.get(head_range(sentence, chunk))

    def _entity_within(chunk: Chunk) -> Entity | None:
        first, last = chunk.token_range
        for e in entities:
            if first <= e.token_range[0] and e.token_range[1] <= last:
                return e
        return None

    adjuncts: list[Adjunct] = []
    for pp in pps:
        if pp.token_range[0] <= verb_index:
            continue
        contained = _entity_within(pp)
        if contained is not None and contained.label in ("DATE", "TIME"):
            adjuncts.append(Adjunct(kind="TIME", chunk=pp, entity=contained))
            continue
        if contained is not None and contained.label == "LOCATION":
            adjuncts.append(Adjunct(kind="PLACE", chunk=pp, entity=contained))
            continue
        head_prep = tokens[pp.token_range[0]].text.lower()
        inner_heads = [
            tokens[i]
            for i in range(pp.token_range[0] + 1, pp.token_range[1] + 1)
            if tokens[i].pos in NP_HEAD_TAGS
        ]
        if head_prep in PLACE_PREPOSITIONS and inner_heads and all(
            t.pos == "PROPN" for t in inner_heads
        ):
            adjuncts.append(Adjunct(kind="PLACE", chunk=pp, entity=contained))
            continue
        adjuncts.append(Adjunct(kind="OTHER", chunk=pp, entity=contained))

    subject_entity = _entity_covering_heads(subject)
    object_entity = _entity_covering_heads(obj) if obj is not None else None

    fact = Fact(
        sentence_ref=(doc_id, sentence.index),
        subject=subject,
        verb=verb_index,
        verb_lemma=tokens[verb_index].lemma or tokens[verb_index].text.lower(),
        object=obj,
        adjuncts=tuple(adjuncts),
        subject_entity=subject_entity.label if subject_entity else None,
        object_entity=object_entity.label if object_entity else None,
        sentence=sentence,
        entities=tuple(entities),
    )
    return [fact]


def analyze_sentence(
    sentence: Sentence, gazetteers: list[Gazetteer], *, doc_id: str = ""
) -> tuple[Sentence, list[Entity], list[Chunk], list[Fact]]:
    """Tag, recognize, chunk, and extract in one pass over a raw sentence."""
    tagged = Sentence(
        text=sentence.text,
        span=sentence.span,
        tokens=tuple(tag_pos(sentence.tokens)),
        index=sentence.index,
    )
    entities = recognize_entities(tagged, gazetteers)
    chunks = chunk_phrases(tagged)
    facts = extract_facts(tagged, entities, chunks, doc_id=doc_id)
    return tagged, entities, chunks, facts
