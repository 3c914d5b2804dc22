"""Question template DSL: parsing, matching against facts, and realization.

One template per line:

    id | WH | pattern | constraints | answer=slot

Slots are written ``[subject]``, ``[verb]``, ``[verb-lemma]``, ``[object]``,
``[time]``, ``[place]``. Constraints are comma-separated ``slot:LABEL``
where LABEL is an entity label or a POS tag. ``#`` starts a comment.

Templates whose pattern opens with "When did" / "What did" / "Where did"
take do-support: their ``[verb]`` slot renders the verb lemma, matching
how English demotes the verb after "did".
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from .analysis import Adjunct, Fact, head_range
from .model import ENTITY_LABELS, POS_TAGS, Entity, Span, Token, project_span

WH_TYPES = ("WHO", "WHAT", "WHEN", "WHERE", "WHY", "HOW")

SLOT_KINDS = ("subject", "object", "verb", "verb-lemma", "time", "place")

_DO_SUPPORT_OPENERS = ("When did", "What did", "Where did")

_SLOT_RE = re.compile(r"\[([a-z-]+)\]")


class TemplateError(ValueError):
    """Raised for malformed template files; carries the offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class Slot:
    kind: str


@dataclass(frozen=True)
class QuestionTemplate:
    id: str
    wh_type: str
    pattern_text: str
    elements: tuple[Literal | Slot, ...] = field(compare=False)
    constraints: tuple[tuple[str, str], ...]
    answer_slot: str
    complexity: int
    do_support: bool

    @property
    def pattern_slots(self) -> tuple[str, ...]:
        return tuple(e.kind for e in self.elements if isinstance(e, Slot))

    def required_slots(self) -> set[str]:
        needed = set(self.pattern_slots)
        needed.add(self.answer_slot)
        needed.update(slot for slot, _ in self.constraints)
        return needed


@dataclass(frozen=True)
class TemplateSet:
    templates: tuple[QuestionTemplate, ...]
    source_digest: str = field(compare=False)

    def __len__(self) -> int:
        return len(self.templates)

    def subset(self, ids: set[str]) -> "TemplateSet":
        """Restriction to the given template ids, preserving file order."""
        kept = tuple(t for t in self.templates if t.id in ids)
        return TemplateSet(templates=kept, source_digest=self.source_digest)


@dataclass(frozen=True)
class SlotBinding:
    """One filled slot: exact surface text and its document-relative span."""

    surface: str
    span: Span
    entity: Entity | None
    tokens: tuple[Token, ...]


@dataclass(frozen=True)
class Binding:
    slots: dict[str, SlotBinding]

    def __getitem__(self, kind: str) -> SlotBinding:
        return self.slots[kind]

    def __contains__(self, kind: str) -> bool:
        return kind in self.slots


def _parse_pattern(pattern: str, line_no: int) -> tuple[Literal | Slot, ...]:
    elements: list[Literal | Slot] = []
    cursor = 0
    for match in _SLOT_RE.finditer(pattern):
        before = pattern[cursor : match.start()].strip()
        if before:
            elements.append(Literal(before))
        kind = match.group(1)
        if kind not in SLOT_KINDS:
            raise TemplateError(f"unknown slot [{kind}]", line_no)
        elements.append(Slot(kind))
        cursor = match.end()
    tail = pattern[cursor:].strip()
    if tail:
        elements.append(Literal(tail))
    if not any(isinstance(e, Slot) for e in elements):
        raise TemplateError("pattern needs at least one slot", line_no)
    if not pattern.rstrip().endswith("?"):
        raise TemplateError("pattern must end with '?'", line_no)
    return tuple(elements)


def parse_template_file(content: str) -> TemplateSet:
    """Parse DSL text into an ordered TemplateSet.

    Raises TemplateError naming the first offending line.
    """
    templates: list[QuestionTemplate] = []
    seen_ids: set[str] = set()
    for line_no, raw in enumerate(content.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [part.strip() for part in line.split("|")]
        if len(parts) != 5:
            raise TemplateError("expected 'id | WH | pattern | constraints | answer=slot'", line_no)
        tpl_id, wh, pattern, constraint_text, answer_text = parts
        if not tpl_id:
            raise TemplateError("empty template id", line_no)
        if tpl_id in seen_ids:
            raise TemplateError(f"duplicate template id {tpl_id!r}", line_no)
        if wh not in WH_TYPES:
            raise TemplateError(f"unknown wh type {wh!r}", line_no)
        elements = _parse_pattern(pattern, line_no)
        constraints: list[tuple[str, str]] = []
        if constraint_text:
            for clause in constraint_text.split(","):
                clause = clause.strip()
                if not clause:
                    continue
                slot, sep, label = clause.partition(":")
                slot, label = slot.strip(), label.strip()
                if not sep or slot not in SLOT_KINDS:
                    raise TemplateError(f"bad constraint {clause!r}", line_no)
                if label not in ENTITY_LABELS and label not in POS_TAGS:
                    raise TemplateError(f"unknown constraint label {label!r}", line_no)
                constraints.append((slot, label))
        if not answer_text.startswith("answer="):
            raise TemplateError("missing 'answer=slot' directive", line_no)
        answer_slot = answer_text[len("answer=") :].strip()
        if answer_slot not in SLOT_KINDS:
            raise TemplateError(f"unknown answer slot {answer_slot!r}", line_no)
        slot_count = sum(1 for e in elements if isinstance(e, Slot))
        templates.append(
            QuestionTemplate(
                id=tpl_id,
                wh_type=wh,
                pattern_text=pattern,
                elements=elements,
                constraints=tuple(constraints),
                answer_slot=answer_slot,
                complexity=slot_count,
                do_support=pattern.startswith(_DO_SUPPORT_OPENERS),
            )
        )
        seen_ids.add(tpl_id)
    digest = hashlib.sha256(content.encode("utf-8")).hexdigest()
    return TemplateSet(templates=tuple(templates), source_digest=digest)


def serialize_template_set(template_set: TemplateSet) -> str:
    """Canonical DSL text for a TemplateSet; reparsing yields an equal set."""
    lines = []
    for t in template_set.templates:
        constraints = ", ".join(f"{slot}:{label}" for slot, label in t.constraints)
        lines.append(f"{t.id} | {t.wh_type} | {t.pattern_text} | {constraints} | answer={t.answer_slot}")
    return "\n".join(lines) + ("\n" if lines else "")


def load_template_file(path) -> TemplateSet:
    from pathlib import Path

    return parse_template_file(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# Matching


def _bind_tokens(fact: Fact, first: int, last: int, entity: Entity | None) -> SlotBinding:
    sentence = fact.sentence
    tokens = sentence.tokens[first : last + 1]
    sentence_span = Span(tokens[0].span.start, tokens[-1].span.end)
    return SlotBinding(
        surface=sentence.text[sentence_span.start : sentence_span.end],
        span=project_span(sentence_span, sentence.span),
        entity=entity,
        tokens=tokens,
    )


def _first_adjunct(fact: Fact, kind: str) -> Adjunct | None:
    for adjunct in fact.adjuncts:
        if adjunct.kind == kind:
            return adjunct
    return None


def _resolve_slot(fact: Fact, kind: str) -> SlotBinding | None:
    sentence = fact.sentence
    if kind == "subject":
        first, last = fact.subject.token_range
        return _bind_tokens(fact, first, last, _exact_cover(fact, fact.subject))
    if kind == "object":
        if fact.object is None:
            return None
        first, last = fact.object.token_range
        return _bind_tokens(fact, first, last, _exact_cover(fact, fact.object))
    if kind == "verb":
        return _bind_tokens(fact, fact.verb, fact.verb, None)
    if kind == "verb-lemma":
        base = _bind_tokens(fact, fact.verb, fact.verb, None)
        lemma = sentence.tokens[fact.verb].lemma or base.surface.lower()
        return SlotBinding(surface=lemma, span=base.span, entity=None, tokens=base.tokens)
    if kind in ("time", "place"):
        adjunct = _first_adjunct(fact, kind.upper())
        if adjunct is None:
            return None
        # Bind the NP inside the PP, skipping the preposition.
        first, last = adjunct.chunk.token_range
        return _bind_tokens(fact, first + 1, last, adjunct.entity)
    raise ValueError(f"unknown slot kind {kind!r}")


def _exact_cover(fact: Fact, chunk) -> Entity | None:
    heads = head_range(fact.sentence, chunk)
    for entity in fact.entities:
        if entity.token_range == heads:
            return entity
    return None


def _constraint_holds(binding: SlotBinding, label: str) -> bool:
    if label in ENTITY_LABELS:
        return binding.entity is not None and binding.entity.label == label
    # POS constraint: checked against the head (last) bound token.
    return binding.tokens[-1].pos == label


def match(fact: Fact, template_set: TemplateSet) -> list[tuple[QuestionTemplate, Binding]]:
    """All templates (in file order) whose slots and constraints the fact satisfies."""
    results: list[tuple[QuestionTemplate, Binding]] = []
    for template in template_set.templates:
        slots: dict[str, SlotBinding] = {}
        ok = True
        needed = set(template.required_slots())
        # Do-support realization needs the lemma alongside the verb.
        if template.do_support and "verb" in needed:
            needed.add("verb-lemma")
        for kind in sorted(needed):
            resolved = _resolve_slot(fact, kind)
            if resolved is None:
                ok = False
                break
            slots[kind] = resolved
        if not ok:
            continue
        if all(_constraint_holds(slots[slot], label) for slot, label in template.constraints):
            results.append((template, Binding(slots=slots)))
    return results


# ---------------------------------------------------------------------------
# Realization


def instantiate(template: QuestionTemplate, binding: Binding) -> str:
    """Render the question: slot surfaces joined by single spaces,
    no space before '?' or ',', leading capital, one terminal '?'."""
    pieces: list[str] = []
    for element in template.elements:
        if isinstance(element, Literal):
            pieces.append(element.text)
            continue
        kind = element.kind
        if template.do_support and kind == "verb":
            kind = "verb-lemma"
        if kind not in binding:
            raise ValueError(f"binding is missing slot {element.kind!r}")
        surface = binding[kind].surface
        if not surface:
            raise ValueError(f"slot {element.kind!r} bound to empty text")
        pieces.append(surface)
    question = " ".join(pieces)
    question = re.sub(r"\s+([?,])", r"\1", question)
    question = re.sub(r"  +", " ", question).strip()
    question = question[0].upper() + question[1:]
    question = re.sub(r"\?+$", "?", question)
    if not question.endswith("?"):
        raise ValueError(f"template {template.id!r} did not produce a question")
    return question
