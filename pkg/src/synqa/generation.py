"""Per-document QA-pair production: gate, analyze, match, score, dedupe, cap.

A sentence is considered suitable when it has 4 to 60 tokens and its
extracted subject is not a bare pronoun. Each emitted pair stores the
paragraph containing the sentence as its context, and the answer offset
is relative to that paragraph, so the answer is always a literal
substring of the context (the invariant the scorer re-checks and the
fuzz suite sweeps).

The quality score is

    score = g_span * g_pron * (0.6 * s_conf + 0.4 * s_len)

with hard gates for span validity and pronoun-free slots, s_conf the
answer entity's detector confidence (0.5 when no entity backs the
answer), and s_len a length band of 4 to 20 question tokens decaying by
0.1 per token outside. Scores are rounded to six decimals.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .analysis import Gazetteer, analyze_sentence
from .dataset_io import DATASET_VERSION, QADataset, QARecord, Answer
from .model import SOURCE_CONFIDENCE, Document, Span
from .preprocess import paragraph_spans, tokenize
from .templates import Binding, QuestionTemplate, TemplateError, TemplateSet, instantiate, match

NO_ENTITY_CONFIDENCE = 0.5

SCORE_DIGITS = 6


@dataclass(frozen=True)
class GenerationConfig:
    min_score: float = 0.5
    max_pairs_per_sentence: int | None = 4
    seed: int = 42
    lowercase: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.min_score <= 1.0:
            raise ValueError(f"min_score must be in [0, 1], got {self.min_score}")
        if self.max_pairs_per_sentence is not None and self.max_pairs_per_sentence < 1:
            raise ValueError("max_pairs_per_sentence must be >= 1 (or None to disable)")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in unsigned 64 bits")


@dataclass(frozen=True)
class Provenance:
    source: str  # GAZETTEER, REGEX, CAPITALIZATION, or NONE
    sentence_span: Span


@dataclass(frozen=True)
class QAPair:
    id: str
    question: str
    answer_text: str
    answer_start: int
    context: str
    template_id: str
    wh_type: str
    score: float
    provenance: Provenance
    doc_id: str = field(repr=False, default="")
    sentence_index: int = field(repr=False, default=0)
    template_index: int = field(repr=False, default=0)
    serial: int = field(repr=False, default=0)


@dataclass(frozen=True)
class DocumentResult:
    pairs: tuple[QAPair, ...]
    sentence_count: int
    fact_count: int


def score_pair(pair: QAPair, binding: Binding) -> float:
    """Quality score in [0, 1]; zero when a hard gate fails."""
    end = pair.answer_start + len(pair.answer_text)
    g_span = 1.0 if pair.context[pair.answer_start : end] == pair.answer_text else 0.0
    g_pron = 1.0
    for slot in binding.slots.values():
        if len(slot.tokens) == 1 and slot.tokens[0].pos == "PRON":
            g_pron = 0.0
            break
    s_conf = SOURCE_CONFIDENCE.get(pair.provenance.source, NO_ENTITY_CONFIDENCE)
    n_tokens = len(tokenize(pair.question))
    if 4 <= n_tokens <= 20:
        s_len = 1.0
    else:
        distance = 4 - n_tokens if n_tokens < 4 else n_tokens - 20
        s_len = max(0.0, 1.0 - 0.1 * distance)
    return round(g_span * g_pron * (0.6 * s_conf + 0.4 * s_len), SCORE_DIGITS)


def filter_pairs(pairs: list[QAPair], min_score: float) -> list[QAPair]:
    """Pairs at or above the threshold, order preserved."""
    return [pair for pair in pairs if pair.score >= min_score]


def dedupe(pairs: list[QAPair]) -> list[QAPair]:
    """Collapse pairs with identical (question, answer, context).

    The survivor is the highest-scoring duplicate; ties go to the
    lexicographically smaller id. Survivors keep their input positions.
    """
    best: dict[tuple[str, str, str], tuple[int, QAPair]] = {}
    for position, pair in enumerate(pairs):
        key = (pair.question, pair.answer_text, pair.context)
        held = best.get(key)
        if held is None or (pair.score, held[1].id) > (held[1].score, pair.id):
            best[key] = (position, pair)
    return [pair for _, pair in sorted(best.values(), key=lambda item: item[0])]


def _validate_templates(template_set: TemplateSet) -> None:
    # A constraint may only name a slot the binding will actually hold:
    # one appearing in the pattern or the answer slot itself.
    for template in template_set.templates:
        allowed = set(template.pattern_slots) | {template.answer_slot}
        for slot, _ in template.constraints:
            if slot not in allowed:
                raise TemplateError(
                    f"template {template.id!r}: constraint on {slot!r} which is neither in the pattern nor the answer slot"
                )


def _paragraph_for(doc: Document, sentence_span: Span, paragraphs: list[Span]) -> Span:
    for span in paragraphs:
        if span.start <= sentence_span.start and sentence_span.end <= span.end:
            return span
    # Sentences always sit inside one trimmed paragraph; reaching this
    # point means preprocessing broke its own contract.
    raise AssertionError("sentence span outside every paragraph")


def process_document(
    doc: Document,
    template_set: TemplateSet,
    gazetteers: list[Gazetteer],
    config: GenerationConfig,
) -> DocumentResult:
    """Generate scored, deduplicated, capped pairs for one document."""
    _validate_templates(template_set)
    template_order = {t.id: i for i, t in enumerate(template_set.templates)}
    paragraphs = paragraph_spans(doc.normalized_text)

    raw_pairs: list[tuple[QAPair, Binding]] = []
    fact_count = 0
    for sentence in doc.sentences:
        if not 4 <= len(sentence.tokens) <= 60:
            continue
        tagged, _, _, facts = analyze_sentence(sentence, gazetteers, doc_id=doc.id)
        if not facts:
            continue
        fact_count += len(facts)
        serial_by_template: dict[str, int] = {}
        for fact in facts:
            first, last = fact.subject.token_range
            if first == last and tagged.tokens[first].pos == "PRON":
                # Bare-pronoun subject: the sentence is not suitable.
                break
            for template, binding in match(fact, template_set):
                question = instantiate(template, binding)
                answer = binding[template.answer_slot]
                paragraph = _paragraph_for(doc, tagged.span, paragraphs)
                context = doc.normalized_text[paragraph.start : paragraph.end]
                serial = serial_by_template.get(template.id, 0)
                serial_by_template[template.id] = serial + 1
                provenance = Provenance(
                    source=answer.entity.source if answer.entity is not None else "NONE",
                    sentence_span=tagged.span,
                )
                pair = QAPair(
                    id=f"{doc.id}-s{tagged.index}-{template.id}-{serial}",
                    question=question,
                    answer_text=answer.surface,
                    answer_start=answer.span.start - paragraph.start,
                    context=context,
                    template_id=template.id,
                    wh_type=template.wh_type,
                    score=0.0,
                    provenance=provenance,
                    doc_id=doc.id,
                    sentence_index=tagged.index,
                    template_index=template_order[template.id],
                    serial=serial,
                )
                pair = _with_score(pair, binding)
                raw_pairs.append((pair, binding))

    pairs = dedupe([pair for pair, _ in raw_pairs])
    pairs = _apply_sentence_cap(pairs, config.max_pairs_per_sentence)
    pairs.sort(key=lambda p: (p.doc_id, p.sentence_index, p.template_index, p.serial))
    return DocumentResult(
        pairs=tuple(pairs),
        sentence_count=len(doc.sentences),
        fact_count=fact_count,
    )


def _with_score(pair: QAPair, binding: Binding) -> QAPair:
    from dataclasses import replace

    return replace(pair, score=score_pair(pair, binding))


def _apply_sentence_cap(pairs: list[QAPair], cap: int | None) -> list[QAPair]:
    if cap is None:
        return pairs
    by_sentence: dict[tuple[str, int], list[QAPair]] = {}
    for pair in pairs:
        by_sentence.setdefault((pair.doc_id, pair.sentence_index), []).append(pair)
    keep: set[str] = set()
    for group in by_sentence.values():
        ranked = sorted(group, key=lambda p: (-p.score, p.template_index, p.serial))
        keep.update(pair.id for pair in ranked[:cap])
    return [pair for pair in pairs if pair.id in keep]


def generate_pairs(
    doc: Document,
    template_set: TemplateSet,
    gazetteers: list[Gazetteer],
    config: GenerationConfig,
) -> list[QAPair]:
    """Scored, deduplicated, capped pairs for one document (unfiltered)."""
    return list(process_document(doc, template_set, gazetteers, config).pairs)


@dataclass(frozen=True)
class GenerationSummary:
    documents: int
    sentences: int
    facts: int
    pairs_emitted: int
    pairs_filtered: int


def generate_dataset(
    documents: list[Document],
    template_set: TemplateSet,
    gazetteers: list[Gazetteer],
    config: GenerationConfig,
    *,
    workers: int = 1,
) -> tuple[QADataset, GenerationSummary]:
    """Run generation over a corpus and assemble the filtered dataset.

    Output is byte-identical for any worker count: documents are
    processed independently and merged in corpus order.
    """
    _validate_templates(template_set)
    if workers > 1 and len(documents) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(
                executor.map(
                    _process_star,
                    [(doc, template_set, gazetteers, config) for doc in documents],
                )
            )
    else:
        results = [process_document(doc, template_set, gazetteers, config) for doc in documents]

    all_pairs: list[QAPair] = []
    sentences = 0
    facts = 0
    for result in results:
        all_pairs.extend(result.pairs)
        sentences += result.sentence_count
        facts += result.fact_count
    all_pairs.sort(key=lambda p: (p.doc_id, p.sentence_index, p.template_index, p.serial))

    kept = filter_pairs(all_pairs, config.min_score)
    title_by_doc = {doc.id: doc.title for doc in documents}
    records = tuple(
        QARecord(
            id=pair.id,
            title=title_by_doc.get(pair.doc_id, pair.doc_id),
            context=pair.context,
            question=pair.question,
            answers=(Answer(text=pair.answer_text, answer_start=pair.answer_start),),
            origin="synthetic",
            template_id=pair.template_id,
            wh_type=pair.wh_type,
            score=pair.score,
        )
        for pair in kept
    )
    summary = GenerationSummary(
        documents=len(documents),
        sentences=sentences,
        facts=facts,
        pairs_emitted=len(all_pairs),
        pairs_filtered=len(all_pairs) - len(kept),
    )
    return QADataset(version=DATASET_VERSION, records=records), summary


def _process_star(args: tuple) -> DocumentResult:
    return process_document(*args)
