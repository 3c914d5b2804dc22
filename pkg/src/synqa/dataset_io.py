"""Reading and writing QA datasets, corpus ingestion, and run configuration.

The on-disk dataset schema mirrors SQuAD: articles hold paragraphs, a
paragraph holds a context string and its question-answer entries. In
memory the dataset is a flat, ordered record list; writing groups
consecutive records that share (title, context) back into paragraphs.
Serialization is canonical (fixed key order, two-space indent, UTF-8,
trailing newline) so equal datasets produce identical bytes.

All answer offsets count Unicode code points into the paragraph context.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .preprocess import build_document
from .model import Document

DATASET_VERSION = "synqa-1.0"
COMPAT_VERSION = "squad-compat"

ORIGINS = ("real", "synthetic")

SELECTION_POLICIES = ("TOP_SCORE", "SEEDED_UNIFORM")


class DatasetValidationError(ValueError):
    """Structural or span-validity failure; message names the element."""


class ConfigError(ValueError):
    """Bad key, bad value, or missing requirement in a config file."""


@dataclass(frozen=True)
class Answer:
    text: str
    answer_start: int


@dataclass(frozen=True)
class QARecord:
    """One question with its answers, context, and provenance metadata."""

    id: str
    title: str
    context: str
    question: str
    answers: tuple[Answer, ...]
    origin: str
    template_id: str | None = None
    wh_type: str | None = None
    score: float | None = None

    def first_answer(self) -> Answer:
        return self.answers[0]


@dataclass(frozen=True)
class QADataset:
    version: str
    records: tuple[QARecord, ...]

    def __len__(self) -> int:
        return len(self.records)


def _check_span(context: str, answer: Answer, where: str) -> None:
    end = answer.answer_start + len(answer.text)
    if answer.answer_start < 0 or end > len(context):
        raise DatasetValidationError(
            f"{where}: answer_start {answer.answer_start} out of range for context of length {len(context)}"
        )
    found = context[answer.answer_start : end]
    if found != answer.text:
        raise DatasetValidationError(
            f"{where}: answer text {answer.text!r} not at offset {answer.answer_start}; context has {found!r}"
        )


def validate_dataset(dataset: QADataset) -> None:
    """Enforce id uniqueness and the answer-span invariant on every record."""
    seen: set[str] = set()
    for i, record in enumerate(dataset.records):
        where = f"qa {record.id!r}" if record.id else f"record[{i}]"
        if record.id in seen:
            raise DatasetValidationError(f"{where}: duplicate id")
        seen.add(record.id)
        if record.origin not in ORIGINS:
            raise DatasetValidationError(f"{where}: unknown origin {record.origin!r}")
        if not record.answers:
            raise DatasetValidationError(f"{where}: no answers")
        for answer in record.answers:
            _check_span(record.context, answer, where)
        if record.score is not None and not (0.0 <= record.score <= 1.0):
            raise DatasetValidationError(f"{where}: score {record.score} outside [0, 1]")


def _expect(obj: dict, keys: set[str], where: str, optional: set[str] = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise DatasetValidationError(f"{where}: expected an object")
    unknown = set(obj) - keys - optional
    if unknown:
        raise DatasetValidationError(f"{where}: unknown key {sorted(unknown)[0]!r}")
    missing = keys - set(obj)
    if missing:
        raise DatasetValidationError(f"{where}: missing key {sorted(missing)[0]!r}")


def read_dataset(data: bytes | str) -> QADataset:
    """Parse and fully validate a dataset file.

    Files versioned "synqa-1.0" must carry per-qa meta. Plain SQuAD v1.1
    files (different or absent version, no meta) are accepted and mapped
    to version "squad-compat" with every record marked origin real.
    """
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DatasetValidationError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DatasetValidationError("top level: expected an object")

    version = doc.get("version")
    native = version == DATASET_VERSION
    _expect(doc, {"data"}, "top level", optional={"version"})

    articles = doc["data"]
    if not isinstance(articles, list):
        raise DatasetValidationError("data: expected a list")

    records: list[QARecord] = []
    for a, article in enumerate(articles):
        a_where = f"data[{a}]"
        _expect(article, {"title", "paragraphs"}, a_where)
        title = article["title"]
        if not isinstance(title, str):
            raise DatasetValidationError(f"{a_where}.title: expected a string")
        if not isinstance(article["paragraphs"], list):
            raise DatasetValidationError(f"{a_where}.paragraphs: expected a list")
        for p, paragraph in enumerate(article["paragraphs"]):
            p_where = f"{a_where}.paragraphs[{p}]"
            _expect(paragraph, {"context", "qas"}, p_where)
            context = paragraph["context"]
            if not isinstance(context, str):
                raise DatasetValidationError(f"{p_where}.context: expected a string")
            if not isinstance(paragraph["qas"], list):
                raise DatasetValidationError(f"{p_where}.qas: expected a list")
            for q, qa in enumerate(paragraph["qas"]):
                q_where = f"{p_where}.qas[{q}]"
                if native:
                    _expect(qa, {"id", "question", "answers", "meta"}, q_where)
                else:
                    _expect(qa, {"id", "question", "answers"}, q_where, optional={"meta"})
                if not isinstance(qa["id"], str) or not isinstance(qa["question"], str):
                    raise DatasetValidationError(f"{q_where}: id and question must be strings")
                if not isinstance(qa["answers"], list) or not qa["answers"]:
                    raise DatasetValidationError(f"{q_where}.answers: expected a non-empty list")
                answers = []
                for n, answer in enumerate(qa["answers"]):
                    n_where = f"{q_where}.answers[{n}]"
                    _expect(answer, {"text", "answer_start"}, n_where)
                    if not isinstance(answer["text"], str) or not isinstance(answer["answer_start"], int):
                        raise DatasetValidationError(f"{n_where}: text must be a string and answer_start an integer")
                    answers.append(Answer(text=answer["text"], answer_start=answer["answer_start"]))
                meta = qa.get("meta")
                if meta is None:
                    origin, template_id, wh_type, score = "real", None, None, None
                else:
                    _expect(meta, {"origin"}, f"{q_where}.meta", optional={"template_id", "wh_type", "score"})
                    origin = meta["origin"]
                    template_id = meta.get("template_id")
                    wh_type = meta.get("wh_type")
                    score = meta.get("score")
                    if score is not None and not isinstance(score, (int, float)):
                        raise DatasetValidationError(f"{q_where}.meta.score: expected a number")
                records.append(
                    QARecord(
                        id=qa["id"],
                        title=title,
                        context=context,
                        question=qa["question"],
                        answers=tuple(answers),
                        origin=origin,
                        template_id=template_id,
                        wh_type=wh_type,
                        score=float(score) if score is not None else None,
                    )
                )

    dataset = QADataset(
        version=DATASET_VERSION if native else COMPAT_VERSION,
        records=tuple(records),
    )
    validate_dataset(dataset)
    return dataset


def write_dataset(dataset: QADataset) -> bytes:
    """Canonical UTF-8 bytes for a dataset.

    Consecutive records sharing (title, context) form one paragraph, and
    consecutive paragraphs sharing a title form one article, so record
    order is exactly preserved on a round trip.
    """
    validate_dataset(dataset)
    articles: list[dict] = []
    for record in dataset.records:
        if not articles or articles[-1]["title"] != record.title:
            articles.append({"title": record.title, "paragraphs": []})
        paragraphs = articles[-1]["paragraphs"]
        if not paragraphs or paragraphs[-1]["context"] != record.context:
            paragraphs.append({"context": record.context, "qas": []})
        meta: dict = {"origin": record.origin}
        if record.template_id is not None:
            meta["template_id"] = record.template_id
        if record.wh_type is not None:
            meta["wh_type"] = record.wh_type
        if record.score is not None:
            meta["score"] = record.score
        paragraphs[-1]["qas"].append(
            {
                "id": record.id,
                "question": record.question,
                "answers": [
                    {"text": answer.text, "answer_start": answer.answer_start}
                    for answer in record.answers
                ],
                "meta": meta,
            }
        )
    payload = {"version": DATASET_VERSION, "data": articles}
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    return (text + "\n").encode("utf-8")


def read_dataset_file(path: str | Path) -> QADataset:
    return read_dataset(Path(path).read_bytes())


def write_dataset_file(dataset: QADataset, path: str | Path) -> None:
    Path(path).write_bytes(write_dataset(dataset))


# ---------------------------------------------------------------------------
# Corpus ingestion


def parse_corpus(text: str, *, lowercase: bool = False) -> list[Document]:
    """Split corpus text into documents and preprocess each one.

    Documents are separated by a line containing only ``---``. A first
    line of the form ``# Some Title`` names the document; the id is
    derived from source order.
    """
    blocks: list[list[str]] = [[]]
    for line in text.splitlines():
        if line.strip() == "---":
            blocks.append([])
        else:
            blocks[-1].append(line)

    documents = []
    ordinal = 0
    for block in blocks:
        body = "\n".join(block)
        if not body.strip():
            continue
        ordinal += 1
        doc_id = f"doc{ordinal:05d}"
        title = doc_id
        lines = block[:]
        for i, line in enumerate(lines):
            if not line.strip():
                continue
            if line.strip().startswith("# "):
                title = line.strip()[2:].strip()
                lines = lines[:i] + lines[i + 1 :]
            break
        documents.append(build_document(doc_id, title, "\n".join(lines), lowercase=lowercase))
    return documents


def read_corpus(path: str | Path, *, lowercase: bool = False) -> list[Document]:
    return parse_corpus(Path(path).read_text(encoding="utf-8"), lowercase=lowercase)


# ---------------------------------------------------------------------------
# Run configuration


@dataclass(frozen=True)
class RunConfig:
    """Effective settings for a pipeline run, after defaulting.

    `defaulted` records which keys were absent from the file, so the
    effective configuration can be echoed faithfully.
    """

    corpus: Path | None = None
    templates: Path | None = None
    gazetteers: Path | None = None
    output: Path | None = None
    min_score: float = 0.5
    max_pairs_per_sentence: int = 4
    seed: int = 42
    lowercase: bool = False
    ratio: float = 0.3
    allow_short: bool = False
    selection: str = "TOP_SCORE"
    defaulted: tuple[str, ...] = ()


_PATH_KEYS = ("corpus", "templates", "gazetteers", "output")
_CONFIG_DEFAULTS = {
    "min_score": 0.5,
    "max_pairs_per_sentence": 4,
    "seed": 42,
    "lowercase": False,
    "ratio": 0.3,
    "allow_short": False,
    "selection": "TOP_SCORE",
}


def _parse_bool(value: str, key: str) -> bool:
    if value.lower() in ("true", "yes", "on", "1"):
        return True
    if value.lower() in ("false", "no", "off", "0"):
        return False
    raise ConfigError(f"{key}: expected true or false, got {value!r}")


def load_config(path: str | Path) -> RunConfig:
    """Parse a ``key = value`` config file; unknown keys are rejected.

    Paths resolve relative to the config file's directory.
    """
    path = Path(path)
    base = path.parent
    values: dict[str, object] = {}
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"line {line_no}: expected 'key = value'")
        if key in values:
            raise ConfigError(f"line {line_no}: duplicate key {key!r}")
        if key in _PATH_KEYS:
            values[key] = (base / value).resolve() if value else None
        elif key == "min_score":
            parsed = float(value)
            if not 0.0 <= parsed <= 1.0:
                raise ConfigError(f"min_score: {parsed} outside [0, 1]")
            values[key] = parsed
        elif key == "max_pairs_per_sentence":
            parsed_int = int(value)
            if parsed_int < 1:
                raise ConfigError(f"max_pairs_per_sentence: {parsed_int} must be >= 1")
            values[key] = parsed_int
        elif key == "seed":
            parsed_int = int(value)
            if not 0 <= parsed_int < 2**64:
                raise ConfigError(f"seed: {parsed_int} outside unsigned 64-bit range")
            values[key] = parsed_int
        elif key == "lowercase":
            values[key] = _parse_bool(value, key)
        elif key == "ratio":
            parsed = float(value)
            if parsed < 0:
                raise ConfigError(f"ratio: {parsed} must be >= 0")
            values[key] = parsed
        elif key == "allow_short":
            values[key] = _parse_bool(value, key)
        elif key == "selection":
            if value not in SELECTION_POLICIES:
                raise ConfigError(f"selection: {value!r} not one of {SELECTION_POLICIES}")
            values[key] = value
        else:
            raise ConfigError(f"line {line_no}: unknown key {key!r}")

    defaulted = tuple(
        sorted(set(list(_CONFIG_DEFAULTS) + list(_PATH_KEYS)) - set(values))
    )
    return RunConfig(defaulted=defaulted, **values)  # type: ignore[arg-type]
