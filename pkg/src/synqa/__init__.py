"""synqa: rule-based synthetic QA-pair generation and dataset mixing."""

from .model import Document, Entity, Sentence, Span, Token, project_span, span_text
from .preprocess import NormalizationReport, build_document, normalize, segment, tokenize
from .analysis import (
    Chunk,
    Fact,
    Gazetteer,
    chunk_phrases,
    extract_facts,
    load_gazetteers,
    recognize_entities,
    tag_pos,
)
from .templates import (
    Binding,
    QuestionTemplate,
    TemplateError,
    TemplateSet,
    instantiate,
    load_template_file,
    match,
    parse_template_file,
    serialize_template_set,
)
from .generation import (
    GenerationConfig,
    QAPair,
    dedupe,
    filter_pairs,
    generate_dataset,
    generate_pairs,
    score_pair,
)
from .mixer import DatasetStats, MixConfig, MixError, compute_stats, mix
from .dataset_io import (
    Answer,
    ConfigError,
    DatasetValidationError,
    QADataset,
    QARecord,
    RunConfig,
    load_config,
    parse_corpus,
    read_corpus,
    read_dataset,
    read_dataset_file,
    write_dataset,
    write_dataset_file,
)

__version__ = "0.1.0"

__all__ = [
    "Answer",
    "Binding",
    "Chunk",
    "ConfigError",
    "DatasetStats",
    "DatasetValidationError",
    "Document",
    "Entity",
    "Fact",
    "Gazetteer",
    "GenerationConfig",
    "MixConfig",
    "MixError",
    "NormalizationReport",
    "QADataset",
    "QAPair",
    "QARecord",
    "QuestionTemplate",
    "RunConfig",
    "Sentence",
    "Span",
    "TemplateError",
    "TemplateSet",
    "Token",
    "build_document",
    "chunk_phrases",
    "compute_stats",
    "dedupe",
    "extract_facts",
    "filter_pairs",
    "generate_dataset",
    "generate_pairs",
    "instantiate",
    "load_config",
    "load_gazetteers",
    "load_template_file",
    "match",
    "mix",
    "normalize",
    "parse_corpus",
    "parse_template_file",
    "project_span",
    "read_corpus",
    "read_dataset",
    "read_dataset_file",
    "recognize_entities",
    "score_pair",
    "segment",
    "serialize_template_set",
    "span_text",
    "tag_pos",
    "tokenize",
    "write_dataset",
    "write_dataset_file",
]
