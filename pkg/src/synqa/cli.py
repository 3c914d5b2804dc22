"""Command-line surface: generate | mix | stats | validate.

Exit codes: 0 success, 1 validation failure (bad template/config/dataset
content, short synthetic pool), 2 usage error (bad or missing flags),
3 I/O error (unreadable or unwritable paths). Summaries and diagnostics
go to stderr; dataset bytes are only ever written to the named output
file so canonical-byte guarantees hold. Tables from `stats` go to stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import resources
from .analysis import load_gazetteers
from .dataset_io import (
    ConfigError,
    DatasetValidationError,
    QADataset,
    RunConfig,
    load_config,
    read_corpus,
    read_dataset_file,
    write_dataset,
)
from .generation import GenerationConfig, generate_dataset
from .mixer import MixConfig, MixError, compute_stats, mix
from .templates import TemplateError, load_template_file

OK, FAIL_VALIDATION, FAIL_USAGE, FAIL_IO = 0, 1, 2, 3


def _say(message: str) -> None:
    print(message, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="synqa",
        description="Generate synthetic QA pairs from text and mix them with real datasets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="produce a synthetic QA dataset from a corpus")
    gen.add_argument("--corpus", type=Path, help="plain-text corpus (documents separated by ---)")
    gen.add_argument("--templates", type=Path, help="template DSL file (default: shipped set)")
    gen.add_argument("--gazetteers", type=Path, help="directory of <label>.txt gazetteer files")
    gen.add_argument("--out", type=Path, help="output dataset path")
    gen.add_argument("--min-score", type=float, default=None, help="quality threshold (default 0.5)")
    gen.add_argument("--max-per-sentence", type=int, default=None, help="pair cap per sentence (default 4; 0 disables)")
    gen.add_argument("--seed", type=int, default=None, help="generation seed (default 42)")
    gen.add_argument("--lowercase", action="store_true", default=None, help="lowercase during normalization")
    gen.add_argument("--config", type=Path, help="key=value config file; flags override it")
    gen.add_argument("--workers", type=int, default=1, help="parallel document workers (same bytes for any value)")

    mx = sub.add_parser("mix", help="combine real and synthetic datasets at a ratio")
    mx.add_argument("--real", type=Path, required=True, help="real dataset (synqa or SQuAD v1.1)")
    mx.add_argument("--synthetic", type=Path, required=True, help="synthetic dataset")
    mx.add_argument("--ratio", type=float, default=0.3, help="synthetic-to-real ratio (default 0.3)")
    mx.add_argument("--seed", type=int, default=42, help="shuffle/selection seed")
    mx.add_argument("--allow-short", action="store_true", help="accept a synthetic pool smaller than requested")
    mx.add_argument("--selection", choices=("TOP_SCORE", "SEEDED_UNIFORM"), default="TOP_SCORE")
    mx.add_argument("--out", type=Path, required=True, help="output dataset path")

    st = sub.add_parser("stats", help="print dataset statistics")
    st.add_argument("--dataset", type=Path, required=True)
    st.add_argument("--format", choices=("table", "tsv"), default="table")

    val = sub.add_parser("validate", help="check schema and answer spans")
    val.add_argument("--dataset", type=Path, required=True)

    return parser


def cmd_generate(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    config = load_config(args.config) if args.config else RunConfig()
    corpus = args.corpus if args.corpus is not None else config.corpus
    templates = args.templates if args.templates is not None else config.templates
    gazetteers_dir = args.gazetteers if args.gazetteers is not None else config.gazetteers
    out = args.out if args.out is not None else config.output
    min_score = args.min_score if args.min_score is not None else config.min_score
    if args.max_per_sentence is None:
        max_per: int | None = config.max_pairs_per_sentence
    else:
        max_per = None if args.max_per_sentence == 0 else args.max_per_sentence
    seed = args.seed if args.seed is not None else config.seed
    lowercase = args.lowercase if args.lowercase is not None else config.lowercase

    if corpus is None:
        parser.error("generate: --corpus is required (flag or config file)")
    if out is None:
        parser.error("generate: --out is required (flag or config file)")
    if not 0.0 <= min_score <= 1.0:
        parser.error(f"--min-score must be in [0, 1], got {min_score}")
    if max_per is not None and max_per < 0:
        parser.error("--max-per-sentence must be >= 0")
    if not 0 <= seed < 2**64:
        parser.error("--seed must fit in unsigned 64 bits")
    if args.workers < 1:
        parser.error("--workers must be >= 1")

    documents = read_corpus(corpus, lowercase=lowercase)
    template_set = load_template_file(templates or resources.default_template_path())
    gazetteers = load_gazetteers(gazetteers_dir) if gazetteers_dir else []

    gen_config = GenerationConfig(
        min_score=min_score,
        max_pairs_per_sentence=max_per,
        seed=seed,
        lowercase=lowercase,
    )
    dataset, summary = generate_dataset(
        documents, template_set, gazetteers, gen_config, workers=args.workers
    )
    out.write_bytes(write_dataset(dataset))
    _say(
        f"documents={summary.documents} sentences={summary.sentences} "
        f"facts={summary.facts} pairs_emitted={summary.pairs_emitted} "
        f"pairs_filtered={summary.pairs_filtered} written={len(dataset.records)}"
    )
    return OK


def cmd_mix(args: argparse.Namespace) -> int:
    real = read_dataset_file(args.real)
    synthetic = read_dataset_file(args.synthetic)
    config = MixConfig(
        ratio=args.ratio,
        seed=args.seed,
        allow_short=args.allow_short,
        selection=args.selection,
    )
    mixed = mix(real, synthetic, config)
    args.out.write_bytes(write_dataset(mixed))
    stats = compute_stats(mixed)
    realized = "n/a" if stats.realized_ratio is None else f"{stats.realized_ratio}"
    _say(
        f"real={stats.real_count} synthetic={stats.synthetic_count} "
        f"total={stats.total} realized_ratio={realized}"
    )
    return OK


def _stats_rows(dataset: QADataset) -> list[tuple[str, str]]:
    stats = compute_stats(dataset)
    rows = [
        ("total", str(stats.total)),
        ("synthetic_count", str(stats.synthetic_count)),
        ("real_count", str(stats.real_count)),
        ("realized_ratio", "n/a" if stats.realized_ratio is None else str(stats.realized_ratio)),
    ]
    for wh, count in stats.per_wh_type.items():
        rows.append((f"wh_{wh}", str(count)))
    for template_id, count in stats.per_template.items():
        rows.append((f"template_{template_id}", str(count)))
    for bucket, count in stats.answer_length_histogram.items():
        rows.append((f"answer_len_{bucket}", str(count)))
    return rows


def cmd_stats(args: argparse.Namespace) -> int:
    dataset = read_dataset_file(args.dataset)
    for key, value in _stats_rows(dataset):
        if args.format == "tsv":
            print(f"{key}\t{value}")
        else:
            print(f"{key:<24} {value}")
    return OK


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        dataset = read_dataset_file(args.dataset)
    except DatasetValidationError as exc:
        print(f"INVALID: {exc}")
        return FAIL_VALIDATION
    if dataset.version != "synqa-1.0":
        print(f"OK ({dataset.version}): {len(dataset.records)} pairs, read as SQuAD-compatible input")
    else:
        print(f"OK: {len(dataset.records)} pairs")
    return OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else OK

    try:
        if args.command == "generate":
            return cmd_generate(args, parser)
        if args.command == "mix":
            return cmd_mix(args)
        if args.command == "stats":
            return cmd_stats(args)
        if args.command == "validate":
            return cmd_validate(args)
        parser.error(f"unknown command {args.command!r}")
    except SystemExit as exc:  # parser.error inside command handling
        return int(exc.code) if exc.code is not None else OK
    except (TemplateError, ConfigError, DatasetValidationError, MixError, UnicodeDecodeError) as exc:
        _say(f"error: {exc}")
        return FAIL_VALIDATION
    except OSError as exc:
        _say(f"i/o error: {exc}")
        return FAIL_IO
    return FAIL_USAGE


if __name__ == "__main__":
    sys.exit(main())
