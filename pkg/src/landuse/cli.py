"""Command-line interface: ``landuse <verb> [options]``.

Exit codes: 0 success, 2 input or resource error, 3 configuration or
training error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import bundled
from .classifier import load_model, save_model
from .config import KEYS, RunConfig, load_config
from .errors import ConfigError, InputError, LanduseError
from .geo import load_geojson
from .ingest import dedupe_and_filter, iter_jsonl, load_labels, load_posts, write_jsonl, write_posts
from .pipeline import (
    SWEEP,
    clean_all,
    evaluate,
    geofilter,
    classify_posts,
    label_counts,
    labels_to_geojson,
    prepare_corpus,
    sweep,
    train_model,
)
from .report import write_evaluation, write_sweep
from .textprep import CleanPost

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3

# default file names inside the output directory
POSTS_FILE = "posts.jsonl"
CLEAN_FILE = "clean.jsonl"
GEO_FILE = "geofiltered.jsonl"
LABELED_FILE = "labeled.jsonl"
MAP_FILE = "map.geojson"
REPORT_DIR = "report"


@dataclass
class Context:
    config: RunConfig
    quiet: bool

    def say(self, msg: str) -> None:
        if not self.quiet:
            print(msg)

    def warn(self, msg: str) -> None:
        if not self.quiet:
            print(f"warning: {msg}", file=sys.stderr)

    def out(self, name: str) -> Path:
        return self.config.out_dir / name


def _pick(given: Optional[str], default: Path) -> Path:
    return Path(given) if given else default


def _target(given: Optional[str], default: Path) -> Path:
    """Output path; its directory is created on demand."""
    path = _pick(given, default)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def read_clean(path: Path) -> list[tuple[CleanPost, Optional[str]]]:
    rows = []
    for lineno, obj in iter_jsonl(path):
        try:
            rows.append((CleanPost.from_json(obj), obj.get("block_id")))
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise InputError(f"not a cleaned post ({exc})", str(path), lineno) from None
    return rows


def clean_row(doc: CleanPost, block_id: Optional[str] = None) -> dict:
    row = doc.to_json()
    if block_id is not None:
        row["block_id"] = block_id
    return row


# --------------------------------------------------------------------------
# verbs


def cmd_ingest(ctx: Context, args: argparse.Namespace) -> int:
    src = _pick(args.input, ctx.config.path("paths.posts"))
    posts = load_posts(src)  # rejected records are logged as warnings
    kept = dedupe_and_filter(posts)
    dst = _target(args.output, ctx.out(POSTS_FILE))
    write_posts(kept, dst)
    ctx.say(f"ingest: {len(posts)} read, {len(kept)} retained, {len(posts) - len(kept)} removed -> {dst}")
    return EXIT_OK


def cmd_preprocess(ctx: Context, args: argparse.Namespace) -> int:
    src = _pick(args.input, ctx.out(POSTS_FILE))
    posts = load_posts(src)
    docs = clean_all(posts, ctx.config.resources())
    kept = [d for d in docs if d.tokens]
    dst = _target(args.output, ctx.out(CLEAN_FILE))
    write_jsonl((clean_row(d) for d in kept), dst)
    ctx.say(f"preprocess: {len(kept)} cleaned, {len(docs) - len(kept)} empty after cleaning -> {dst}")
    return EXIT_OK


def cmd_geofilter(ctx: Context, args: argparse.Namespace) -> int:
    src = _pick(args.input, ctx.out(CLEAN_FILE))
    docs = [d for d, _ in read_clean(src)]
    blocks = load_geojson(ctx.config.path("paths.geojson"))
    funnel = geofilter(docs, blocks)
    dst = _target(args.output, ctx.out(GEO_FILE))
    write_jsonl((clean_row(d, b) for d, b in funnel.assigned), dst)
    ctx.say(
        f"geofilter: {len(docs)} posts, {len(funnel.in_region)} in region, "
        f"{len(funnel.assigned)} in blocks -> {dst}"
    )
    return EXIT_OK


def cmd_train(ctx: Context, args: argparse.Namespace) -> int:
    cfg = ctx.config
    settings = cfg.classifier_settings()
    features = cfg.feature_config()
    eval_opts = cfg.eval_options()
    posts = load_posts(cfg.path("paths.corpus_posts"))
    labels = load_labels(cfg.path("paths.corpus_labels"))
    corpus = prepare_corpus(posts, labels, cfg.resources(), cfg["split.test_fraction"], cfg.seed)
    model, pos_filter = train_model(corpus.train, features, settings, corpus.other)
    if pos_filter is None:
        ctx.warn("no NonClassified posts in the corpus labels; PoS location filter disabled")
    model_path = cfg.path("paths.model")
    model_path.parent.mkdir(parents=True, exist_ok=True)
    save_model(model, pos_filter, model_path)
    ev = evaluate(model, corpus.test, **eval_opts)
    report_dir = _pick(args.report_dir, cfg.out_dir / REPORT_DIR)
    write_evaluation(ev, describe(features), report_dir, figures=not args.no_figures)
    r = ev.report
    ctx.say(
        f"train: {len(corpus.train)} train, {len(corpus.test)} test, {len(corpus.other)} non-location; "
        f"accuracy {r.accuracy:.3f}, F1 {r.macro_f1:.3f} -> {model_path}"
    )
    if args.sweep:
        rows = sweep(corpus, settings, SWEEP, min_df=features.min_df, **eval_opts)
        write_sweep(rows, report_dir, figures=not args.no_figures)
        for row in rows:
            rr = row.evaluation.report
            ctx.say(f"  {row.name:<24} accuracy {rr.accuracy:.3f}  F1 {rr.macro_f1:.3f}")
    ctx.say(f"report -> {report_dir}")
    return EXIT_OK


def describe(config) -> str:
    if config.ngram_min == config.ngram_max:
        grams = {1: "Unigram", 2: "Bigram", 3: "Trigram"}.get(config.ngram_min, f"{config.ngram_min}-gram")
    else:
        grams = f"N-gram ({','.join(str(n) for n in range(config.ngram_min, config.ngram_max + 1))})"
    parts = [grams]
    if config.use_tfidf:
        parts.append("TF-IDF")
    if config.include_pos_ngrams:
        parts.append("PoS")
    if config.use_lemmas:
        parts.append("lemma")
    return " / ".join(parts)


def cmd_classify(ctx: Context, args: argparse.Namespace) -> int:
    src = _pick(args.input, ctx.out(GEO_FILE))
    posts = read_clean(src)
    model_path = ctx.config.path("paths.model")
    if not model_path.exists():
        raise InputError("model file not found", str(model_path))
    model, pos_filter = load_model(model_path)
    if model.config != ctx.config.feature_config():
        raise ConfigError(
            f"model {model_path} was trained with {model.config.to_json()}, "
            f"configuration asks for {ctx.config.feature_config().to_json()}"
        )
    rows = classify_posts(model, pos_filter, posts)
    dst = _target(args.output, ctx.out(LABELED_FILE))
    write_jsonl(rows, dst)
    counts = label_counts(rows)
    summary = ", ".join(f"{k} {v}" for k, v in counts.items())
    ctx.say(f"classify: {len(rows)} posts: {summary} -> {dst}")
    return EXIT_OK


def cmd_export_geojson(ctx: Context, args: argparse.Namespace) -> int:
    src = _pick(args.input, ctx.out(LABELED_FILE))
    rows = [obj for _, obj in iter_jsonl(src)]
    blocks = load_geojson(ctx.config.path("paths.geojson"))
    dst = _target(args.output, ctx.out(MAP_FILE))
    doc = labels_to_geojson(rows, blocks)
    dst.write_text(json.dumps(doc, ensure_ascii=False, indent=1) + "\n", encoding="utf-8")
    ctx.say(f"export-geojson: {len(rows)} posts, {len(blocks.blocks)} blocks -> {dst}")
    return EXIT_OK


def cmd_run(ctx: Context, args: argparse.Namespace) -> int:
    """ingest -> preprocess -> geofilter -> train -> classify -> export-geojson."""
    for verb in (cmd_ingest, cmd_preprocess, cmd_geofilter, cmd_train, cmd_classify, cmd_export_geojson):
        step = argparse.Namespace(
            input=None, output=None, sweep=args.sweep, report_dir=None, no_figures=args.no_figures
        )
        verb(ctx, step)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument parsing


def _common_options(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a subcommand's unset flag from clobbering the top-level one
    s = argparse.SUPPRESS
    parser.add_argument("--config", default=s, help="config file (default: the bundled landuse.cfg)")
    parser.add_argument("--seed", type=int, default=s, help="same as --split.seed")
    parser.add_argument("--quiet", action="store_true", default=s, help="print nothing on success")
    group = parser.add_argument_group("configuration keys")
    for name, key in KEYS.items():
        group.add_argument(f"--{name}", dest=name, metavar="VALUE", default=s, help=key.help or None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="landuse", description="Land-use identification from geo-tagged posts."
    )
    _common_options(parser)
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    def verb(name: str, func: Callable, help: str, io: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help, description=help)
        _common_options(p)
        if io:
            p.add_argument("-i", "--input", help="input file (default: from the output directory)")
            p.add_argument("-o", "--output", help="output file (default: in the output directory)")
        p.set_defaults(func=func)
        return p

    verb("ingest", cmd_ingest, "load posts, drop duplicates, blanks, single words and numbers")
    verb("preprocess", cmd_preprocess, "clean, tokenize, lemmatize and tag posts")
    verb("geofilter", cmd_geofilter, "keep posts inside the region and assign them to blocks")
    train = verb("train", cmd_train, "train and evaluate the classifier on the labeled corpus", io=False)
    train.add_argument("--report-dir", help="report directory (default: <out_dir>/report)")
    run = verb("run", cmd_run, "run every stage on the configured inputs", io=False)
    for p in (train, run):
        p.add_argument("--sweep", action="store_true", help="also evaluate the ten feature configurations")
        p.add_argument("--no-figures", action="store_true", help="skip PNG figures")
    verb("classify", cmd_classify, "label geofiltered posts with a trained model")
    verb("export-geojson", cmd_export_geojson, "write labeled posts and blocks as GeoJSON")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    overrides = {name: getattr(args, name) for name in KEYS if hasattr(args, name)}
    if hasattr(args, "seed"):
        overrides["split.seed"] = str(args.seed)
    path = getattr(args, "config", None) or bundled.data_path(bundled.DEFAULT_CONFIG)
    return load_config(path, overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    quiet = bool(getattr(args, "quiet", False))
    logging.basicConfig(level=logging.ERROR if quiet else logging.WARNING, format="%(message)s")
    try:
        ctx = Context(config_from_args(args), quiet)
        return args.func(ctx, args)
    except InputError as exc:
        print(f"landuse: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except LanduseError as exc:  # configuration, training or model-format problem
        print(f"landuse: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"landuse: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
