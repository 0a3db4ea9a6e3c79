"""Paths to the data files shipped with the package."""

from __future__ import annotations

from pathlib import Path

from .textprep import DEFAULT_SPELL_THRESHOLD, Resources, load_resources

RESOURCE_FILES = {
    "abbreviations": "abbreviations.tsv",
    "lexicon": "lexicon.tsv",
    "stoplist": "stopwords.txt",
    "suggestions": "suggestions.tsv",
    "vocabulary": "vocabulary.txt",
}
CORPUS_POSTS = "corpus_posts.jsonl"
CORPUS_LABELS = "corpus_labels.jsonl"
APP_POSTS = "app_posts.jsonl"
BLOCKS_GEOJSON = "historic_center.geojson"
DEFAULT_CONFIG = "landuse.cfg"


def data_path(name: str) -> Path:
    return Path(__file__).resolve().parent / "data" / name


def default_resources(spell_threshold: float = DEFAULT_SPELL_THRESHOLD) -> Resources:
    return load_resources(
        **{key: data_path(fname) for key, fname in RESOURCE_FILES.items()},
        spell_threshold=spell_threshold,
    )
