"""Run configuration: a flat ``section.key = value`` text file.

Every key can also be given on the command line as ``--section.key VALUE``;
command-line values win. Relative paths in a file are resolved against the
file's directory, relative paths on the command line against the working
directory. An empty path value means "use the bundled data file".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Mapping, Optional

from . import bundled
from .classifier import DEFAULT_ALPHA, DEFAULT_THRESHOLD, DEFAULT_TOP_I
from .errors import ConfigError, InputError
from .features import FeatureConfig
from .pipeline import ClassifierSettings
from .textprep import DEFAULT_SPELL_THRESHOLD, Resources, load_resources


DEFAULT_OUT_DIR = "landuse_out"


def _parse_bool(text: str) -> bool:
    value = text.strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_seed(text: str) -> Optional[int]:
    return int(text) if text.strip() else None


@dataclass(frozen=True)
class Key:
    parse: Callable[[str], Any]
    default: Any
    is_path: bool = False
    help: str = ""


_BUNDLED_PATHS = {
    "paths.corpus_posts": bundled.CORPUS_POSTS,
    "paths.corpus_labels": bundled.CORPUS_LABELS,
    "paths.posts": bundled.APP_POSTS,
    "paths.geojson": bundled.BLOCKS_GEOJSON,
    **{f"paths.{k}": v for k, v in bundled.RESOURCE_FILES.items()},
}

KEYS: dict[str, Key] = {
    **{name: Key(str, "", True, "input file (empty: bundled)") for name in _BUNDLED_PATHS},
    "paths.model": Key(str, "", True, "model file (empty: <out_dir>/model.json)"),
    "paths.out_dir": Key(str, "", True, f"output directory (empty: ./{DEFAULT_OUT_DIR})"),
    "features.ngram_min": Key(int, 1),
    "features.ngram_max": Key(int, 3),
    "features.use_lemmas": Key(_parse_bool, True),
    "features.use_tfidf": Key(_parse_bool, False),
    "features.include_pos_ngrams": Key(_parse_bool, False),
    "features.pos_ngram_min": Key(int, 2),
    "features.pos_ngram_max": Key(int, 3),
    "features.min_df": Key(int, 1),
    "classifier.alpha": Key(float, DEFAULT_ALPHA),
    "classifier.threshold": Key(float, DEFAULT_THRESHOLD),
    "classifier.i": Key(int, DEFAULT_TOP_I, help="top-i PoS sequences per corpus"),
    "classifier.pos_ngram_min": Key(int, 2),
    "classifier.pos_ngram_max": Key(int, 3),
    "split.test_fraction": Key(float, 0.2),
    "split.seed": Key(_parse_seed, None, help="required for training"),
    "spell.threshold": Key(float, DEFAULT_SPELL_THRESHOLD),
    "eval.subcategories": Key(_parse_bool, False),
    "eval.include_nonclassified": Key(_parse_bool, False),
    "eval.average": Key(str, "macro", help="macro or weighted"),
    "eval.apply_threshold": Key(_parse_bool, False, help="apply the cut-off on held-out posts"),
}


def _convert(name: str, raw: str, where: str) -> Any:
    try:
        return KEYS[name].parse(raw.strip())
    except ValueError as exc:
        raise ConfigError(f"{where}: bad value for {name}: {exc}") from None


@dataclass(frozen=True)
class RunConfig:
    values: Mapping[str, Any] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Any:
        return self.values[name]

    def path(self, name: str) -> Path:
        value = self.values[name]
        if value:
            return Path(value)
        if name in _BUNDLED_PATHS:
            return bundled.data_path(_BUNDLED_PATHS[name])
        if name == "paths.model":
            return self.out_dir / "model.json"
        raise ConfigError(f"{name} is not set")

    @property
    def out_dir(self) -> Path:
        return Path(self.values["paths.out_dir"] or DEFAULT_OUT_DIR)

    @property
    def seed(self) -> int:
        seed = self.values["split.seed"]
        if seed is None:
            raise ConfigError("split.seed is not set (use --seed or the config file)")
        return seed

    def feature_config(self) -> FeatureConfig:
        return FeatureConfig(
            ngram_min=self["features.ngram_min"],
            ngram_max=self["features.ngram_max"],
            use_lemmas=self["features.use_lemmas"],
            use_tfidf=self["features.use_tfidf"],
            include_pos_ngrams=self["features.include_pos_ngrams"],
            pos_ngram_min=self["features.pos_ngram_min"],
            pos_ngram_max=self["features.pos_ngram_max"],
            min_df=self["features.min_df"],
        )

    def classifier_settings(self) -> ClassifierSettings:
        return ClassifierSettings(
            alpha=self["classifier.alpha"],
            threshold=self["classifier.threshold"],
            top_i=self["classifier.i"],
            pos_ngram_min=self["classifier.pos_ngram_min"],
            pos_ngram_max=self["classifier.pos_ngram_max"],
        )

    def eval_options(self) -> dict:
        average = self["eval.average"]
        if average not in ("macro", "weighted"):
            raise ConfigError(f"eval.average must be macro or weighted, got {average!r}")
        return {
            "subcategories": self["eval.subcategories"],
            "include_nonclassified": self["eval.include_nonclassified"],
            "average": average,
            "apply_threshold": self["eval.apply_threshold"],
        }

    def resources(self) -> Resources:
        threshold = self["spell.threshold"]
        if not 0.0 < threshold <= 1.0:
            raise ConfigError(f"spell.threshold must be in (0, 1], got {threshold}")
        return load_resources(
            abbreviations=self.path("paths.abbreviations"),
            lexicon=self.path("paths.lexicon"),
            stoplist=self.path("paths.stoplist"),
            suggestions=self.path("paths.suggestions"),
            vocabulary=self.path("paths.vocabulary"),
            spell_threshold=threshold,
        )


def defaults() -> dict[str, Any]:
    return {name: key.default for name, key in KEYS.items()}


def parse_config_text(text: str, base_dir: Path | None = None, source: str = "<config>") -> dict[str, Any]:
    """Parse config text into a {key: value} dict of the keys it sets."""
    out: dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'section.key = value'")
        name, raw = (part.strip() for part in stripped.split("=", 1))
        if name not in KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {name!r}")
        value = _convert(name, raw, f"{source}:{lineno}")
        if KEYS[name].is_path and value and base_dir is not None and not Path(value).is_absolute():
            value = str(base_dir / value)
        out[name] = value
    return out


def load_config(
    path: str | Path | None = None, overrides: Mapping[str, str] | None = None
) -> RunConfig:
    """Defaults, then the file (if any), then string-valued overrides."""
    values = defaults()
    if path is not None:
        p = Path(path)
        try:
            text = p.read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read config: {exc.strerror}", str(p)) from None
        values.update(parse_config_text(text, p.resolve().parent, str(p)))
    for name, raw in (overrides or {}).items():
        if name not in KEYS:
            raise ConfigError(f"unknown key {name!r}")
        values[name] = _convert(name, raw, "command line")
    return RunConfig(values)


def dump_config(config: RunConfig) -> str:
    lines = []
    for name in KEYS:
        value = config.values[name]
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif value is None:
            text = ""
        else:
            text = str(value)
        lines.append(f"{name} = {text}")
    return "\n".join(lines) + "\n"
