from pathlib import Path

import pytest

from landuse.bundled import DEFAULT_CONFIG, data_path
from landuse.config import KEYS, defaults, dump_config, load_config, parse_config_text
from landuse.errors import ConfigError, InputError
from landuse.features import FeatureConfig


def test_defaults_cover_every_key():
    assert set(defaults()) == set(KEYS)


def test_bundled_config_sets_every_key():
    text = data_path(DEFAULT_CONFIG).read_text()
    assert set(parse_config_text(text)) == set(KEYS)
    cfg = load_config(data_path(DEFAULT_CONFIG))
    assert cfg.seed == 42
    assert cfg.feature_config() == FeatureConfig()


def test_empty_paths_mean_bundled_files():
    cfg = load_config(data_path(DEFAULT_CONFIG))
    assert cfg.path("paths.geojson") == data_path("historic_center.geojson")
    assert cfg.out_dir == Path("landuse_out")
    assert cfg.path("paths.model") == Path("landuse_out/model.json")


def test_parse_values_and_comments():
    got = parse_config_text("# comment\n\nfeatures.ngram_max = 2\nfeatures.use_tfidf = yes\nclassifier.alpha=0.5\n")
    assert got == {"features.ngram_max": 2, "features.use_tfidf": True, "classifier.alpha": 0.5}


@pytest.mark.parametrize(
    "text, message",
    [
        ("features.ngram_max 2", ":1: expected"),
        ("\nbogus.key = 1", ":2: unknown key"),
        ("features.use_tfidf = maybe", "not a boolean"),
        ("classifier.alpha = lots", "bad value for classifier.alpha"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(ConfigError, match=message):
        parse_config_text(text)


def test_relative_paths_follow_the_file(tmp_path):
    f = tmp_path / "sub" / "run.cfg"
    f.parent.mkdir()
    f.write_text("paths.posts = posts.jsonl\npaths.out_dir = /abs/out\n")
    cfg = load_config(f)
    assert cfg.path("paths.posts") == tmp_path / "sub" / "posts.jsonl"
    assert cfg.out_dir == Path("/abs/out")


def test_overrides_win(tmp_path):
    f = tmp_path / "run.cfg"
    f.write_text("split.seed = 1\nfeatures.ngram_max = 2\n")
    cfg = load_config(f, {"split.seed": "7"})
    assert (cfg.seed, cfg["features.ngram_max"]) == (7, 2)
    with pytest.raises(ConfigError):
        load_config(f, {"nope": "1"})


def test_missing_seed_is_an_error():
    with pytest.raises(ConfigError, match="split.seed"):
        load_config().seed


def test_missing_config_file():
    with pytest.raises(InputError):
        load_config("/nonexistent/run.cfg")


def test_bad_eval_average_and_spell_threshold():
    with pytest.raises(ConfigError):
        load_config(None, {"eval.average": "micro"}).eval_options()
    with pytest.raises(ConfigError):
        load_config(None, {"spell.threshold": "1.5"}).resources()


def test_dump_round_trip(tmp_path):
    cfg = load_config(None, {"split.seed": "3", "features.use_tfidf": "true", "paths.posts": "/x/p.jsonl"})
    f = tmp_path / "dumped.cfg"
    f.write_text(dump_config(cfg))
    assert load_config(f).values == cfg.values
