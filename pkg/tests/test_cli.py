import json
from pathlib import Path

import pytest

from landuse.bundled import data_path
from landuse.cli import main
from landuse.config import load_config
from landuse.geo import load_geojson
from landuse.ingest import RawPost, dedupe_and_filter, load_labels, load_posts, write_jsonl, write_posts
from landuse.pipeline import (
    classify_posts,
    clean_all,
    geofilter,
    labels_to_geojson,
    majority_label,
    prepare_corpus,
    train_model,
)
from landuse.synth import generate
from landuse.textprep import CleanPost

from conftest import SEED

DATA = Path(__file__).parent / "data"


def run_cli(out_dir, *argv):
    return main([*argv, "--paths.out_dir", str(out_dir)])


@pytest.fixture(scope="module")
def full_run(tmp_path_factory):
    out = tmp_path_factory.mktemp("run")
    assert run_cli(out, "run", "--quiet") == 0
    return out


def post(pid, text, lat=-16.398, lon=-71.536):
    return RawPost(pid, "u", text, "2019-04-01T10:00:00Z", lat, lon)


# -- ingest


def test_ingest_counts(tmp_path, capsys):
    texts = [
        "almorzando en el restaurante", "clase en la universidad", "en casa con la familia",
        "misa en la catedral", "trabajando en la oficina", "paseando por el parque",
        "de compras en el mercado",
        "almorzando en el restaurante",  # duplicate
        "hola",  # single word
        "",  # blank
    ]
    src = tmp_path / "in.jsonl"
    write_posts([post(str(k), t) for k, t in enumerate(texts)], src)
    assert run_cli(tmp_path, "ingest", "-i", str(src)) == 0
    assert "7 retained" in capsys.readouterr().out
    assert len(load_posts(tmp_path / "posts.jsonl")) == 7


def test_ingest_empty_file(tmp_path, capsys):
    src = tmp_path / "empty.jsonl"
    src.write_text("")
    assert run_cli(tmp_path, "ingest", "-i", str(src)) == 0
    assert "0 retained" in capsys.readouterr().out


def test_ingest_missing_file(tmp_path, capsys):
    assert run_cli(tmp_path, "ingest", "-i", str(tmp_path / "nope.jsonl")) == 2
    assert "nope.jsonl" in capsys.readouterr().err


def test_quiet_prints_nothing(tmp_path, capsys):
    src = tmp_path / "empty.jsonl"
    src.write_text("")
    assert run_cli(tmp_path, "ingest", "--quiet", "-i", str(src)) == 0
    assert capsys.readouterr().out == ""


# -- preprocess


def test_preprocess_empty_input(tmp_path):
    src = tmp_path / "empty.jsonl"
    src.write_text("")
    assert run_cli(tmp_path, "preprocess", "-i", str(src), "-o", str(tmp_path / "out.jsonl")) == 0
    assert (tmp_path / "out.jsonl").read_text() == ""


def test_preprocess_malformed_resource(tmp_path, capsys):
    lexicon = tmp_path / "lexicon.tsv"
    lexicon.write_text("casa\tcasa\tNC\nroto\n")
    src = tmp_path / "in.jsonl"
    write_posts([post("1", "en casa")], src)
    code = run_cli(tmp_path, "preprocess", "-i", str(src), "--paths.lexicon", str(lexicon))
    assert code == 2
    assert "lexicon.tsv:2" in capsys.readouterr().err


def test_preprocess_golden(full_run):
    assert (full_run / "clean.jsonl").read_bytes() == (DATA / "golden_clean.jsonl").read_bytes()


# -- geofilter


def test_geofilter_funnel(full_run):
    assert len((full_run / "clean.jsonl").read_text().splitlines()) == 20
    assert len((full_run / "geofiltered.jsonl").read_text().splitlines()) == 9


def test_geofilter_bad_geojson(tmp_path, capsys):
    bad = tmp_path / "bad.geojson"
    bad.write_text('{"type": "FeatureCollection", "features": []}')
    src = tmp_path / "clean.jsonl"
    src.write_text("")
    assert run_cli(tmp_path, "geofilter", "-i", str(src), "--paths.geojson", str(bad)) == 2
    assert "no region" in capsys.readouterr().err


def test_geofilter_empty_region(tmp_path, capsys):
    far = [[[10, 10], [11, 10], [11, 11], [10, 11], [10, 10]]]
    fc = {"type": "FeatureCollection", "features": [
        {"type": "Feature", "properties": {"role": "region"}, "geometry": {"type": "Polygon", "coordinates": far}}
    ]}
    geo = tmp_path / "far.geojson"
    geo.write_text(json.dumps(fc))
    code = run_cli(tmp_path, "geofilter", "-i", str(DATA / "golden_clean.jsonl"), "--paths.geojson", str(geo))
    assert code == 0
    assert "0 in region, 0 in blocks" in capsys.readouterr().out


# -- train


def test_train_model_is_deterministic(tmp_path):
    for name in ("a", "b"):
        assert run_cli(tmp_path / name, "train", "--quiet", "--no-figures") == 0
    assert (tmp_path / "a" / "model.json").read_bytes() == (tmp_path / "b" / "model.json").read_bytes()


def test_train_sweep_has_ten_rows(tmp_path):
    assert run_cli(tmp_path, "train", "--quiet", "--sweep", "--no-figures") == 0
    lines = (tmp_path / "report" / "sweep.tsv").read_text().splitlines()
    assert len(lines) == 11  # header + ten configurations
    assert not (tmp_path / "report" / "sweep.png").exists()


def test_train_zero_alpha(tmp_path, capsys):
    assert run_cli(tmp_path, "train", "--classifier.alpha", "0") == 3
    assert "alpha" in capsys.readouterr().err


def test_train_singleton_class(tmp_path, capsys):
    labels = [json.loads(line) for line in data_path("corpus_labels.jsonl").read_text().splitlines()]
    seen = False
    kept = []
    for rec in labels:
        if rec["sub"] == "UnbuiltLand":
            if seen:
                continue
            seen = True
        kept.append(rec)
    f = tmp_path / "labels.jsonl"
    write_jsonl(kept, f)
    assert run_cli(tmp_path, "train", "--paths.corpus_labels", str(f)) == 3
    assert "UnbuiltLand" in capsys.readouterr().err


def test_train_needs_a_seed(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("features.ngram_max = 3\n")
    assert run_cli(tmp_path, "train", "--config", str(cfg)) == 3
    assert "split.seed" in capsys.readouterr().err


def test_bad_config_key_in_file(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("nonsense = 1\n")
    assert run_cli(tmp_path, "train", "--config", str(cfg)) == 3


# -- classify


def test_classify_golden_and_conservation(full_run):
    rows = (full_run / "labeled.jsonl").read_text().splitlines()
    assert len(rows) == len((full_run / "geofiltered.jsonl").read_text().splitlines())
    assert (full_run / "labeled.jsonl").read_bytes() == (DATA / "golden_labeled.jsonl").read_bytes()


def test_classify_gibberish(full_run, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    docs = [
        CleanPost(f"g{k}", words, words, ("NC",) * len(words), (-16.398, -71.536))
        for k, words in enumerate([("xqzt", "bvvk"), ("plorf",), ("zzyzx", "qwrt", "mnbv")])
    ]
    src = tmp_path / "gib.jsonl"
    write_jsonl((d.to_json() for d in docs), src)
    out = tmp_path / "gib_labeled.jsonl"
    code = main(["classify", "--quiet", "-i", str(src), "-o", str(out),
                 "--paths.model", str(full_run / "model.json")])
    assert code == 0
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(rows) == 3
    assert {r["label"] for r in rows} == {"NonClassified"}
    assert not (tmp_path / "landuse_out").exists()  # explicit -i/-o touch nothing else


def test_classify_model_config_mismatch(full_run, capsys):
    code = run_cli(full_run, "classify", "--features.ngram_max", "2")
    assert code == 3
    assert "trained with" in capsys.readouterr().err


def test_classify_missing_model(tmp_path):
    assert run_cli(tmp_path, "classify", "-i", str(DATA / "golden_clean.jsonl")) == 2


def test_classify_corrupt_model(tmp_path):
    model = tmp_path / "m.json"
    model.write_text("{}")
    code = run_cli(tmp_path, "classify", "-i", str(DATA / "golden_clean.jsonl"), "--paths.model", str(model))
    assert code == 3


# -- export


def test_majority_rules():
    assert majority_label(["Commercial"] * 3 + ["Residential"]) == "Commercial"
    assert majority_label([]) is None
    assert majority_label(["Commercial", "Residential"]) == "NonClassified"


def test_export_block_majority():
    blocks = load_geojson(data_path("historic_center.geojson"))
    rows = [
        {"id": str(k), "label": label, "sub_label": None, "confidence": 0.9, "lat": -16.4, "lon": -71.54, "block_id": "B01"}
        for k, label in enumerate(["Commercial"] * 3 + ["Residential"])
    ]
    fc = labels_to_geojson(rows, blocks)
    by_id = {f["properties"]["block_id"]: f["properties"] for f in fc["features"] if f["geometry"]["type"] == "Polygon"}
    assert by_id["B01"]["predicted_label"] == "Commercial" and by_id["B01"]["post_count"] == 4
    assert by_id["B02"]["predicted_label"] is None and by_id["B02"]["post_count"] == 0


def test_export_is_rfc7946(full_run):
    fc = json.loads((full_run / "map.geojson").read_text())
    assert fc["type"] == "FeatureCollection"
    points = [f for f in fc["features"] if f["geometry"]["type"] == "Point"]
    polygons = [f for f in fc["features"] if f["geometry"]["type"] == "Polygon"]
    assert len(points) == 9 and len(polygons) == 56
    for f in fc["features"]:
        assert f["type"] == "Feature" and isinstance(f["properties"], dict)
    for f in points:
        lon, lat = f["geometry"]["coordinates"]
        assert -180 <= lon <= 180 and -90 <= lat <= 90
        assert {"label", "confidence"} <= set(f["properties"])
    for f in polygons:
        for ring in f["geometry"]["coordinates"]:
            assert len(ring) >= 4 and ring[0] == ring[-1]
        exterior = f["geometry"]["coordinates"][0]
        # right-hand rule: exterior rings are counterclockwise (positive shoelace area)
        area = sum(x1 * y2 - x2 * y1 for (x1, y1), (x2, y2) in zip(exterior, exterior[1:]))
        assert area > 0
        assert {"cadastre_label", "predicted_label", "post_count"} <= set(f["properties"])


# -- whole pipeline


def test_run_is_byte_deterministic(full_run, tmp_path):
    assert run_cli(tmp_path, "run", "--quiet") == 0
    for name in ("posts.jsonl", "clean.jsonl", "geofiltered.jsonl", "model.json", "labeled.jsonl",
                 "map.geojson", "report/metrics.json", "report/metrics.txt", "report/confusion.png"):
        assert (tmp_path / name).read_bytes() == (full_run / name).read_bytes(), name


def test_cli_matches_library(full_run, resources):
    posts = dedupe_and_filter(load_posts(data_path("app_posts.jsonl")))
    docs = [d for d in clean_all(posts, resources) if d.tokens]
    funnel = geofilter(docs, load_geojson(data_path("historic_center.geojson")))
    corpus = prepare_corpus(
        load_posts(data_path("corpus_posts.jsonl")), load_labels(data_path("corpus_labels.jsonl")), resources, 0.2, SEED
    )
    cfg = load_config(data_path("landuse.cfg"))
    model, gate = train_model(corpus.train, cfg.feature_config(), cfg.classifier_settings(), corpus.other)
    rows = classify_posts(model, gate, funnel.assigned)
    got = [json.loads(line) for line in (full_run / "labeled.jsonl").read_text().splitlines()]
    assert got == rows


def test_bundled_corpus_matches_generator():
    posts, labels = generate()
    on_disk = [json.loads(line) for line in data_path("corpus_posts.jsonl").read_text().splitlines()]
    assert [p.to_json() for p in posts] == on_disk
    assert labels == [json.loads(line) for line in data_path("corpus_labels.jsonl").read_text().splitlines()]


def test_help_lists_verbs(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    for verb in ("ingest", "preprocess", "geofilter", "train", "classify", "export-geojson", "run"):
        assert verb in out
