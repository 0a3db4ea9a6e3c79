"""In-process orchestration: corpus preparation, training, evaluation,
feature sweeps and application-data classification."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .classifier import (
    DEFAULT_ALPHA,
    DEFAULT_THRESHOLD,
    DEFAULT_TOP_I,
    MnbModel,
    PosSequenceFilter,
    PredictionResult,
    classify_pipeline,
    fit_pos_filter,
    predict,
    train_mnb,
)
from .evaluation import ConfusionMatrix, MetricsReport, confusion, metrics
from .features import FeatureConfig, fit_vocabulary, vectorize
from .geo import BlockMap, assign_blocks, filter_by_region, polygon_to_geojson
from .ingest import LabeledPost, RawPost, attach_labels, dedupe_and_filter, split_corpus
from .taxonomy import NON_CLASSIFIED, PARENTS, SUB_TO_PARENT, SUBS, LandUseClass, Parent, Sub
from .textprep import CleanPost, Resources, preprocess


@dataclass(frozen=True)
class ClassifierSettings:
    alpha: float = DEFAULT_ALPHA
    threshold: float = DEFAULT_THRESHOLD
    top_i: int = DEFAULT_TOP_I
    pos_ngram_min: int = 2
    pos_ngram_max: int = 3


@dataclass(frozen=True)
class LabeledDoc:
    doc: CleanPost
    sub: Sub

    @property
    def parent(self) -> Parent:
        return SUB_TO_PARENT[self.sub]


@dataclass(frozen=True)
class PreparedCorpus:
    train: tuple[LabeledDoc, ...]
    test: tuple[LabeledDoc, ...]
    other: tuple[CleanPost, ...]  # non-location posts for the PoS filter


# Feature rows compared in the sweep: (row name, feature config).
SWEEP: tuple[tuple[str, FeatureConfig], ...] = (
    ("TF-IDF", FeatureConfig(1, 1, use_lemmas=False, use_tfidf=True)),
    ("TF-IDF / lemma", FeatureConfig(1, 1, use_lemmas=True, use_tfidf=True)),
    ("Unigram", FeatureConfig(1, 1, use_lemmas=False)),
    ("Unigram / lemma", FeatureConfig(1, 1, use_lemmas=True)),
    ("Bigram", FeatureConfig(2, 2, use_lemmas=False)),
    ("Bigram / lemma", FeatureConfig(2, 2, use_lemmas=True)),
    ("Trigram", FeatureConfig(3, 3, use_lemmas=False)),
    ("Trigram / lemma", FeatureConfig(3, 3, use_lemmas=True)),
    ("N-gram (1,2,3)", FeatureConfig(1, 3, use_lemmas=False)),
    ("N-gram (1,2,3) / lemma", FeatureConfig(1, 3, use_lemmas=True)),
)


def clean_all(posts: Sequence[RawPost], resources: Resources) -> list[CleanPost]:
    return [preprocess(p, resources) for p in posts]


def prepare_corpus(
    posts: Sequence[RawPost],
    labels: dict[str, LandUseClass],
    resources: Resources,
    test_fraction: float,
    seed: int,
) -> PreparedCorpus:
    """Dedupe, label, split and clean a training corpus.

    Posts that end up with no tokens after cleaning are dropped after the
    split so that the split itself only depends on the raw corpus.
    """
    kept = dedupe_and_filter(posts)
    labeled, other = attach_labels(kept, labels)
    train, test = split_corpus(labeled, test_fraction, seed)

    def clean(items: list[LabeledPost]) -> tuple[LabeledDoc, ...]:
        out = []
        for item in items:
            doc = preprocess(item.post, resources)
            if doc.tokens:
                out.append(LabeledDoc(doc, item.label.sub))
        return tuple(out)

    other_docs = tuple(d for d in clean_all(other, resources) if d.tokens)
    return PreparedCorpus(clean(train), clean(test), other_docs)


def train_model(
    train: Sequence[LabeledDoc],
    config: FeatureConfig,
    settings: ClassifierSettings,
    other: Sequence[CleanPost] = (),
) -> tuple[MnbModel, Optional[PosSequenceFilter]]:
    docs = [d.doc for d in train]
    vocab = fit_vocabulary(docs, config)
    pairs = [(vectorize(d.doc, vocab, config), d.sub) for d in train]
    model = train_mnb(pairs, settings.alpha, vocab, config, settings.threshold)
    pos_filter = None
    if other:
        pos_filter = fit_pos_filter(
            docs, list(other), settings.top_i, settings.pos_ngram_min, settings.pos_ngram_max
        )
    return model, pos_filter


@dataclass(frozen=True)
class Evaluation:
    matrix: ConfusionMatrix
    report: MetricsReport


def evaluate(
    model: MnbModel,
    test: Sequence[LabeledDoc],
    subcategories: bool = False,
    include_nonclassified: bool = False,
    average: str = "macro",
    apply_threshold: bool = False,
) -> Evaluation:
    """Score held-out corpus posts.

    Corpus posts are known to refer to a location, so neither the PoS gate
    nor (unless ``apply_threshold``) the confidence cut-off is used.
    Reporting is per parent land use unless ``subcategories`` is set;
    NonClassified is a column but, unless asked for, not part of the
    averages.
    """
    pairs = []
    for item in test:
        result = predict(model, item.doc, None if apply_threshold else 0.0)
        if subcategories:
            truth = item.sub.value
            pred = result.sub_label.value if result.sub_label else Parent.NON_CLASSIFIED.value
        else:
            truth = item.parent.value
            pred = result.label.parent.value
        pairs.append((truth, pred))
    base = [s.value for s in SUBS] if subcategories else [p.value for p in PARENTS]
    classes = base + [Parent.NON_CLASSIFIED.value]
    cm = confusion(pairs, classes)
    exclude = () if include_nonclassified else (Parent.NON_CLASSIFIED.value,)
    return Evaluation(cm, metrics(cm, exclude=exclude, average=average))


@dataclass(frozen=True)
class SweepRow:
    name: str
    config: FeatureConfig
    evaluation: Evaluation


def sweep(
    corpus: PreparedCorpus,
    settings: ClassifierSettings,
    rows: Sequence[tuple[str, FeatureConfig]] = SWEEP,
    min_df: int = 1,
    **eval_kwargs,
) -> list[SweepRow]:
    out = []
    for name, config in rows:
        config = replace(config, min_df=min_df)
        model, _ = train_model(corpus.train, config, settings)
        out.append(SweepRow(name, config, evaluate(model, corpus.test, **eval_kwargs)))
    return out


@dataclass(frozen=True)
class GeoFunnel:
    in_region: list[CleanPost]
    assigned: list[tuple[CleanPost, str]]


def geofilter(posts: Sequence[CleanPost], blocks: BlockMap) -> GeoFunnel:
    region = filter_by_region(posts, blocks.region)
    return GeoFunnel(region, assign_blocks(region, blocks))


def classify_posts(
    model: MnbModel,
    pos_filter: Optional[PosSequenceFilter],
    posts: Sequence[tuple[CleanPost, Optional[str]]],
) -> list[dict]:
    """Label application posts; one output row per input post."""
    rows = []
    for doc, block_id in posts:
        result = classify_pipeline(model, pos_filter, doc)
        rows.append(labeled_row(doc, block_id, result))
    return rows


def labeled_row(doc: CleanPost, block_id: Optional[str], result: PredictionResult) -> dict:
    return {
        "id": doc.id,
        "label": result.label.parent.value,
        "sub_label": result.sub_label.value if result.sub_label else None,
        "confidence": result.confidence,
        "lat": doc.lat,
        "lon": doc.lon,
        "block_id": block_id,
    }


def label_counts(rows: Sequence[dict]) -> dict[str, int]:
    counts = Counter(r["label"] for r in rows)
    order = [p.value for p in PARENTS] + [NON_CLASSIFIED.parent.value]
    return {name: counts.get(name, 0) for name in order}


def majority_label(labels: Sequence[str]) -> Optional[str]:
    """Most frequent label; a tie for first place gives NonClassified."""
    if not labels:
        return None
    ranked = Counter(labels).most_common()
    if len(ranked) > 1 and ranked[0][1] == ranked[1][1]:
        return NON_CLASSIFIED.parent.value
    return ranked[0][0]


def labels_to_geojson(rows: Sequence[dict], blocks: BlockMap) -> dict:
    """FeatureCollection with a Point per labeled post and a Polygon per block.

    Block properties carry the cadastre label next to the majority predicted
    label of the posts assigned to it, so the two can be compared on a map.
    """
    by_block: dict[str, list[str]] = {}
    for row in rows:
        if row.get("block_id") is not None:
            by_block.setdefault(row["block_id"], []).append(row["label"])
    features = [
        {
            "type": "Feature",
            "geometry": {"type": "Point", "coordinates": [row["lon"], row["lat"]]},
            "properties": {
                "id": row["id"],
                "label": row["label"],
                "sub_label": row.get("sub_label"),
                "confidence": row.get("confidence"),
                "block_id": row.get("block_id"),
            },
        }
        for row in rows
    ]
    for block in blocks.blocks:
        labels = by_block.get(block.block_id, [])
        cadastre = block.cadastre_label.parent.value if block.cadastre_label else None
        features.append(
            {
                "type": "Feature",
                "geometry": polygon_to_geojson(block.polygon),
                "properties": {
                    "block_id": block.block_id,
                    "cadastre_label": cadastre,
                    "predicted_label": majority_label(labels),
                    "post_count": len(labels),
                },
            }
        )
    return {"type": "FeatureCollection", "features": features}
