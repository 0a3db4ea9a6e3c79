"""Multinomial Naive Bayes over term weights, with a PoS-sequence gate
that decides whether a post talks about being somewhere at all."""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .errors import ConfigError, ModelFormatError
from .features import FeatureConfig, FeatureVector, Vocabulary, extract_ngrams, vectorize
from .taxonomy import NON_CLASSIFIED, SUB_TO_PARENT, SUBS, LandUseClass, Sub
from .textprep import CleanPost

FORMAT_VERSION = 1
DEFAULT_ALPHA = 1.0
DEFAULT_THRESHOLD = 0.5
DEFAULT_TOP_I = 50


@dataclass(frozen=True, eq=False)
class MnbModel:
    classes: tuple[Sub, ...]
    log_prior: np.ndarray  # (n_classes,)
    log_likelihood: np.ndarray  # (n_classes, n_terms)
    vocab: Vocabulary
    config: FeatureConfig
    alpha: float = DEFAULT_ALPHA
    threshold: float = DEFAULT_THRESHOLD


@dataclass(frozen=True)
class PredictionResult:
    label: LandUseClass
    sub_label: Optional[Sub]
    posterior: Optional[dict[Sub, float]]
    confidence: Optional[float]


def train_mnb(
    train: Sequence[tuple[FeatureVector, Sub]],
    alpha: float,
    vocab: Vocabulary,
    config: FeatureConfig,
    threshold: float = DEFAULT_THRESHOLD,
) -> MnbModel:
    """Estimate class priors and Laplace-smoothed term likelihoods.

    Term weights (raw counts or TF-IDF values) are summed per class; the
    likelihood of term w in class c is
    (sum_w + alpha) / (sum over all terms + alpha * |V|).
    """
    if not train:
        raise ConfigError("empty training set")
    if not alpha > 0:
        raise ConfigError(f"alpha must be positive, got {alpha}")
    if not 0.0 < threshold <= 1.0:
        raise ConfigError(f"threshold must be in (0, 1], got {threshold}")
    present = {Sub(s) for _, s in train}
    classes = tuple(s for s in SUBS if s in present)
    row = {c: k for k, c in enumerate(classes)}
    n_terms = len(vocab)
    weight_sum = np.zeros((len(classes), n_terms))
    doc_count = np.zeros(len(classes))
    for vec, sub in train:
        k = row[Sub(sub)]
        doc_count[k] += 1
        for idx, w in vec.items():
            weight_sum[k, idx] += w
    log_prior = np.log(doc_count / doc_count.sum())
    denom = weight_sum.sum(axis=1, keepdims=True) + alpha * n_terms
    log_likelihood = np.log((weight_sum + alpha) / denom)
    return MnbModel(classes, log_prior, log_likelihood, vocab, config, float(alpha), float(threshold))


def joint_log_scores(model: MnbModel, vec: FeatureVector) -> np.ndarray:
    scores = model.log_prior.copy()
    if vec:
        idx = np.fromiter(vec.keys(), dtype=np.intp, count=len(vec))
        w = np.fromiter(vec.values(), dtype=float, count=len(vec))
        scores += model.log_likelihood[:, idx] @ w
    return scores


def posteriors(model: MnbModel, vec: FeatureVector) -> np.ndarray:
    scores = joint_log_scores(model, vec)
    top = scores.max()
    shifted = np.exp(scores - top)
    return shifted / shifted.sum()


def predict_vector(
    model: MnbModel, vec: FeatureVector, threshold: Optional[float] = None
) -> PredictionResult:
    threshold = model.threshold if threshold is None else threshold
    post = posteriors(model, vec)
    best = int(np.argmax(post))  # first maximum wins ties
    confidence = float(post[best])
    posterior = {c: float(p) for c, p in zip(model.classes, post)}
    if confidence < threshold:
        return PredictionResult(NON_CLASSIFIED, None, posterior, confidence)
    sub = model.classes[best]
    return PredictionResult(LandUseClass(SUB_TO_PARENT[sub]), sub, posterior, confidence)


def predict(
    model: MnbModel, doc: CleanPost, threshold: Optional[float] = None
) -> PredictionResult:
    """Posterior over subcategories; below the cut-off the label is NonClassified.

    ``threshold`` overrides the model's cut-off (0 disables abstention).
    """
    return predict_vector(model, vectorize(doc, model.vocab, model.config), threshold)


# --------------------------------------------------------------------------
# PoS-sequence location prefilter


@dataclass(frozen=True)
class PosSequenceFilter:
    location_sequences: frozenset[str]
    nonlocation_sequences: frozenset[str]
    i: int = DEFAULT_TOP_I
    n_min: int = 2
    n_max: int = 3

    def __post_init__(self) -> None:
        if self.location_sequences & self.nonlocation_sequences:
            raise ValueError("location and non-location sequence sets overlap")


def _top_sequences(docs: Iterable[CleanPost], i: int, n_min: int, n_max: int) -> set[str]:
    freq: Counter[str] = Counter()
    for doc in docs:
        freq.update(extract_ngrams(doc.pos_tags, n_min, n_max))
    ranked = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))
    return {seq for seq, _ in ranked[:i]}


def fit_pos_filter(
    location_docs: Sequence[CleanPost],
    other_docs: Sequence[CleanPost],
    i: int = DEFAULT_TOP_I,
    n_min: int = 2,
    n_max: int = 3,
) -> PosSequenceFilter:
    """Keep the i most frequent PoS n-grams of each corpus, minus the shared ones."""
    if i < 1:
        raise ConfigError("i must be >= 1")
    if not location_docs or not other_docs:
        raise ConfigError("both corpora are needed to fit the PoS filter")
    loc = _top_sequences(location_docs, i, n_min, n_max)
    other = _top_sequences(other_docs, i, n_min, n_max)
    shared = loc & other
    return PosSequenceFilter(frozenset(loc - shared), frozenset(other - shared), i, n_min, n_max)


def location_score(
    pos_filter: PosSequenceFilter, tags: Sequence[str], n_min: int, n_max: int
) -> int:
    score = 0
    for seq in extract_ngrams(tags, n_min, n_max):
        if seq in pos_filter.location_sequences:
            score += 1
        elif seq in pos_filter.nonlocation_sequences:
            score -= 1
    return score


def is_location_post(
    pos_filter: PosSequenceFilter,
    tags: Sequence[str],
    n_min: Optional[int] = None,
    n_max: Optional[int] = None,
) -> bool:
    n_min = pos_filter.n_min if n_min is None else n_min
    n_max = pos_filter.n_max if n_max is None else n_max
    return location_score(pos_filter, tags, n_min, n_max) > 0


def classify_pipeline(
    model: MnbModel, pos_filter: Optional[PosSequenceFilter], doc: CleanPost
) -> PredictionResult:
    """Gate with the PoS filter, then classify; posts judged off-location abstain."""
    if pos_filter is not None and not is_location_post(pos_filter, doc.pos_tags):
        return PredictionResult(NON_CLASSIFIED, None, None, None)
    return predict(model, doc)


# --------------------------------------------------------------------------
# persistence


def _dump(obj: object) -> str:
    """JSON text with every float written to 17 significant digits."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite number {x}")
        return format(x, ".16e")
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, Mapping):
        items = (f"{json.dumps(str(k), ensure_ascii=False)}:{_dump(v)}" for k, v in obj.items())
        return "{" + ",".join(items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dump(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def model_to_json(model: MnbModel, pos_filter: Optional[PosSequenceFilter] = None) -> str:
    terms = model.vocab.terms()
    likelihood = {}
    for k, cls in enumerate(model.classes):
        row = model.log_likelihood[k]
        unseen = float(row.min()) if len(row) else 0.0
        likelihood[cls.value] = {
            "unseen": unseen,
            "terms": {t: float(row[j]) for j, t in enumerate(terms) if row[j] != unseen},
        }
    doc = {
        "format_version": FORMAT_VERSION,
        "alpha": model.alpha,
        "threshold": model.threshold,
        "classes": [c.value for c in model.classes],
        "log_prior": [float(v) for v in model.log_prior],
        "n_docs": model.vocab.n_docs,
        "vocabulary": [
            {"term": t, "index": model.vocab.term_index[t], "df": model.vocab.doc_freq[t]}
            for t in terms
        ],
        "log_likelihood": likelihood,
        "feature_config": model.config.to_json(),
        "pos_filter": None
        if pos_filter is None
        else {
            "i": pos_filter.i,
            "n_min": pos_filter.n_min,
            "n_max": pos_filter.n_max,
            "location_sequences": sorted(pos_filter.location_sequences),
            "nonlocation_sequences": sorted(pos_filter.nonlocation_sequences),
        },
    }
    return _dump(doc) + "\n"


def model_from_json(text: str) -> tuple[MnbModel, Optional[PosSequenceFilter]]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file is not valid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise ModelFormatError("model file has no format_version")
    if doc["format_version"] != FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported model format_version {doc['format_version']!r} "
            f"(expected {FORMAT_VERSION})"
        )
    try:
        classes = tuple(Sub(c) for c in doc["classes"])
        entries = doc["vocabulary"]
        term_index = {e["term"]: int(e["index"]) for e in entries}
        if sorted(term_index.values()) != list(range(len(term_index))):
            raise ValueError("vocabulary indices are not a bijection")
        vocab = Vocabulary(
            term_index=term_index,
            doc_freq={e["term"]: int(e["df"]) for e in entries},
            n_docs=int(doc["n_docs"]),
        )
        log_likelihood = np.empty((len(classes), len(vocab)))
        for k, cls in enumerate(classes):
            block = doc["log_likelihood"][cls.value]
            log_likelihood[k, :] = float(block["unseen"])
            for term, value in block["terms"].items():
                log_likelihood[k, term_index[term]] = float(value)
        model = MnbModel(
            classes=classes,
            log_prior=np.array([float(v) for v in doc["log_prior"]]),
            log_likelihood=log_likelihood,
            vocab=vocab,
            config=FeatureConfig.from_json(doc["feature_config"]),
            alpha=float(doc["alpha"]),
            threshold=float(doc["threshold"]),
        )
        if model.log_prior.shape != (len(classes),):
            raise ValueError("log_prior length does not match classes")
        pf = doc.get("pos_filter")
        pos_filter = (
            None
            if pf is None
            else PosSequenceFilter(
                frozenset(pf["location_sequences"]),
                frozenset(pf["nonlocation_sequences"]),
                int(pf["i"]),
                int(pf["n_min"]),
                int(pf["n_max"]),
            )
        )
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ModelFormatError(f"corrupt model file: {exc!r}") from None
    return model, pos_filter


def save_model(
    model: MnbModel, pos_filter: Optional[PosSequenceFilter], path: str | Path
) -> None:
    Path(path).write_text(model_to_json(model, pos_filter), encoding="utf-8")


def load_model(path: str | Path) -> tuple[MnbModel, Optional[PosSequenceFilter]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read model {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise ModelFormatError(f"model {path} is not UTF-8 text") from None
    return model_from_json(text)
