"""N-gram, Bag-of-PoS and TF-IDF features over cleaned posts."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ConfigError
from .textprep import CleanPost

POS_PREFIX = "POS:"


@dataclass(frozen=True)
class FeatureConfig:
    ngram_min: int = 1
    ngram_max: int = 3
    use_lemmas: bool = True
    use_tfidf: bool = False
    include_pos_ngrams: bool = False
    pos_ngram_min: int = 2
    pos_ngram_max: int = 3
    min_df: int = 1

    def __post_init__(self) -> None:
        if self.ngram_min < 1 or self.ngram_min > self.ngram_max:
            raise ConfigError(f"bad n-gram range {self.ngram_min}..{self.ngram_max}")
        if self.pos_ngram_min < 1 or self.pos_ngram_min > self.pos_ngram_max:
            raise ConfigError(f"bad PoS n-gram range {self.pos_ngram_min}..{self.pos_ngram_max}")
        if self.min_df < 1:
            raise ConfigError("min_df must be >= 1")

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: Mapping) -> "FeatureConfig":
        return cls(**obj)


def extract_ngrams(tokens: Sequence[str], n_min: int, n_max: int) -> list[str]:
    """All contiguous n-grams for n in [n_min, n_max], space-joined, in order."""
    if n_min < 1:
        raise ValueError("n_min must be >= 1")
    m = len(tokens)
    grams = []
    for n in range(n_min, n_max + 1):
        for i in range(m - n + 1):
            grams.append(" ".join(tokens[i : i + n]))
    return grams


def extract_pos_ngrams(tags: Sequence[str], n_min: int, n_max: int) -> list[str]:
    return [POS_PREFIX + g for g in extract_ngrams(tags, n_min, n_max)]


def doc_terms(doc: CleanPost, config: FeatureConfig) -> list[str]:
    words = doc.lemmas if config.use_lemmas else doc.tokens
    terms = extract_ngrams(words, config.ngram_min, config.ngram_max)
    if config.include_pos_ngrams:
        terms += extract_pos_ngrams(doc.pos_tags, config.pos_ngram_min, config.pos_ngram_max)
    return terms


@dataclass(frozen=True)
class Vocabulary:
    term_index: Mapping[str, int]
    doc_freq: Mapping[str, int]
    n_docs: int

    def __len__(self) -> int:
        return len(self.term_index)

    def terms(self) -> list[str]:
        return sorted(self.term_index, key=self.term_index.__getitem__)

    def idf(self, term: str) -> float:
        return math.log((1 + self.n_docs) / (1 + self.doc_freq[term])) + 1.0


def fit_vocabulary(docs: Sequence[CleanPost], config: FeatureConfig) -> Vocabulary:
    """Index every term in first-appearance order, with document frequencies."""
    if not docs:
        raise ValueError("cannot fit a vocabulary on zero documents")
    order: list[str] = []
    df: Counter[str] = Counter()
    for doc in docs:
        seen = set()
        for term in doc_terms(doc, config):
            if term not in seen:
                seen.add(term)
                if term not in df:
                    order.append(term)
                df[term] += 1
    kept = [t for t in order if df[t] >= config.min_df]
    return Vocabulary(
        term_index={t: i for i, t in enumerate(kept)},
        doc_freq={t: df[t] for t in kept},
        n_docs=len(docs),
    )


FeatureVector = dict[int, float]


def vectorize(doc: CleanPost, vocab: Vocabulary, config: FeatureConfig) -> FeatureVector:
    """Sparse term weights: raw counts, or smoothed TF-IDF scaled to unit L2 norm."""
    counts: Counter[str] = Counter(t for t in doc_terms(doc, config) if t in vocab.term_index)
    if not config.use_tfidf:
        return {vocab.term_index[t]: float(c) for t, c in counts.items()}
    weights = {t: c * vocab.idf(t) for t, c in counts.items()}
    norm = math.sqrt(sum(w * w for w in weights.values()))
    if norm == 0.0:
        return {}
    return {vocab.term_index[t]: w / norm for t, w in weights.items()}


def vectorize_all(
    docs: Iterable[CleanPost], vocab: Vocabulary, config: FeatureConfig
) -> list[FeatureVector]:
    return [vectorize(d, vocab, config) for d in docs]
