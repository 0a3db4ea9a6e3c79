"""Confusion matrices and precision/recall/F1/accuracy for multi-class output."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    classes: tuple[Hashable, ...]
    counts: np.ndarray  # rows = truth, columns = prediction

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class MetricsReport:
    per_class: dict[Hashable, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float
    averaged_over: tuple[Hashable, ...]

    def to_json(self) -> dict:
        return {
            "accuracy": self.accuracy,
            "precision": self.macro_precision,
            "recall": self.macro_recall,
            "f1": self.macro_f1,
            "averaged_over": [_name(c) for c in self.averaged_over],
            "per_class": {
                _name(c): {
                    "precision": m.precision,
                    "recall": m.recall,
                    "f1": m.f1,
                    "support": m.support,
                }
                for c, m in self.per_class.items()
            },
        }


def _name(c: Hashable) -> str:
    return getattr(c, "value", None) or str(c)


def confusion(
    pairs: Iterable[tuple[Hashable, Hashable]], classes: Sequence[Hashable]
) -> ConfusionMatrix:
    index = {c: k for k, c in enumerate(classes)}
    if len(index) != len(classes):
        raise ValueError("duplicate class in class list")
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for truth, pred in pairs:
        try:
            counts[index[truth], index[pred]] += 1
        except KeyError as exc:
            raise ValueError(f"label {exc.args[0]!r} is not a declared class") from None
    return ConfusionMatrix(tuple(classes), counts)


def _safe_div(num: float, den: float) -> float:
    return num / den if den else 0.0


def metrics(
    cm: ConfusionMatrix,
    exclude: Iterable[Hashable] = (),
    average: str = "macro",
) -> MetricsReport:
    """Per-class scores plus their unweighted (or support-weighted) mean.

    Classes listed in ``exclude`` (an abstention column, typically) still
    count as wrong predictions for recall and accuracy but are left out of
    the averages. Zero denominators give 0.
    """
    if cm.total == 0:
        raise ConfigError("cannot compute metrics on an empty confusion matrix")
    if average not in ("macro", "weighted"):
        raise ValueError(f"unknown average {average!r}")
    counts = cm.counts.astype(float)
    tp = np.diag(counts)
    predicted = counts.sum(axis=0)
    actual = counts.sum(axis=1)
    per_class = {}
    for k, c in enumerate(cm.classes):
        p = _safe_div(tp[k], predicted[k])
        r = _safe_div(tp[k], actual[k])
        f = _safe_div(2 * p * r, p + r)
        per_class[c] = ClassMetrics(p, r, f, int(actual[k]))
    skip = set(exclude)
    used = tuple(c for c in cm.classes if c not in skip)
    if average == "macro":
        weights = np.ones(len(used))
    else:
        weights = np.array([per_class[c].support for c in used], dtype=float)
    wsum = weights.sum()

    def mean(attr: str) -> float:
        vals = np.array([getattr(per_class[c], attr) for c in used])
        return float((vals * weights).sum() / wsum) if wsum else 0.0

    return MetricsReport(
        per_class=per_class,
        macro_precision=mean("precision"),
        macro_recall=mean("recall"),
        macro_f1=mean("f1"),
        accuracy=float(tp.sum() / counts.sum()),
        averaged_over=used,
    )
