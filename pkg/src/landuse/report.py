"""Evaluation reports: JSON, an aligned text table, TSV, and PNG figures."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Sequence

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .pipeline import Evaluation, SweepRow

COLUMNS = ("Feature", "Accuracy", "Precision", "Recall", "F1-score")
# PNG metadata is pinned so identical inputs give identical bytes
_PNG_META = {"Software": None}


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def summary_rows(named: Sequence[tuple[str, Evaluation]]) -> list[list[str]]:
    rows = []
    for name, ev in named:
        r = ev.report
        rows.append(
            [name, _fmt(r.accuracy), _fmt(r.macro_precision), _fmt(r.macro_recall), _fmt(r.macro_f1)]
        )
    return rows


def text_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Left-aligned first column, right-aligned numeric columns."""
    widths = [max(len(str(r[k])) for r in [header, *rows]) for k in range(len(header))]

    def line(cells: Sequence[str]) -> str:
        parts = [str(cells[0]).ljust(widths[0])]
        parts += [str(c).rjust(w) for c, w in zip(cells[1:], widths[1:])]
        return "  ".join(parts).rstrip()

    rule = "  ".join("-" * w for w in widths)
    return "\n".join([line(header), rule, *(line(r) for r in rows)]) + "\n"


def tsv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    return "".join("\t".join(map(str, r)) + "\n" for r in [header, *rows])


def per_class_rows(ev: Evaluation) -> list[list[str]]:
    rows = []
    for cls, m in ev.report.per_class.items():
        rows.append([str(cls), _fmt(m.precision), _fmt(m.recall), _fmt(m.f1), str(m.support)])
    return rows


def evaluation_json(ev: Evaluation) -> dict:
    return {
        **ev.report.to_json(),
        "confusion": {
            "classes": [str(c) for c in ev.matrix.classes],
            "counts": ev.matrix.counts.tolist(),
        },
    }


def plot_confusion(ev: Evaluation, path: Path, title: str = "") -> None:
    counts = ev.matrix.counts
    labels = [str(c) for c in ev.matrix.classes]
    fig = Figure(figsize=(6.4, 5.6))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()
    ax.imshow(counts, cmap="Blues")
    ax.set_xticks(range(len(labels)), labels, rotation=45, ha="right", fontsize=8)
    ax.set_yticks(range(len(labels)), labels, fontsize=8)
    ax.set_xlabel("predicted")
    ax.set_ylabel("true")
    if title:
        ax.set_title(title, fontsize=10)
    peak = counts.max() if counts.size else 0
    for (i, j), v in np.ndenumerate(counts):
        if v:
            color = "white" if v > peak / 2 else "black"
            ax.text(j, i, str(v), ha="center", va="center", fontsize=8, color=color)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_PNG_META)


def plot_sweep(rows: Sequence[SweepRow], path: Path) -> None:
    names = [r.name for r in rows]
    acc = [r.evaluation.report.accuracy for r in rows]
    f1 = [r.evaluation.report.macro_f1 for r in rows]
    y = np.arange(len(rows))
    fig = Figure(figsize=(6.4, 0.45 * len(rows) + 1.2))
    FigureCanvasAgg(fig)
    ax = fig.add_subplot()
    ax.barh(y - 0.2, acc, height=0.4, label="accuracy", color="#9ecae1")
    ax.barh(y + 0.2, f1, height=0.4, label="F1-score", color="#3182bd")
    ax.set_yticks(y, names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlim(0, 1)
    ax.set_xlabel("score")
    ax.legend(loc="lower center", bbox_to_anchor=(0.5, 1.0), ncol=2, fontsize=8, frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=100, metadata=_PNG_META)


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8", newline="\n")
    return path


def write_evaluation(ev: Evaluation, name: str, out_dir: Path, figures: bool = True) -> list[Path]:
    """metrics.{json,txt,tsv} plus confusion.png for one trained model."""
    out_dir.mkdir(parents=True, exist_ok=True)
    summary = summary_rows([(name, ev)])
    detail_header = ("Class", "Precision", "Recall", "F1-score", "Support")
    detail = per_class_rows(ev)
    written = [
        _write(out_dir / "metrics.json", json.dumps({"feature": name, **evaluation_json(ev)}, indent=2) + "\n"),
        _write(
            out_dir / "metrics.txt",
            text_table(COLUMNS, summary) + "\n" + text_table(detail_header, detail),
        ),
        _write(out_dir / "metrics.tsv", tsv(COLUMNS, summary)),
    ]
    if figures:
        plot_confusion(ev, out_dir / "confusion.png", name)
        written.append(out_dir / "confusion.png")
    return written


def write_sweep(rows: Sequence[SweepRow], out_dir: Path, figures: bool = True) -> list[Path]:
    """sweep.{json,txt,tsv} plus sweep.png, one row per feature configuration."""
    out_dir.mkdir(parents=True, exist_ok=True)
    table = summary_rows([(r.name, r.evaluation) for r in rows])
    payload = [
        {"feature": r.name, "config": r.config.to_json(), **evaluation_json(r.evaluation)}
        for r in rows
    ]
    written = [
        _write(out_dir / "sweep.json", json.dumps(payload, indent=2) + "\n"),
        _write(out_dir / "sweep.txt", text_table(COLUMNS, table)),
        _write(out_dir / "sweep.tsv", tsv(COLUMNS, table)),
    ]
    if figures:
        plot_sweep(rows, out_dir / "sweep.png")
        written.append(out_dir / "sweep.png")
    return written
