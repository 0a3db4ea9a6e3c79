"""Loading, cleaning and splitting of geo-tagged post corpora."""

from __future__ import annotations

import json
import logging
import math
import random
import unicodedata
from collections import defaultdict
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, Optional

from .errors import ConfigError, InputError
from .taxonomy import SUBS, LandUseClass, Parent, Sub

log = logging.getLogger(__name__)

MAX_TEXT_LENGTH = 280
_REQUIRED_KEYS = ("id", "user_id", "text", "timestamp", "lat", "lon")


@dataclass(frozen=True)
class RawPost:
    id: str
    user_id: str
    text: str
    timestamp: str
    lat: float
    lon: float
    lang: Optional[str] = None

    def to_json(self) -> dict:
        d = asdict(self)
        if d["lang"] is None:
            del d["lang"]
        return d


@dataclass(frozen=True)
class LabeledPost:
    post: RawPost
    label: LandUseClass


def _parse_post(obj: object, path: str, lineno: int) -> RawPost:
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object", path, lineno)
    missing = [k for k in _REQUIRED_KEYS if k not in obj]
    if missing:
        raise InputError(f"missing keys: {', '.join(missing)}", path, lineno)
    try:
        lat = float(obj["lat"])
        lon = float(obj["lon"])
    except (TypeError, ValueError):
        raise InputError("lat/lon must be numbers", path, lineno) from None
    post_id = str(obj["id"])
    if not post_id:
        raise InputError("empty id", path, lineno)
    if not isinstance(obj["text"], str):
        raise InputError("text must be a string", path, lineno)
    lang = obj.get("lang")
    return RawPost(
        id=post_id,
        user_id=str(obj["user_id"]),
        text=obj["text"],
        timestamp=str(obj["timestamp"]),
        lat=lat,
        lon=lon,
        lang=str(lang) if lang is not None else None,
    )


def iter_jsonl(path: str | Path) -> Iterable[tuple[int, object]]:
    """Yield (line number, decoded object) for every non-blank line."""
    path = str(path)
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot open: {exc.strerror}", path) from None
    with fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"malformed JSON ({exc.msg})", path, lineno) from None


def load_posts(path: str | Path, warnings: list[str] | None = None) -> list[RawPost]:
    """Read a JSONL file of posts, in file order.

    Records with out-of-range coordinates are skipped; a message for each is
    appended to ``warnings`` when given. Malformed lines and duplicate ids are
    fatal and raise :class:`InputError` carrying the line number.
    """
    posts: list[RawPost] = []
    seen: set[str] = set()
    for lineno, obj in iter_jsonl(path):
        post = _parse_post(obj, str(path), lineno)
        if post.id in seen:
            raise InputError(f"duplicate id {post.id!r}", str(path), lineno)
        seen.add(post.id)
        if not (-90.0 <= post.lat <= 90.0 and -180.0 <= post.lon <= 180.0) or not (
            math.isfinite(post.lat) and math.isfinite(post.lon)
        ):
            msg = f"{path}:{lineno}: post {post.id} rejected, coordinate out of range"
            log.warning(msg)
            if warnings is not None:
                warnings.append(msg)
            continue
        if len(post.text) > MAX_TEXT_LENGTH:
            msg = f"{path}:{lineno}: post {post.id} longer than {MAX_TEXT_LENGTH} characters"
            log.info(msg)
            if warnings is not None:
                warnings.append(msg)
        posts.append(post)
    return posts


def write_jsonl(rows: Iterable[dict], path: str | Path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")
            n += 1
    return n


def write_posts(posts: Iterable[RawPost], path: str | Path) -> int:
    return write_jsonl((p.to_json() for p in posts), path)


def load_labels(path: str | Path) -> dict[str, LandUseClass]:
    labels: dict[str, LandUseClass] = {}
    for lineno, obj in iter_jsonl(path):
        if not isinstance(obj, dict) or "id" not in obj or "parent" not in obj:
            raise InputError("label record needs keys id, parent, sub", str(path), lineno)
        try:
            label = LandUseClass.parse(obj["parent"], obj.get("sub"))
        except ValueError as exc:
            raise InputError(str(exc), str(path), lineno) from None
        labels[str(obj["id"])] = label
    return labels


def attach_labels(
    posts: Iterable[RawPost], labels: dict[str, LandUseClass]
) -> tuple[list[LabeledPost], list[RawPost]]:
    """Pair posts with their labels.

    Returns ``(labeled, other)``: location posts carrying a subcategory, and
    posts labeled NonClassified (used as the non-location side of the PoS
    prefilter). Posts without a label record are ignored.
    """
    labeled: list[LabeledPost] = []
    other: list[RawPost] = []
    for post in posts:
        label = labels.get(post.id)
        if label is None:
            continue
        if label.parent is Parent.NON_CLASSIFIED:
            other.append(post)
        elif label.sub is None:
            raise InputError(f"post {post.id} has no subcategory")
        else:
            labeled.append(LabeledPost(post, label))
    return labeled, other


def _is_numeric_or_punct(text: str) -> bool:
    return all(
        ch.isspace() or unicodedata.category(ch)[0] in "NP" for ch in text
    )


def dedupe_and_filter(posts: Iterable[RawPost]) -> list[RawPost]:
    """Drop duplicates, blanks, single-word and number-only posts.

    Duplicates are detected on trimmed, lowercased text; the first occurrence
    is kept and order is preserved.
    """
    seen: set[str] = set()
    kept: list[RawPost] = []
    for post in posts:
        text = post.text.strip()
        key = text.lower()
        if key in seen:
            continue
        seen.add(key)
        if not text or len(text.split()) < 2 or _is_numeric_or_punct(text):
            continue
        kept.append(post)
    return kept


def _test_count(n: int, fraction: float) -> int:
    k = math.floor(fraction * n + 0.5)
    return min(max(k, 1), n - 1)


def split_corpus(
    data: list[LabeledPost], test_fraction: float, seed: int
) -> tuple[list[LabeledPost], list[LabeledPost]]:
    """Stratified random split by subcategory.

    Each subcategory sends ``round(test_fraction * count)`` members to the
    test side, clamped so both sides keep at least one. Both outputs keep
    the input order.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ConfigError(f"test_fraction must be in (0, 1), got {test_fraction}")
    groups: dict[Sub, list[int]] = defaultdict(list)
    for idx, item in enumerate(data):
        groups[item.label.sub].append(idx)
    rng = random.Random(seed)
    test_idx: set[int] = set()
    for sub in SUBS:
        members = groups.get(sub)
        if not members:
            continue
        if len(members) < 2:
            raise ConfigError(f"subcategory {sub.value} has fewer than 2 members")
        shuffled = list(members)
        rng.shuffle(shuffled)
        test_idx.update(shuffled[: _test_count(len(members), test_fraction)])
    train = [d for i, d in enumerate(data) if i not in test_idx]
    test = [d for i, d in enumerate(data) if i in test_idx]
    return train, test
