"""Seven-stage text normalization for short geo-tagged posts.

Stages, in order: noise stripping, hashtag/mention handling (with
punctuation removal and lowercasing), whitespace tokenization, dictionary
expansion of abbreviations/slang/venue names, spell correction gated by a
longest-common-substring ratio, stopword removal that keeps the spatial
prepositions "en" and "de", and lexicon lemmatization with PoS tags.
"""

from __future__ import annotations

import html
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .errors import InputError
from .ingest import RawPost

DEFAULT_TAG = "NC"
DEFAULT_SPELL_THRESHOLD = 0.71
SPATIAL_PREPOSITIONS = frozenset({"en", "de"})

_URL_RE = re.compile(r"(?:https?://|www\.)\S+|\bt\.co/\S+", re.IGNORECASE)
_TAG_RE = re.compile(r"<[^<>]*>")
_WS_RE = re.compile(r"\s+")
_APOSTROPHES = frozenset("'’ʼ`´")


@dataclass(frozen=True)
class CleanPost:
    id: str
    tokens: tuple[str, ...]
    lemmas: tuple[str, ...]
    pos_tags: tuple[str, ...]
    point: tuple[float, float]  # (lat, lon)

    def __post_init__(self) -> None:
        if not len(self.tokens) == len(self.lemmas) == len(self.pos_tags):
            raise ValueError("tokens, lemmas and pos_tags must have equal length")

    @property
    def lat(self) -> float:
        return self.point[0]

    @property
    def lon(self) -> float:
        return self.point[1]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "tokens": list(self.tokens),
            "lemmas": list(self.lemmas),
            "pos_tags": list(self.pos_tags),
            "lat": self.point[0],
            "lon": self.point[1],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "CleanPost":
        return cls(
            id=str(obj["id"]),
            tokens=tuple(obj["tokens"]),
            lemmas=tuple(obj["lemmas"]),
            pos_tags=tuple(obj["pos_tags"]),
            point=(float(obj["lat"]), float(obj["lon"])),
        )


# --------------------------------------------------------------------------
# resources


@dataclass(frozen=True)
class ReplacementDictionary:
    """Phrase → replacement mapping; phrases are tuples of lowercase tokens."""

    entries: Mapping[tuple[str, ...], tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for key, value in self.entries.items():
            if not key or not all(key):
                raise ValueError("empty dictionary key")
            if key == value:
                raise ValueError(f"dictionary entry maps {' '.join(key)!r} to itself")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]]) -> "ReplacementDictionary":
        return cls({tuple(k.lower().split()): tuple(v.lower().split()) for k, v in pairs})

    @property
    def max_phrase(self) -> int:
        return max((len(k) for k in self.entries), default=0)


@dataclass(frozen=True)
class Lexicon:
    """Surface phrase → (lemma, PoS tag). Multiword surfaces are token tuples."""

    entries: Mapping[tuple[str, ...], tuple[str, str]] = field(default_factory=dict)
    default_tag: str = DEFAULT_TAG

    def __post_init__(self) -> None:
        for key, (lemma, tag) in self.entries.items():
            if not key or not lemma:
                raise ValueError("empty lexicon entry")
            if not tag or tag != tag.upper():
                raise ValueError(f"PoS tag for {' '.join(key)!r} must be non-empty uppercase")

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[str, str, str]]) -> "Lexicon":
        entries = {}
        for surface, lemma, tag in triples:
            entries[tuple(surface.lower().split())] = (
                "_".join(lemma.lower().split()),
                tag.upper(),
            )
        return cls(entries)

    @property
    def max_phrase(self) -> int:
        return max((len(k) for k in self.entries), default=0)

    def words(self) -> set[str]:
        return {w for key in self.entries for w in key}


@dataclass(frozen=True)
class SpellResources:
    vocabulary: frozenset[str]
    suggestions: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    acceptance_threshold: float = DEFAULT_SPELL_THRESHOLD
    max_edit_distance: int = 2

    def __post_init__(self) -> None:
        if not 0.0 < self.acceptance_threshold <= 1.0:
            raise ValueError("acceptance_threshold must be in (0, 1]")

    def candidates(self, word: str) -> tuple[str, ...]:
        """Suggestions for an unknown word.

        The bundled suggestion list wins; otherwise vocabulary words within
        ``max_edit_distance`` edits, nearest first, then alphabetically.
        """
        listed = self.suggestions.get(word)
        if listed is not None:
            return listed
        scored = []
        for cand in self.vocabulary:
            if abs(len(cand) - len(word)) > self.max_edit_distance:
                continue
            d = levenshtein(word, cand, self.max_edit_distance)
            if d <= self.max_edit_distance:
                scored.append((d, cand))
        scored.sort()
        return tuple(c for _, c in scored)


@dataclass(frozen=True)
class Resources:
    abbreviations: ReplacementDictionary
    spell: SpellResources
    stoplist: frozenset[str]
    lexicon: Lexicon
    translate: Callable[[str], str] = lambda text: text


# --------------------------------------------------------------------------
# stages


def strip_noise(text: str) -> str:
    """Remove URLs, HTML tags/entities, emoji and other symbol characters.

    Letters, digits, combining marks, ``#``, ``@`` and whitespace survive;
    apostrophes are dropped so contractions stay one word, any other
    character becomes a space, and whitespace runs are collapsed.
    """
    text = _TAG_RE.sub(" ", text)
    text = html.unescape(text)
    text = _URL_RE.sub(" ", text)
    out = []
    for ch in text:
        if ch in "#@" or unicodedata.category(ch)[0] in "LNM":
            out.append(ch)
        elif ch not in _APOSTROPHES:
            out.append(" ")
    return _WS_RE.sub(" ", "".join(out)).strip()


def process_hashtags_and_mentions(text: str) -> str:
    """Turn ``#word`` into ``word`` and every ``@`` into the token ``en``.

    All other punctuation is dropped (apostrophes join, anything else splits)
    and the result is lowercased.
    """
    out = []
    for ch in text:
        if ch == "@":
            out.append(" en ")
        elif ch in _APOSTROPHES:
            continue
        elif ch.isspace() or unicodedata.category(ch)[0] not in "LNM":
            out.append(" ")
        else:
            out.append(ch)
    return _WS_RE.sub(" ", "".join(out)).strip().lower()


def tokenize(text: str) -> list[str]:
    return text.split()


def expand_abbreviations(tokens: Sequence[str], dictionary: ReplacementDictionary) -> list[str]:
    """Replace dictionary phrases, longest match first, scanning left to right."""
    if not dictionary.entries:
        return list(tokens)
    longest = dictionary.max_phrase
    out: list[str] = []
    i = 0
    n = len(tokens)
    while i < n:
        for size in range(min(longest, n - i), 0, -1):
            repl = dictionary.entries.get(tuple(tokens[i : i + size]))
            if repl is not None:
                out.extend(repl)
                i += size
                break
        else:
            out.append(tokens[i])
            i += 1
    return out


def _normalize_for_lcs(s: str) -> str:
    return s.lower().replace(" ", "").replace("-", "")


def longest_common_substring(a: str, b: str) -> int:
    """Length of the longest contiguous run shared by ``a`` and ``b``."""
    if not a or not b:
        return 0
    best = 0
    prev = [0] * (len(b) + 1)
    for ca in a:
        cur = [0] * (len(b) + 1)
        for j, cb in enumerate(b, start=1):
            if ca == cb:
                cur[j] = prev[j - 1] + 1
                if cur[j] > best:
                    best = cur[j]
        prev = cur
    return best


def lcs_ratio(candidate: str, misspelled: str) -> float:
    """Longest common substring length over the misspelled word's length.

    Both strings are lowercased and stripped of spaces and hyphens first.
    """
    a = _normalize_for_lcs(candidate)
    b = _normalize_for_lcs(misspelled)
    if not a or not b:
        raise ValueError("lcs_ratio needs two non-empty strings")
    return longest_common_substring(a, b) / len(b)


def levenshtein(a: str, b: str, limit: Optional[int] = None) -> int:
    """Edit distance; stops early and returns ``limit + 1`` once exceeded."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        if limit is not None and min(cur) > limit:
            return limit + 1
        prev = cur
    return prev[-1]


def spell_correct(token: str, resources: SpellResources) -> Optional[str]:
    """Return the token, its best-scoring suggestion, or None (delete it)."""
    if token in resources.vocabulary:
        return token
    best: Optional[str] = None
    best_score = -1.0
    for cand in resources.candidates(token):
        if not _normalize_for_lcs(cand):
            continue
        score = lcs_ratio(cand, token)
        if score > best_score:
            best, best_score = cand, score
    if best is not None and best_score >= resources.acceptance_threshold:
        return best
    return None


def remove_stopwords(tokens: Sequence[str], stoplist: Iterable[str]) -> list[str]:
    stop = set(stoplist) - SPATIAL_PREPOSITIONS
    return [t for t in tokens if t not in stop]


def lemmatize_and_tag(tokens: Sequence[str], lexicon: Lexicon) -> tuple[list[str], list[str]]:
    lemmas, tags = _lemmatize(tokens, lexicon)[1:]
    return lemmas, tags


def _lemmatize(
    tokens: Sequence[str], lexicon: Lexicon
) -> tuple[list[str], list[str], list[str]]:
    longest = max(lexicon.max_phrase, 1)
    surfaces: list[str] = []
    lemmas: list[str] = []
    tags: list[str] = []
    i = 0
    n = len(tokens)
    while i < n:
        for size in range(min(longest, n - i), 0, -1):
            key = tuple(tokens[i : i + size])
            hit = lexicon.entries.get(key)
            if hit is not None:
                surfaces.append("_".join(key))
                lemmas.append(hit[0])
                tags.append(hit[1])
                i += size
                break
        else:
            surfaces.append(tokens[i])
            lemmas.append(tokens[i])
            tags.append(lexicon.default_tag)
            i += 1
    return surfaces, lemmas, tags


def clean_tokens(text: str, resources: Resources) -> list[str]:
    """Stages up to and including stopword removal."""
    text = strip_noise(text)
    text = resources.translate(text)
    text = process_hashtags_and_mentions(text)
    tokens = expand_abbreviations(tokenize(text), resources.abbreviations)
    corrected: list[str] = []
    for tok in tokens:
        fixed = spell_correct(tok, resources.spell)
        if fixed is not None:
            corrected.extend(process_hashtags_and_mentions(fixed).split())
    return remove_stopwords(corrected, resources.stoplist)


def preprocess(post: RawPost, resources: Resources) -> CleanPost:
    tokens = clean_tokens(post.text, resources)
    surfaces, lemmas, tags = _lemmatize(tokens, resources.lexicon)
    return CleanPost(
        id=post.id,
        tokens=tuple(surfaces),
        lemmas=tuple(lemmas),
        pos_tags=tuple(tags),
        point=(post.lat, post.lon),
    )


# --------------------------------------------------------------------------
# resource files


def _read_tsv(path: str | Path, min_cols: int, max_cols: int) -> list[tuple[int, list[str]]]:
    rows = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot open resource: {exc.strerror}", str(path)) from None
    with fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if not min_cols <= len(cols) <= max_cols or not all(c.strip() for c in cols):
                raise InputError(
                    f"expected {min_cols} tab-separated fields, got {len(cols)}",
                    str(path),
                    lineno,
                )
            rows.append((lineno, [c.strip() for c in cols]))
    return rows


def load_dictionary(path: str | Path) -> ReplacementDictionary:
    pairs = []
    for lineno, (src, dst) in _read_tsv(path, 2, 2):
        if src.lower().split() == dst.lower().split():
            raise InputError("entry maps a phrase to itself", str(path), lineno)
        pairs.append((src, dst))
    return ReplacementDictionary.from_pairs(pairs)


def load_lexicon(path: str | Path) -> Lexicon:
    triples = []
    for lineno, (surface, lemma, tag) in _read_tsv(path, 3, 3):
        if not tag.isupper():
            raise InputError(f"PoS tag {tag!r} is not uppercase", str(path), lineno)
        triples.append((surface, lemma, tag))
    return Lexicon.from_triples(triples)


def load_wordlist(path: str | Path) -> frozenset[str]:
    return frozenset(cols[0].lower() for _, cols in _read_tsv(path, 1, 1))


def load_suggestions(path: str | Path) -> dict[str, tuple[str, ...]]:
    out = {}
    for _, (word, cands) in _read_tsv(path, 2, 2):
        out[word.lower()] = tuple(c.strip().lower() for c in cands.split(",") if c.strip())
    return out


def load_resources(
    abbreviations: str | Path,
    lexicon: str | Path,
    stoplist: str | Path,
    suggestions: str | Path,
    vocabulary: str | Path,
    spell_threshold: float = DEFAULT_SPELL_THRESHOLD,
    translate: Callable[[str], str] | None = None,
) -> Resources:
    """Load all pre-processing resources from their TSV files.

    Valid words for spell checking are the vocabulary list plus every word
    known to the lexicon, the stoplist and the dictionary's expansions.
    """
    abbr = load_dictionary(abbreviations)
    lex = load_lexicon(lexicon)
    stop = load_wordlist(stoplist)
    vocab = set(load_wordlist(vocabulary))
    vocab |= lex.words() | stop
    for repl in abbr.entries.values():
        vocab.update(repl)
    spell = SpellResources(
        vocabulary=frozenset(vocab),
        suggestions=load_suggestions(suggestions),
        acceptance_threshold=spell_threshold,
    )
    return Resources(
        abbreviations=abbr,
        spell=spell,
        stoplist=stop,
        lexicon=lex,
        translate=translate or (lambda text: text),
    )
