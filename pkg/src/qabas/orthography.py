"""Decomposition and diacritic-sensitive comparison of Arabic word forms.

A word form is decomposed into a letter skeleton plus one diacritic cluster
per letter (an optional shadda and at most one vowel mark).  Two forms are
*compatible* when their skeletons are identical and no aligned pair of
clusters commits to contradicting marks.  An unmarked position never
contradicts anything, which is what lets a partially vowelled dictionary
entry match a fully vowelled one.

Contradiction rule:
  - two clusters that both carry a vowel mark contradict iff the vowels
    differ (sukun counts as a vowel mark here, so sukun vs. any other
    mark is a contradiction);
  - shadda-absent is treated as "unspecified", not as "no shadda", so a
    shadda mismatch only counts as a contradiction when *both* words are
    fully diacritized (every letter vowelled) and therefore committed.

Hamza seats (أ إ آ) are distinct letters by default; ``analyze`` takes a
``fold_hamza`` flag that folds them onto bare alef for noisy sources.
Alef-maqsura/ya and ta-marbuta/ha are never folded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

from .errors import (
    DoubleVowel,
    EmptyInput,
    LeadingDiacritic,
    NonArabicCharacter,
    ShaddaSukunConflict,
)


class Vowel(Enum):
    """The seven vowel marks (three short vowels, sukun, three tanween)."""

    FATHA = "َ"
    DAMMA = "ُ"
    KASRA = "ِ"
    SUKUN = "ْ"
    FATHATAN = "ً"
    DAMMATAN = "ٌ"
    KASRATAN = "ٍ"


SHADDA = "ّ"
TATWEEL = "ـ"

_VOWEL_BY_CHAR = {v.value: v for v in Vowel}

# أ إ آ folded onto bare alef when fold_hamza is requested
_HAMZA_FOLD = {"أ": "ا", "إ": "ا", "آ": "ا"}


def _is_arabic_letter(ch: str) -> bool:
    return "ء" <= ch <= "غ" or "ف" <= ch <= "ي"


@dataclass(frozen=True)
class DiacriticCluster:
    """Diacritics attached to a single letter."""

    shadda: bool = False
    vowel: Vowel | None = None

    def __post_init__(self) -> None:
        if self.shadda and self.vowel is Vowel.SUKUN:
            raise ValueError("shadda and sukun cannot share a letter")

    @property
    def is_empty(self) -> bool:
        return not self.shadda and self.vowel is None

    def marks(self) -> str:
        """Canonical mark string: shadda first, then the vowel."""
        out = SHADDA if self.shadda else ""
        if self.vowel is not None:
            out += self.vowel.value
        return out


EMPTY_CLUSTER = DiacriticCluster()


@dataclass(frozen=True, eq=False)
class AnalyzedWord:
    """A word form split into its letter skeleton and per-letter clusters.

    Equality and hashing compare the decomposition, not the raw string:
    tatweel variants and unordered mark sequences analyze equal.
    """

    skeleton: tuple[str, ...]
    clusters: tuple[DiacriticCluster, ...]
    raw: str

    def __len__(self) -> int:
        return len(self.skeleton)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AnalyzedWord):
            return NotImplemented
        return self.skeleton == other.skeleton and self.clusters == other.clusters

    def __hash__(self) -> int:
        return hash((self.skeleton, self.clusters))

    def __repr__(self) -> str:
        return f"AnalyzedWord({self.serialize()!r})"

    @property
    def fully_diacritized(self) -> bool:
        """True when every letter carries a vowel mark (shadda alone does not count)."""
        return all(c.vowel is not None for c in self.clusters)

    def segments(self) -> tuple[str, ...]:
        """Per-letter text segments: the letter followed by its marks."""
        return tuple(
            letter + cluster.marks()
            for letter, cluster in zip(self.skeleton, self.clusters)
        )

    def serialize(self) -> str:
        """Canonical text form; re-analyzing it yields an equal word."""
        return "".join(self.segments())


def analyze(raw: str, *, fold_hamza: bool = False) -> AnalyzedWord:
    """Decompose a raw word into an :class:`AnalyzedWord`.

    Tatweel is dropped; every harakat attaches to the nearest preceding
    letter.  Rejects empty input, a leading harakat, two vowel marks on
    one letter, shadda+sukun on one letter, and any non-Arabic character.
    """
    text = raw.strip()
    if not text:
        raise EmptyInput("word is empty after trimming")

    skeleton: list[str] = []
    shaddas: list[bool] = []
    vowels: list[Vowel | None] = []

    for ch in text:
        if ch == TATWEEL:
            continue
        if ch == SHADDA:
            if not skeleton:
                raise LeadingDiacritic(f"shadda with no preceding letter in {raw!r}")
            if vowels[-1] is Vowel.SUKUN:
                raise ShaddaSukunConflict(f"shadda and sukun on one letter in {raw!r}")
            shaddas[-1] = True
        elif ch in _VOWEL_BY_CHAR:
            if not skeleton:
                raise LeadingDiacritic(f"vowel mark with no preceding letter in {raw!r}")
            if vowels[-1] is not None:
                raise DoubleVowel(f"two vowel marks on one letter in {raw!r}")
            vowel = _VOWEL_BY_CHAR[ch]
            if vowel is Vowel.SUKUN and shaddas[-1]:
                raise ShaddaSukunConflict(f"shadda and sukun on one letter in {raw!r}")
            vowels[-1] = vowel
        elif _is_arabic_letter(ch):
            if fold_hamza:
                ch = _HAMZA_FOLD.get(ch, ch)
            skeleton.append(ch)
            shaddas.append(False)
            vowels.append(None)
        else:
            raise NonArabicCharacter(f"character {ch!r} (U+{ord(ch):04X}) in {raw!r}")

    clusters = tuple(
        DiacriticCluster(shadda=s, vowel=v) for s, v in zip(shaddas, vowels)
    )
    return AnalyzedWord(skeleton=tuple(skeleton), clusters=clusters, raw=raw)


def skeleton_key(word: AnalyzedWord) -> str:
    """The undiacritized letter sequence; equal keys are necessary for compatibility."""
    return "".join(word.skeleton)


def diacritic_compatible(w1: AnalyzedWord, w2: AnalyzedWord) -> bool:
    """True iff the skeletons match and no aligned clusters contradict."""
    if w1.skeleton != w2.skeleton:
        return False
    both_full = w1.fully_diacritized and w2.fully_diacritized
    for c1, c2 in zip(w1.clusters, w2.clusters):
        if c1.vowel is not None and c2.vowel is not None and c1.vowel is not c2.vowel:
            return False
        if both_full and c1.shadda != c2.shadda:
            return False
    return True


class WordSet:
    """An unordered collection of analyzed words, unique by decomposition.

    Members that analyze to the same skeleton+clusters are collapsed, so
    tatweel variants and mark-order variants of one word count once.
    """

    __slots__ = ("_words",)

    def __init__(self, words: Iterable[AnalyzedWord | str] = ()):
        unique: dict[AnalyzedWord, AnalyzedWord] = {}
        for w in words:
            if isinstance(w, str):
                w = analyze(w)
            unique.setdefault(w, w)
        self._words = tuple(unique.values())

    @property
    def words(self) -> tuple[AnalyzedWord, ...]:
        return self._words

    def __iter__(self) -> Iterator[AnalyzedWord]:
        return iter(self._words)

    def __len__(self) -> int:
        return len(self._words)

    def __bool__(self) -> bool:
        return bool(self._words)

    def __contains__(self, item: AnalyzedWord | str) -> bool:
        if isinstance(item, str):
            item = analyze(item)
        return item in self._words

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WordSet):
            return NotImplemented
        return frozenset(self._words) == frozenset(other._words)

    def __hash__(self) -> int:
        return hash(frozenset(self._words))

    def __repr__(self) -> str:
        inner = ", ".join(w.serialize() for w in self.canonical())
        return f"WordSet({{{inner}}})"

    def canonical(self) -> tuple[AnalyzedWord, ...]:
        """Members in a deterministic order (by serialized form)."""
        return tuple(sorted(self._words, key=lambda w: w.serialize()))


EMPTY_WORDSET = WordSet()

# letters that stand for long vowels and stay bare in fully pointed text
_LONG_VOWEL_CARRIERS = frozenset({"ا", "آ", "ى", "و", "ي"})


def guideline_diacritized(word: AnalyzedWord) -> bool:
    """Editorial full-diacritization check, last letter included.

    Every letter must carry a vowel mark except bare long-vowel carriers
    (alef, alef-madda, alef-maqsura, and unmarked waw/ya); a shadda makes
    a carrier consonantal, so shadda-only letters still need their vowel.
    This is the validation notion; the compatibility algebra's
    ``fully_diacritized`` (every cluster vowelled) is stricter.
    """
    for letter, cluster in zip(word.skeleton, word.clusters):
        if cluster.vowel is None and not (
            letter in _LONG_VOWEL_CARRIERS and not cluster.shadda
        ):
            return False
    return True


def sets_compatible(w1: WordSet, w2: WordSet) -> bool:
    """True iff some word of ``w1`` is diacritic-compatible with some word of ``w2``.

    Empty sets are compatible with nothing; how emptiness feeds into the
    mapping heuristics is decided by the mapping engine, not here.
    """
    if not w1 or not w2:
        return False
    by_key: dict[str, list[AnalyzedWord]] = {}
    for w in w2:
        by_key.setdefault(skeleton_key(w), []).append(w)
    for w in w1:
        for candidate in by_key.get(skeleton_key(w), ()):
            if diacritic_compatible(w, candidate):
                return True
    return False
