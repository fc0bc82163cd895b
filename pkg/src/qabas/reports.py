"""Small result records shared by ingestion, linking, and insertion APIs."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


@dataclass
class IngestReport:
    """Outcome of one ingest run; rejected rows carry (row number, reason)."""

    accepted: int = 0
    rejected: list[tuple[int, str]] = field(default_factory=list)

    @property
    def rejected_count(self) -> int:
        return len(self.rejected)

    @property
    def total(self) -> int:
        return self.accepted + len(self.rejected)


@dataclass
class InsertResult:
    """Id of a stored lemma plus any non-fatal warnings."""

    id: int
    warnings: list[str] = field(default_factory=list)


@dataclass
class LinkReport:
    """Resolution counts for one corpus-linking run."""

    corpus_id: str
    tokens_resolved: int = 0
    tokens_unresolved: int = 0
    lemmas_resolved: int = 0
    lemmas_unresolved: int = 0
    ambiguities: list["Ambiguity"] = field(default_factory=list)

    @property
    def token_total(self) -> int:
        return self.tokens_resolved + self.tokens_unresolved

    @property
    def lemma_total(self) -> int:
        return self.lemmas_resolved + self.lemmas_unresolved


@dataclass(frozen=True)
class Ambiguity:
    """One source lemma reference that maps to several canonical lemmas."""

    source_ref: str
    chosen: int
    alternatives: tuple[int, ...]
    token_count: int


@dataclass(frozen=True)
class CorpusCoverage:
    """Mapped/total counts with display percentages (half-up integers)."""

    corpus_id: str
    tokens_total: int
    tokens_mapped: int
    lemmas_total: int
    lemmas_mapped: int
    empty: bool = False

    @property
    def token_ratio(self) -> Fraction:
        return Fraction(self.tokens_mapped, self.tokens_total) if self.tokens_total else Fraction(0)

    @property
    def lemma_ratio(self) -> Fraction:
        return Fraction(self.lemmas_mapped, self.lemmas_total) if self.lemmas_total else Fraction(0)

    @property
    def token_percent(self) -> int:
        return percent_display(self.tokens_mapped, self.tokens_total)

    @property
    def lemma_percent(self) -> int:
        return percent_display(self.lemmas_mapped, self.lemmas_total)


def percent_display(numerator: int, denominator: int) -> int:
    """Percentage rounded half-up to the nearest integer; 0/0 displays as 0."""
    if denominator == 0:
        return 0
    return (200 * numerator + denominator) // (2 * denominator)
