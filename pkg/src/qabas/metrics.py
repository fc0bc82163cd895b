"""Evaluation utilities: Cohen's Kappa agreement and per-POS coverage tables."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping

from .errors import EmptyItemSet, ItemSetMismatch, NotEnoughAnnotators, UnknownLexicon
from .lemmas import QABAS_LEXICON_ID
from .postags import FUNCTIONAL_TAGS, PosTag

# label used when an annotator rejects a pair outright; rejection is part
# of the decision space and therefore counts as a label
REJECT_LABEL = "REJECT"


@dataclass(frozen=True)
class AnnotationRecord:
    """One label by one annotator on one item (a lemma pair)."""

    item: str
    annotator: str
    label: str


@dataclass(frozen=True)
class KappaResult:
    """Kappa with its ingredients; ``degenerate`` marks the p_e == 1 case."""

    value: float
    observed: float
    expected: float
    degenerate: bool = False

    def __float__(self) -> float:
        return self.value


def cohen_kappa(a: Mapping[str, str], b: Mapping[str, str]) -> KappaResult:
    """Unweighted Cohen's Kappa between two annotators over one item set.

    kappa = (p_o - p_e) / (1 - p_e) with p_e the product-of-marginals
    chance agreement.  When both marginals are concentrated on a single
    shared label (p_e == 1) the formula is undefined; the result is 1 for
    complete agreement, 0 otherwise, flagged as degenerate.
    """
    if not a or not b:
        raise EmptyItemSet("both annotators must label at least one item")
    if set(a) != set(b):
        raise ItemSetMismatch("annotators labeled different item sets")
    n = len(a)
    observed = sum(1 for item in a if a[item] == b[item]) / n
    counts_a = Counter(a.values())
    counts_b = Counter(b.values())
    expected = sum(
        (counts_a[label] / n) * (counts_b[label] / n) for label in counts_a
    )
    if expected == 1.0:
        return KappaResult(
            value=1.0 if observed == 1.0 else 0.0,
            observed=observed,
            expected=expected,
            degenerate=True,
        )
    return KappaResult(
        value=(observed - expected) / (1.0 - expected),
        observed=observed,
        expected=expected,
    )


def pairwise_iaa(
    labelings: Mapping[str, Mapping[str, str]]
) -> dict[tuple[str, str], float]:
    """Kappa for every unordered annotator pair, reported to two decimals."""
    if len(labelings) < 2:
        raise NotEnoughAnnotators("pairwise agreement needs at least two annotators")
    names = sorted(labelings)
    items = set(labelings[names[0]])
    for name in names[1:]:
        if set(labelings[name]) != items:
            raise ItemSetMismatch(f"annotator {name!r} labeled a different item set")
    return {
        (x, y): round(cohen_kappa(labelings[x], labelings[y]).value, 2)
        for x, y in combinations(names, 2)
    }


def records_to_labelings(
    records,
) -> dict[str, dict[str, str]]:
    """Group annotation records per annotator; later records overwrite earlier."""
    out: dict[str, dict[str, str]] = {}
    for rec in records:
        out.setdefault(rec.annotator, {})[rec.item] = rec.label
    return out


def labelings_from_mapping_rows(rows) -> dict[str, dict[str, str]]:
    """IAA input from mappings-TSV rows, restricted per annotator.

    Each row's reviewer is the annotator, the unordered lemma pair is the
    item, and the label is the relation code (or REJECT for rejected
    rows).  Undecided rows and rows without a reviewer are skipped.
    ``rows`` are the dicts produced by ``formats.parse_mapping_row``.
    """
    records = []
    for fields in rows:
        if fields["reviewer"] is None or fields["status"].value == "AUTO":
            continue
        refs = sorted((str(fields["l1"]), str(fields["l2"])))
        label = (
            REJECT_LABEL
            if fields["status"].value == "REJECTED"
            else fields["relation"].value
        )
        records.append(
            AnnotationRecord(item="|".join(refs), annotator=fields["reviewer"], label=label)
        )
    return records_to_labelings(records)


# --- per-POS coverage ---------------------------------------------------------

NOMINAL_ROW_ORDER = (
    PosTag.NOUN,
    PosTag.NOUN_PROP,
    PosTag.ADJ,
    PosTag.ADJ_COMP,
    PosTag.ADJ_NUM,
    PosTag.NOUN_NUM,
    PosTag.NOUN_QUANT,
    PosTag.DIGIT,
    PosTag.NOUN_VOICE,
    PosTag.ABBREV,
)

VERB_ROW_ORDER = (PosTag.PV, PosTag.IV, PosTag.CV, PosTag.PV_PASS, PosTag.IV_PASS)


@dataclass(frozen=True)
class CoverageRow:
    key: str
    counts: tuple[int, ...]


@dataclass
class PosCoverage:
    """Lemma counts per POS tag and category, one column per source.

    Shaped like the published coverage table: per-tag rows for nominals
    and verbs, one aggregate row for the 26 functional tags, subtotals
    per category, and a grand total.  ``untagged`` counts lemmas without
    POS, which cannot be placed in the table.
    """

    sources: list[str]
    nominal_rows: list[CoverageRow] = field(default_factory=list)
    nominal_total: CoverageRow | None = None
    verb_rows: list[CoverageRow] = field(default_factory=list)
    verb_total: CoverageRow | None = None
    functional_total: CoverageRow | None = None
    grand_total: CoverageRow | None = None
    untagged: tuple[int, ...] = ()


def pos_coverage(graph, sources: list[str]) -> PosCoverage:
    """Tabulate lemma counts per POS for the given lexicons plus the canonical one."""
    for lexicon_id in sources:
        if lexicon_id not in graph.lexicons:
            raise UnknownLexicon(f"lexicon {lexicon_id!r} is not ingested")
    columns = list(sources)
    if QABAS_LEXICON_ID not in columns:
        columns.append(QABAS_LEXICON_ID)

    per_source: dict[str, Counter] = {c: Counter() for c in columns}
    untagged = {c: 0 for c in columns}
    for lemma in graph.external.values():
        if lemma.lexicon_id not in per_source or lemma.lexicon_id == QABAS_LEXICON_ID:
            continue
        if lemma.pos is None:
            untagged[lemma.lexicon_id] += 1
        else:
            per_source[lemma.lexicon_id][lemma.pos] += 1
    if QABAS_LEXICON_ID in per_source:
        for lemma in graph.canonical.values():
            per_source[QABAS_LEXICON_ID][lemma.pos] += 1

    def row(key: str, tags) -> CoverageRow:
        return CoverageRow(
            key=key,
            counts=tuple(sum(per_source[c][t] for t in tags) for c in columns),
        )

    report = PosCoverage(sources=columns)
    report.nominal_rows = [row(t.value, (t,)) for t in NOMINAL_ROW_ORDER]
    report.nominal_total = row("NOMINAL", NOMINAL_ROW_ORDER)
    report.verb_rows = [row(t.value, (t,)) for t in VERB_ROW_ORDER]
    report.verb_total = row("VERB", VERB_ROW_ORDER)
    report.functional_total = row("FUNCTIONAL", tuple(FUNCTIONAL_TAGS))
    report.grand_total = row("TOTAL", tuple(PosTag))
    report.untagged = tuple(untagged[c] for c in columns)
    return report
