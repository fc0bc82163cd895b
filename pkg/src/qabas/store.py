"""Lexicon ingestion, adoption into the canonical lexicon, and lemma search.

External lexicons are read-only source material ingested from TSV; the
canonical lexicon grows by adopting external lemmas (transferring their
features) and by manual insertion.  Strict diacritization validation
defaults ON for canonical entries and OFF for external sources, which
are not always self-consistent.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import (
    AnalysisError,
    DuplicateLexiconId,
    InvalidQuery,
    MalformedRow,
    UnknownLemma,
    ValidationFailure,
)
from .formats import is_lexicon_header, parse_external_row, parse_qabas_row, split_line
from .graph import QabasGraph
from .lemmas import (
    QABAS_LEXICON_ID,
    ExternalLemma,
    LemmaRef,
    LexiconDescriptor,
    QabasLemma,
    form_profile,
    qabas_ref,
    ref_sort_key,
)
from .mapping import (
    MappingCorrespondence,
    Provenance,
    Relation,
    Status,
    pair_key,
)
from .orthography import (
    WordSet,
    analyze,
    diacritic_compatible,
    guideline_diacritized,
    sets_compatible,
)
from .postags import (
    Aspect,
    Augmentation,
    Gender,
    Number,
    Person,
    PosCategory,
    PosTag,
    Transitivity,
)
from .reports import IngestReport, InsertResult


def ingest_lexicon(
    graph: QabasGraph,
    descriptor: LexiconDescriptor,
    rows: Iterable[str | Sequence[str]],
    *,
    canonical: bool = False,
    strict: bool | None = None,
    replace_existing: bool = False,
) -> IngestReport:
    """Ingest one lexicon from TSV rows; invalid rows are reported, never dropped.

    ``rows`` may be raw lines or pre-split cell sequences; a header row is
    skipped.  Re-ingesting an already registered lexicon requires
    ``replace_existing`` (replace semantics: previous lemmas are dropped
    first), otherwise DuplicateLexiconId is raised.
    """
    if strict is None:
        strict = canonical
    if canonical and descriptor.lexicon_id != QABAS_LEXICON_ID:
        raise ValidationFailure(
            [("lexicon_id", f"the canonical lexicon must be {QABAS_LEXICON_ID!r}")]
        )
    if descriptor.lexicon_id in graph.lexicons and not replace_existing:
        raise DuplicateLexiconId(
            f"lexicon {descriptor.lexicon_id!r} is already registered"
        )

    report = IngestReport()
    accepted_external: list[ExternalLemma] = []
    accepted_canonical: list[QabasLemma] = []
    seen_ids: set[str] = set()
    for row_no, row in enumerate(rows, start=1):
        if isinstance(row, str):
            if not row.strip():
                continue
            cells = split_line(row)
        else:
            cells = [str(c) for c in row]
        if row_no == 1 and is_lexicon_header(cells):
            continue
        try:
            if canonical:
                lemma, proper = parse_qabas_row(cells, row_no)
                violations = lemma.validate(strict=strict, proper_assertion=proper)
                if violations:
                    raise MalformedRow(
                        row_no, "; ".join(f"{f}: {m}" for f, m in violations)
                    )
                key = str(lemma.id)
            else:
                lemma = parse_external_row(cells, descriptor.lexicon_id, row_no)
                if strict:
                    not_full = [
                        w.serialize()
                        for w in lemma.spellings
                        if not guideline_diacritized(w)
                    ]
                    if not_full:
                        raise MalformedRow(
                            row_no, f"spellings not fully diacritized: {not_full}"
                        )
                key = lemma.local_id
            if key in seen_ids:
                raise MalformedRow(row_no, f"duplicate local_id {key!r}")
        except MalformedRow as exc:
            report.rejected.append((exc.row_no, exc.reason))
            continue
        seen_ids.add(key)
        if canonical:
            accepted_canonical.append(lemma)
        else:
            accepted_external.append(lemma)
        report.accepted += 1

    with graph.writer():
        if replace_existing and descriptor.lexicon_id in graph.lexicons:
            graph.drop_lexicon_lemmas(descriptor.lexicon_id)
        graph.register_lexicon(
            replace(descriptor, lemma_count=report.accepted),
            replace=replace_existing,
        )
        for lemma in accepted_external:
            graph.add_external(lemma)
        for lemma in accepted_canonical:
            graph.add_canonical(lemma)
    return report


# --- adoption ------------------------------------------------------------------


_FREE_FEATURE_ENUMS = {
    "gender": Gender,
    "number": Number,
    "person": Person,
    "augmentation": Augmentation,
    "transitivity": Transitivity,
}

_ADOPTABLE_FIELDS = frozenset(
    {
        "spellings",
        "pos",
        "gender",
        "number",
        "aspect",
        "person",
        "roots",
        "augmentation",
        "transitivity",
        "dialect_tag",
        "msa_counterpart",
    }
)


def adopt_as_qabas(
    graph: QabasGraph,
    lexicon_id: str,
    local_id: str,
    overrides: dict | None = None,
    *,
    strict: bool = True,
    proper_assertion: bool = False,
) -> QabasLemma:
    """Create a canonical lemma from an external one, transferring its features.

    Number, gender, root, transitivity, augmentation, POS, and category
    come from the source (free features are parsed into typed fields);
    ``overrides`` take precedence.  A correspondence back to the source
    is recorded automatically (status AUTO, provenance ADOPTION).
    """
    source = graph.external.get(LemmaRef(lexicon_id, local_id))
    if source is None:
        raise UnknownLemma(f"no external lemma {lexicon_id}:{local_id}")
    overrides = dict(overrides or {})
    unknown = set(overrides) - _ADOPTABLE_FIELDS
    if unknown:
        raise ValidationFailure([(f, "unknown override field") for f in sorted(unknown)])

    violations: list[tuple[str, str]] = []
    fields: dict = {}
    fields["pos"] = overrides.get("pos", source.pos)
    if fields["pos"] is None:
        violations.append(("pos", "source lemma has no POS; an override is required"))
    for name, enum_cls in _FREE_FEATURE_ENUMS.items():
        if name in overrides:
            fields[name] = overrides[name]
            continue
        raw = source.free_features.get(name)
        if raw is None:
            fields[name] = enum_cls.NA
        else:
            try:
                fields[name] = enum_cls(raw)
            except ValueError:
                violations.append((name, f"source value {raw!r} is not a valid {name}"))
                fields[name] = enum_cls.NA
    if violations and fields["pos"] is None:
        raise ValidationFailure(violations)

    pos: PosTag = fields["pos"]
    if "aspect" in overrides:
        fields["aspect"] = overrides["aspect"]
    elif pos is not None and pos.category is PosCategory.VERB:
        fields["aspect"] = Aspect(pos.value)
    else:
        fields["aspect"] = Aspect.NA

    if "spellings" in overrides:
        spellings = tuple(overrides["spellings"])
    elif source.spellings:
        spellings = source.spellings
    else:
        profile = form_profile(source)
        citation = profile.pv if pos is not None and pos.category is PosCategory.VERB else profile.singulars
        spellings = citation.canonical()
    if not spellings:
        violations.append(("spellings", "source lemma has no citation form to adopt"))

    fields["roots"] = overrides.get("roots", source.roots)
    fields["dialect_tag"] = overrides.get("dialect_tag")
    fields["msa_counterpart"] = overrides.get("msa_counterpart")

    if violations:
        raise ValidationFailure(violations)

    lemma = QabasLemma(id=0, spellings=spellings, **fields)
    problems = lemma.validate(strict=strict, proper_assertion=proper_assertion)
    if problems:
        raise ValidationFailure(problems)

    with graph.writer():
        lemma = lemma.with_id(graph.allocate_qabas_id())
        graph.add_canonical(lemma)
        corr = MappingCorrespondence(
            id=graph.allocate_corr_id(),
            l1=lemma.ref,
            l2=source.ref,
            relation=Relation.R1,
            status=Status.AUTO,
            provenance=Provenance.ADOPTION,
            timestamp=graph.tick(),
        )
        graph.add_correspondence(corr)
    return lemma


def insert_manual_lemma(
    graph: QabasGraph,
    lemma: QabasLemma,
    *,
    strict: bool = True,
    proper_assertion: bool = False,
) -> InsertResult:
    """Store a hand-written canonical lemma; the id on the input is ignored.

    Returns the assigned id plus a non-fatal duplicate warning when an
    existing lemma of the same POS has a diacritic-compatible first
    spelling.
    """
    problems = lemma.validate(strict=strict, proper_assertion=proper_assertion)
    if problems:
        raise ValidationFailure(problems)
    warnings = []
    first = lemma.spellings[0]
    for other in graph.canonical.values():
        if other.pos is lemma.pos and diacritic_compatible(first, other.spellings[0]):
            warnings.append(
                f"DuplicateSpellingWarning: first spelling is compatible with "
                f"{other.ref} ({other.spellings[0].serialize()})"
            )
            break
    with graph.writer():
        stored = lemma.with_id(graph.allocate_qabas_id())
        graph.add_canonical(stored)
    return InsertResult(id=stored.id, warnings=warnings)


# --- search -------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaSummary:
    """What search and the review queue show for one lemma."""

    ref: str
    lexicon: str
    local_id: str
    spellings: tuple[str, ...]
    pos: str | None
    forms: dict[str, tuple[str, ...]]
    roots: tuple[str, ...]
    mapped: bool


@dataclass
class SearchPage:
    items: list[LemmaSummary]
    total: int
    page: int
    page_size: int


def _match_words(lemma) -> WordSet:
    """Every word a query can hit: spellings plus (for external) all form sets."""
    if isinstance(lemma, QabasLemma):
        return WordSet(lemma.spellings)
    words = list(lemma.spellings)
    for ws in (
        lemma.noun_forms.singulars,
        lemma.noun_forms.duals,
        lemma.noun_forms.plurals,
        lemma.verb_forms.pv,
        lemma.verb_forms.iv,
        lemma.verb_forms.cv,
    ):
        words.extend(ws)
    return WordSet(words)


def lemma_summary(graph: QabasGraph, lemma, mapped_refs: set[LemmaRef] | None = None) -> LemmaSummary:
    if mapped_refs is None:
        mapped_refs = mapped_lemma_refs(graph)
    profile = form_profile(lemma)
    forms = {
        name: tuple(w.serialize() for w in getattr(profile, name).canonical())
        for name in ("singulars", "duals", "plurals", "pv", "iv", "cv")
    }
    return LemmaSummary(
        ref=str(lemma.ref),
        lexicon=lemma.ref.lexicon,
        local_id=lemma.ref.local_id,
        spellings=tuple(w.serialize() for w in lemma.spellings),
        pos=lemma.pos.value if lemma.pos is not None else None,
        forms={k: v for k, v in forms.items() if v},
        roots=tuple(" ".join(w.segments()) for w in lemma.roots.canonical()),
        mapped=lemma.ref in mapped_refs,
    )


def mapped_lemma_refs(graph: QabasGraph) -> set[LemmaRef]:
    """Refs participating in at least one live (non-rejected) correspondence."""
    refs: set[LemmaRef] = set()
    for corr in graph.correspondences.values():
        if corr.status is not Status.REJECTED:
            refs.add(corr.l1)
            refs.add(corr.l2)
    return refs


def search_lemmas(
    graph: QabasGraph,
    query: str,
    *,
    pos: PosTag | None = None,
    lexicon: str | None = None,
    mapped: bool | None = None,
    page: int = 1,
    page_size: int = 50,
) -> SearchPage:
    """Find lemmas whose spellings or forms are diacritic-compatible with the query.

    Results are ordered by (lexicon_id, local_id) for stable pagination.
    An empty query browses everything (subject to filters); non-Arabic
    queries raise InvalidQuery.
    """
    query = query.strip()
    query_set: WordSet | None = None
    if query:
        try:
            query_set = WordSet([analyze(query)])
        except AnalysisError as exc:
            raise InvalidQuery(f"query must be Arabic text: {exc}") from None

    candidates = []
    for lemma in graph.external.values():
        if lexicon is not None and lemma.lexicon_id != lexicon:
            continue
        candidates.append(lemma)
    if lexicon is None or lexicon == QABAS_LEXICON_ID:
        candidates.extend(graph.canonical.values())

    mapped_refs = mapped_lemma_refs(graph)
    hits = []
    for lemma in candidates:
        if pos is not None and lemma.pos is not pos:
            continue
        is_mapped = lemma.ref in mapped_refs
        if mapped is not None and is_mapped is not mapped:
            continue
        if query_set is not None and not sets_compatible(query_set, _match_words(lemma)):
            continue
        hits.append(lemma)
    hits.sort(key=lambda l: ref_sort_key(l.ref))

    start = (page - 1) * page_size
    page_items = [
        lemma_summary(graph, lemma, mapped_refs) for lemma in hits[start : start + page_size]
    ]
    return SearchPage(items=page_items, total=len(hits), page=page, page_size=page_size)
