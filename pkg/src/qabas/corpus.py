"""Corpus ingestion and token-level lemma resolution.

Corpora arrive pre-annotated: every token names the lemma it was tagged
with in its source lexicon.  Linking replaces those source references
with canonical lemma ids wherever a confirmed, whitelisted correspondence
exists; everything else stays unresolved and is surfaced in frequency
lists for manual follow-up.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace

from .errors import DuplicateCorpusId, MalformedRow, UnknownCorpus
from .lemmas import QABAS_LEXICON_ID, LemmaRef
from .mapping import CORE_RELATIONS, DEFAULT_PRECISIONS, Relation, Status
from .reports import Ambiguity, CorpusCoverage, IngestReport, LinkReport


@dataclass(frozen=True)
class CorpusToken:
    """One annotated token; ``source_ref.lexicon`` is empty for raw lemma strings."""

    corpus_id: str
    sentence: int
    token: int
    surface: str
    source_ref: LemmaRef
    resolved_qabas_id: int | None = None

    @property
    def has_lexicon_ref(self) -> bool:
        return bool(self.source_ref.lexicon)


@dataclass(frozen=True)
class CorpusDescriptor:
    corpus_id: str
    name: str
    variety: str = "MSA"
    token_count: int = 0
    unique_lemma_count: int = 0


def _parse_row(corpus_id: str, cells: list[str], row_no: int) -> CorpusToken:
    if len(cells) < 5:
        raise MalformedRow(row_no, f"expected at least 5 columns, got {len(cells)}")
    try:
        sentence = int(cells[0])
        token = int(cells[1])
    except ValueError:
        raise MalformedRow(row_no, "sentence and token indexes must be integers") from None
    surface = cells[2].strip()
    if not surface:
        raise MalformedRow(row_no, "missing surface form")
    lexicon = cells[3].strip()
    local = cells[4].strip()
    if lexicon in ("", "-"):
        lexicon = ""
    if local in ("", "-"):
        local = ""
    if not local:
        raise MalformedRow(row_no, "missing lemma reference")
    return CorpusToken(
        corpus_id=corpus_id,
        sentence=sentence,
        token=token,
        surface=surface,
        source_ref=LemmaRef(lexicon, local),
    )


def ingest_corpus(graph, descriptor: CorpusDescriptor, rows) -> IngestReport:
    """Store a corpus's tokens unresolved; malformed rows are reported, not dropped."""
    if descriptor.corpus_id in graph.corpora:
        raise DuplicateCorpusId(f"corpus {descriptor.corpus_id!r} already ingested")
    report = IngestReport()
    tokens: list[CorpusToken] = []
    seen_positions: set[tuple[int, int]] = set()
    for row_no, row in enumerate(rows, start=1):
        if isinstance(row, str):
            line = row.rstrip("\n")
            if not line.strip():
                continue
            cells = line.split("\t")
        else:
            cells = [str(c) for c in row]
        if row_no == 1 and cells[:2] == ["sentence_idx", "token_idx"]:
            continue
        try:
            tok = _parse_row(descriptor.corpus_id, cells, row_no)
            if (tok.sentence, tok.token) in seen_positions:
                raise MalformedRow(row_no, f"duplicate token position {tok.sentence}/{tok.token}")
        except MalformedRow as exc:
            report.rejected.append((exc.row_no, exc.reason))
            continue
        seen_positions.add((tok.sentence, tok.token))
        tokens.append(tok)
        report.accepted += 1
    unique_refs = {t.source_ref for t in tokens}
    graph.add_corpus(
        replace(descriptor, token_count=len(tokens), unique_lemma_count=len(unique_refs)),
        tokens,
    )
    return report


def _resolution_map(graph, whitelist: frozenset[Relation]):
    """source ref -> (chosen qabas id, all distinct candidate ids).

    Built from confirmed, whitelisted correspondences that join an
    external lemma to a canonical one.  Preference: highest relation
    precision, ties broken by the lowest canonical id.
    """
    options: dict[LemmaRef, list[tuple[int, int]]] = {}
    for corr in graph.correspondences.values():
        if corr.status is not Status.CONFIRMED or corr.relation not in whitelist:
            continue
        sides = {corr.l1.lexicon == QABAS_LEXICON_ID, corr.l2.lexicon == QABAS_LEXICON_ID}
        if sides != {True, False}:
            continue
        if corr.l1.lexicon == QABAS_LEXICON_ID:
            canonical, other = corr.l1, corr.l2
        else:
            canonical, other = corr.l2, corr.l1
        options.setdefault(other, []).append(
            (DEFAULT_PRECISIONS[corr.relation], int(canonical.local_id))
        )
    resolved: dict[LemmaRef, tuple[int, tuple[int, ...]]] = {}
    for ref, candidates in options.items():
        best = max(candidates, key=lambda pc: (pc[0], -pc[1]))
        distinct = tuple(sorted({qid for _, qid in candidates}))
        resolved[ref] = (best[1], distinct)
    return resolved


def link_corpus(
    graph, corpus_id: str, whitelist: frozenset[Relation] | None = None
) -> LinkReport:
    """Resolve every token's source reference through confirmed correspondences.

    Resolution is recomputed from scratch, so re-running with the same
    store state changes nothing, and shrinking the whitelist never grows
    the resolved set.  Ambiguous references (several canonical targets)
    are resolved deterministically and reported.
    """
    if corpus_id not in graph.corpora:
        raise UnknownCorpus(f"corpus {corpus_id!r} is not ingested")
    if whitelist is None:
        whitelist = CORE_RELATIONS
    resolution = _resolution_map(graph, frozenset(whitelist))

    report = LinkReport(corpus_id=corpus_id)
    ref_counts: Counter[LemmaRef] = Counter()
    updated: list[CorpusToken] = []
    for tok in graph.tokens[corpus_id]:
        ref_counts[tok.source_ref] += 1
        qabas_id: int | None = None
        if tok.source_ref.lexicon == QABAS_LEXICON_ID:
            # corpora already carrying canonical ids resolve to themselves
            maybe = int(tok.source_ref.local_id) if tok.source_ref.local_id.isdigit() else None
            qabas_id = maybe if maybe is not None and maybe in graph.canonical else None
        elif tok.source_ref in resolution:
            qabas_id = resolution[tok.source_ref][0]
        updated.append(replace(tok, resolved_qabas_id=qabas_id))
        if qabas_id is None:
            report.tokens_unresolved += 1
        else:
            report.tokens_resolved += 1
    graph.set_tokens(corpus_id, updated)

    resolved_refs = {t.source_ref for t in updated if t.resolved_qabas_id is not None}
    report.lemmas_resolved = len(resolved_refs)
    report.lemmas_unresolved = len(ref_counts) - len(resolved_refs)
    for ref, (chosen, distinct) in sorted(
        resolution.items(), key=lambda item: str(item[0])
    ):
        if len(distinct) > 1 and ref in ref_counts:
            report.ambiguities.append(
                Ambiguity(
                    source_ref=str(ref),
                    chosen=chosen,
                    alternatives=distinct,
                    token_count=ref_counts[ref],
                )
            )
    return report


def coverage_report(graph, corpus_id: str) -> CorpusCoverage:
    """Token and unique-lemma resolution coverage for one corpus."""
    if corpus_id not in graph.corpora:
        raise UnknownCorpus(f"corpus {corpus_id!r} is not ingested")
    tokens = graph.tokens[corpus_id]
    refs = {t.source_ref for t in tokens}
    resolved_refs = {t.source_ref for t in tokens if t.resolved_qabas_id is not None}
    return CorpusCoverage(
        corpus_id=corpus_id,
        tokens_total=len(tokens),
        tokens_mapped=sum(1 for t in tokens if t.resolved_qabas_id is not None),
        lemmas_total=len(refs),
        lemmas_mapped=len(resolved_refs),
        empty=not tokens,
    )


def unresolved_lemma_frequencies(graph, corpus_id: str) -> list[tuple[str, int]]:
    """Unresolved source lemmas by token frequency, most frequent first.

    This is the worklist for deciding which missing lemmas to add manually.
    """
    if corpus_id not in graph.corpora:
        raise UnknownCorpus(f"corpus {corpus_id!r} is not ingested")
    counts: Counter[str] = Counter()
    for tok in graph.tokens[corpus_id]:
        if tok.resolved_qabas_id is None:
            counts[str(tok.source_ref)] += 1
    return sorted(counts.items(), key=lambda item: (-item[1], item[0]))
