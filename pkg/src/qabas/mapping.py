"""Mapping correspondences between lemmas: taxonomy, heuristics, review workflow.

A correspondence is a typed, statused link <l1, l2, relation> between two
lemmas in different resources.  Candidates are discovered automatically by
two per-category heuristics and then confirmed, re-labeled, or rejected by
reviewers:

  h1 (verbs):  perfective sets must both be non-empty and compatible;
               roots, imperfective, and imperative sets must be compatible
               whenever both sides have them.
  h2 (nouns):  the same with singular sets required and roots, duals,
               plurals checked when present on both sides.

An empty set on either side makes the optional condition vacuous: the
required sets are the perfectives (h1) and singulars (h2) only.

Candidate generation is blocked on the undiacritized skeletons of the
required forms, which is safe because compatible words always share a
skeleton; ``automap`` is therefore equivalent to the all-pairs scan.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping

from .errors import (
    DuplicatePair,
    InvalidDecision,
    NotANounPair,
    NotAVerbPair,
    SelfMapping,
    UnknownCorrespondence,
    UnknownLemma,
    UnknownLexicon,
    UnknownRelation,
    ValidationFailure,
)
from .lemmas import (
    ExternalLemma,
    FormProfile,
    LemmaRef,
    QabasLemma,
    form_profile,
    ref_sort_key,
)
from .orthography import WordSet, sets_compatible, skeleton_key
from .postags import PosCategory


class Relation(str, Enum):
    """Core confirmable relations R1-R6 plus the extended taxonomy X1-X5."""

    R1 = "R1"  # same exactly
    R2 = "R2"  # same, singular-plural difference
    R3 = "R3"  # same, singular-dual difference
    R4 = "R4"  # same, male-female difference
    R5 = "R5"  # same, case difference
    R6 = "R6"  # same, but proper noun
    X1 = "X1"  # same forms, some meanings shared
    X2 = "X2"  # different wording, same meaning
    X3 = "X3"  # different, same meanings
    X4 = "X4"  # different, synonymous in some meanings
    X5 = "X5"  # different, derivational reference between meanings


RELATION_LABELS = {
    Relation.R1: "Same Exactly",
    Relation.R2: "Same, Singular-Plural difference",
    Relation.R3: "Same, Singular-Dual difference",
    Relation.R4: "Same, Male-Female difference",
    Relation.R5: "Same, Case difference",
    Relation.R6: "Same, but Proper Noun",
    Relation.X1: "Same inflections, some meanings",
    Relation.X2: "Different wording, same meaning",
    Relation.X3: "Different, same meanings",
    Relation.X4: "Different, synonym in some meanings",
    Relation.X5: "Different, derivational reference",
}

# X2 appears in the counts taxonomy without a stated weight; it is
# configurable and defaults to 30.
X2_DEFAULT_PRECISION = 30

DEFAULT_PRECISIONS: Mapping[Relation, int] = {
    Relation.R1: 100,
    Relation.R2: 90,
    Relation.R3: 80,
    Relation.R4: 70,
    Relation.R5: 60,
    Relation.R6: 40,
    Relation.X1: 50,
    Relation.X2: X2_DEFAULT_PRECISION,
    Relation.X3: 30,
    Relation.X4: 20,
    Relation.X5: 10,
}

CORE_RELATIONS = frozenset(
    {Relation.R1, Relation.R2, Relation.R3, Relation.R4, Relation.R5, Relation.R6}
)

# provisional label shown on undecided candidates ("same automatically"),
# rendered as R1 while status is AUTO
AUTO_PROVISIONAL_LABEL = "same automatically"


def relation_from_code(code: str) -> Relation:
    try:
        return Relation(code)
    except ValueError:
        raise UnknownRelation(f"unknown relation code {code!r}") from None


class Status(str, Enum):
    AUTO = "AUTO"
    CONFIRMED = "CONFIRMED"
    REJECTED = "REJECTED"


class Provenance(str, Enum):
    HEURISTIC_H1 = "HEURISTIC_H1"
    HEURISTIC_H2 = "HEURISTIC_H2"
    MANUAL = "MANUAL"
    # adoption of an external lemma auto-records a link to its source;
    # counted as automatic provenance alongside the heuristics
    ADOPTION = "ADOPTION"


AUTOMATIC_PROVENANCES = frozenset(
    {Provenance.HEURISTIC_H1, Provenance.HEURISTIC_H2, Provenance.ADOPTION}
)


@dataclass(frozen=True)
class AuditEntry:
    status: Status
    relation: Relation
    reviewer: str | None
    timestamp: int


@dataclass(frozen=True)
class MappingCorrespondence:
    id: int
    l1: LemmaRef
    l2: LemmaRef
    relation: Relation
    status: Status
    provenance: Provenance
    reviewer: str | None = None
    timestamp: int = 0
    audit: tuple[AuditEntry, ...] = ()

    @property
    def precision(self) -> int:
        return DEFAULT_PRECISIONS[self.relation]

    @property
    def pair(self) -> tuple[LemmaRef, LemmaRef]:
        return pair_key(self.l1, self.l2)

    def involves(self, ref: LemmaRef) -> bool:
        return self.l1 == ref or self.l2 == ref


def pair_key(r1: LemmaRef, r2: LemmaRef) -> tuple[LemmaRef, LemmaRef]:
    """Order-insensitive identity of a lemma pair."""
    return (r1, r2) if r1 <= r2 else (r2, r1)


@dataclass
class CandidateBatch:
    source: str
    target: str
    candidates: list[MappingCorrespondence]
    pairs_compared: int = 0
    blocks: int = 0
    elapsed: float = 0.0


# --- heuristics -------------------------------------------------------------


def _verb_evidence(p: FormProfile) -> bool:
    return p.category is PosCategory.VERB or (p.category is None and bool(p.pv))


def _noun_evidence(p: FormProfile) -> bool:
    return p.category is PosCategory.NOMINAL or (
        p.category is None and bool(p.singulars)
    )


def _h1(p1: FormProfile, p2: FormProfile) -> bool:
    if not (p1.pv and p2.pv and sets_compatible(p1.pv, p2.pv)):
        return False
    for a, b in ((p1.roots, p2.roots), (p1.iv, p2.iv), (p1.cv, p2.cv)):
        if a and b and not sets_compatible(a, b):
            return False
    return True


def _h2(p1: FormProfile, p2: FormProfile) -> bool:
    if not (p1.singulars and p2.singulars and sets_compatible(p1.singulars, p2.singulars)):
        return False
    for a, b in ((p1.roots, p2.roots), (p1.duals, p2.duals), (p1.plurals, p2.plurals)):
        if a and b and not sets_compatible(a, b):
            return False
    return True


def h1_verb_match(l1: ExternalLemma | QabasLemma, l2: ExternalLemma | QabasLemma) -> bool:
    """Verb heuristic over two lemmas; raises NotAVerbPair without verbal evidence."""
    p1, p2 = form_profile(l1), form_profile(l2)
    if not (_verb_evidence(p1) and _verb_evidence(p2)):
        raise NotAVerbPair("both lemmas need verb category or a perfective set")
    return _h1(p1, p2)


def h2_noun_match(l1: ExternalLemma | QabasLemma, l2: ExternalLemma | QabasLemma) -> bool:
    """Noun heuristic over two lemmas; raises NotANounPair without nominal evidence."""
    p1, p2 = form_profile(l1), form_profile(l2)
    if not (_noun_evidence(p1) and _noun_evidence(p2)):
        raise NotANounPair("both lemmas need nominal category or a singular set")
    return _h2(p1, p2)


def match_pair(l1, l2) -> Provenance | None:
    """Evaluate h1 then h2 on one pair, category rules included.

    Returns the provenance of the first heuristic that fires, or None.
    Cross-category pairs (verb vs. nominal) are never compared; lemmas
    without POS join whichever heuristic their form sets license.
    """
    p1, p2 = form_profile(l1), form_profile(l2)
    if _verb_evidence(p1) and _verb_evidence(p2) and _h1(p1, p2):
        return Provenance.HEURISTIC_H1
    if _noun_evidence(p1) and _noun_evidence(p2) and _h2(p1, p2):
        return Provenance.HEURISTIC_H2
    return None


# --- candidate generation ---------------------------------------------------


def _required_form_keys(p: FormProfile) -> set[str]:
    """Blocking keys: skeletons of the heuristics' required sets (PV, singulars)."""
    keys = {skeleton_key(w) for w in p.pv}
    keys.update(skeleton_key(w) for w in p.singulars)
    return keys


def _lemmas_of(graph, lexicon_id: str) -> list:
    from .lemmas import QABAS_LEXICON_ID

    if lexicon_id == QABAS_LEXICON_ID:
        return list(graph.canonical.values())
    return graph.external_of(lexicon_id)


def automap(graph, source: str, target: str) -> CandidateBatch:
    """Discover candidate correspondences between two ingested lexicons.

    Only pairs sharing a blocking key are evaluated; pairs that already
    carry any correspondence (pending, confirmed, or rejected) are skipped.
    Matching pairs are stored as AUTO candidates in deterministic
    (source id, target id) order and returned as one batch.
    """
    for lex in (source, target):
        if lex not in graph.lexicons:
            raise UnknownLexicon(f"lexicon {lex!r} is not ingested")
    started = time.perf_counter()
    src = sorted(_lemmas_of(graph, source), key=lambda l: ref_sort_key(l.ref))
    tgt = sorted(_lemmas_of(graph, target), key=lambda l: ref_sort_key(l.ref))

    profiles = {l.ref: form_profile(l) for l in src}
    profiles.update({l.ref: form_profile(l) for l in tgt})

    tgt_index: dict[str, list] = {}
    for lemma in tgt:
        for key in _required_form_keys(profiles[lemma.ref]):
            tgt_index.setdefault(key, []).append(lemma)
    src_keys: set[str] = set()
    for lemma in src:
        src_keys.update(_required_form_keys(profiles[lemma.ref]))
    blocks = len(src_keys & set(tgt_index))

    found: list[tuple[LemmaRef, LemmaRef, Provenance]] = []
    seen: set[tuple[LemmaRef, LemmaRef]] = set()
    pairs_compared = 0
    for s in src:
        ps = profiles[s.ref]
        partners: dict[LemmaRef, object] = {}
        for key in _required_form_keys(ps):
            for t in tgt_index.get(key, ()):
                partners.setdefault(t.ref, t)
        for t_ref in sorted(partners, key=ref_sort_key):
            if s.ref == t_ref:
                continue
            pk = pair_key(s.ref, t_ref)
            if pk in seen:
                continue
            seen.add(pk)
            if graph.corrs_for_pair(pk):
                continue
            pairs_compared += 1
            pt = profiles[t_ref]
            provenance = None
            if _verb_evidence(ps) and _verb_evidence(pt) and _h1(ps, pt):
                provenance = Provenance.HEURISTIC_H1
            elif _noun_evidence(ps) and _noun_evidence(pt) and _h2(ps, pt):
                provenance = Provenance.HEURISTIC_H2
            if provenance is not None:
                found.append((s.ref, t_ref, provenance))

    found.sort(key=lambda item: (ref_sort_key(item[0]), ref_sort_key(item[1])))
    candidates = []
    for l1, l2, provenance in found:
        corr = MappingCorrespondence(
            id=graph.allocate_corr_id(),
            l1=l1,
            l2=l2,
            relation=Relation.R1,
            status=Status.AUTO,
            provenance=provenance,
            timestamp=graph.tick(),
        )
        graph.add_correspondence(corr)
        candidates.append(corr)
    return CandidateBatch(
        source=source,
        target=target,
        candidates=candidates,
        pairs_compared=pairs_compared,
        blocks=blocks,
        elapsed=time.perf_counter() - started,
    )


def brute_force_pairs(graph, source: str, target: str) -> set[tuple[LemmaRef, LemmaRef]]:
    """All-pairs reference evaluation of the heuristics (no blocking, no store).

    The oracle counterpart of :func:`automap`; exposed for equivalence
    testing and sanity checks on small lexicons.
    """
    pairs = set()
    for s in _lemmas_of(graph, source):
        for t in _lemmas_of(graph, target):
            if s.ref == t.ref:
                continue
            if graph.corrs_for_pair(pair_key(s.ref, t.ref)):
                continue
            if match_pair(s, t) is not None:
                pairs.add(pair_key(s.ref, t.ref))
    return pairs


# --- review workflow --------------------------------------------------------


def review(
    graph,
    correspondence_id: int,
    *,
    relation: Relation | None = None,
    reject: bool = False,
    reviewer: str,
) -> MappingCorrespondence:
    """Confirm (with a relation) or reject one candidate.

    AUTO candidates are decided; CONFIRMED ones may be re-reviewed, with
    the previous decision kept on the audit trail.  REJECTED pairs stay
    rejected and are excluded from future automap emission.
    """
    corr = graph.correspondences.get(correspondence_id)
    if corr is None:
        raise UnknownCorrespondence(f"no correspondence {correspondence_id}")
    if not reviewer:
        raise ValidationFailure([("reviewer", "a reviewer id is required")])
    if corr.status is Status.REJECTED:
        raise InvalidDecision("rejected correspondences are kept for audit only")
    if reject:
        new_status, new_relation = Status.REJECTED, corr.relation
    else:
        if relation is None:
            raise InvalidDecision("confirming requires a relation")
        if not isinstance(relation, Relation):
            raise UnknownRelation(f"unknown relation {relation!r}")
        new_status, new_relation = Status.CONFIRMED, relation
    updated = replace(
        corr,
        status=new_status,
        relation=new_relation,
        reviewer=reviewer,
        timestamp=graph.tick(),
        audit=corr.audit
        + (AuditEntry(corr.status, corr.relation, corr.reviewer, corr.timestamp),),
    )
    graph.replace_correspondence(updated)
    return updated


def manual_map(
    graph,
    l1: LemmaRef,
    l2: LemmaRef,
    relation: Relation,
    reviewer: str,
) -> MappingCorrespondence:
    """Record a reviewer-asserted correspondence directly as CONFIRMED."""
    if l1 == l2:
        raise SelfMapping(f"{l1} cannot be mapped to itself")
    for ref in (l1, l2):
        if not graph.lemma_exists(ref):
            raise UnknownLemma(f"no lemma {ref}")
    if not isinstance(relation, Relation):
        raise UnknownRelation(f"unknown relation {relation!r}")
    if not reviewer:
        raise ValidationFailure([("reviewer", "a reviewer id is required")])
    if graph.non_rejected_for_pair(pair_key(l1, l2)) is not None:
        raise DuplicatePair(f"{l1} and {l2} already have a live correspondence")
    corr = MappingCorrespondence(
        id=graph.allocate_corr_id(),
        l1=l1,
        l2=l2,
        relation=relation,
        status=Status.CONFIRMED,
        provenance=Provenance.MANUAL,
        reviewer=reviewer,
        timestamp=graph.tick(),
    )
    graph.add_correspondence(corr)
    return corr


# --- filtering and statistics ------------------------------------------------


def filter_by_precision(
    correspondences: Iterable[MappingCorrespondence],
    threshold: float,
    precisions: Mapping[Relation, int] | None = None,
) -> list[MappingCorrespondence]:
    """Keep correspondences whose relation weight is at least ``threshold``."""
    if not 0 <= threshold <= 100:
        raise ValueError(f"threshold must be within [0, 100], got {threshold}")
    weights = DEFAULT_PRECISIONS if precisions is None else precisions
    return [c for c in correspondences if weights[c.relation] >= threshold]


def relation_counts(
    graph, scope: tuple[str, str] | None = None
) -> dict[Relation, int]:
    """Confirmed correspondences per relation, optionally for one lexicon pair."""
    counts = {relation: 0 for relation in Relation}
    scope_key = frozenset(scope) if scope is not None else None
    for corr in graph.correspondences.values():
        if corr.status is not Status.CONFIRMED:
            continue
        if scope_key is not None:
            if frozenset((corr.l1.lexicon, corr.l2.lexicon)) != scope_key:
                continue
        counts[corr.relation] += 1
    return counts
