"""Corpus ingestion, linking through confirmed correspondences, and coverage."""

import pytest

from qabas import (
    CorpusDescriptor,
    PosTag,
    QabasGraph,
    QabasLemma,
    Relation,
    analyze,
    coverage_report,
    ingest_corpus,
    insert_manual_lemma,
    link_corpus,
    unresolved_lemma_frequencies,
)
from qabas.corpus import CorpusToken
from qabas.errors import DuplicateCorpusId, UnknownCorpus
from qabas.lemmas import LemmaRef
from qabas.mapping import MappingCorrespondence, Provenance, Status
from qabas.reports import percent_display

from .fixtures import (
    ATB_TOKENS,
    ATB_TOKENS_MAPPED,
    ATB_TOKEN_PERCENT,
    LEMMAS_MAPPED,
    LEMMAS_TOTAL,
    LEMMA_TOTAL_PERCENT,
)


def corpus_rows(n_tokens, ref_of):
    rows = []
    for i in range(n_tokens):
        lex, local = ref_of(i)
        rows.append(f"{i // 10}\t{i % 10}\tكلمة\t{lex}\t{local}")
    return rows


def add_confirmed(graph, corr_id, external_ref, qabas_id, relation=Relation.R1):
    graph.add_correspondence(
        MappingCorrespondence(
            id=corr_id,
            l1=LemmaRef("qabas", str(qabas_id)),
            l2=external_ref,
            relation=relation,
            status=Status.CONFIRMED,
            provenance=Provenance.MANUAL,
            reviewer="a1",
            timestamp=corr_id,
        )
    )


def add_qabas(graph, lemma_id):
    graph.add_canonical(
        QabasLemma(id=lemma_id, spellings=(analyze("كَلِمَةٌ"),), pos=PosTag.NOUN)
    )


class TestIngestCorpus:
    def test_five_token_fixture(self):
        graph = QabasGraph()
        report = ingest_corpus(
            graph,
            CorpusDescriptor("c1", "Corpus"),
            corpus_rows(5, lambda i: ("sama", f"s{i}")),
        )
        assert report.accepted == 5 and not report.rejected
        assert all(t.resolved_qabas_id is None for t in graph.tokens["c1"])
        assert graph.corpora["c1"].token_count == 5
        assert graph.corpora["c1"].unique_lemma_count == 5

    def test_missing_lemma_ref(self):
        graph = QabasGraph()
        report = ingest_corpus(
            graph, CorpusDescriptor("c1", "C"), ["0\t0\tكلمة\tsama\t", "0\t1\tكلمة\t\t-"]
        )
        assert report.accepted == 0
        assert len(report.rejected) == 2
        assert all("lemma reference" in reason for _, reason in report.rejected)

    def test_empty_stream(self):
        graph = QabasGraph()
        report = ingest_corpus(graph, CorpusDescriptor("c1", "C"), [])
        assert report.accepted == 0 and report.rejected == []

    def test_duplicate_corpus_id(self):
        graph = QabasGraph()
        ingest_corpus(graph, CorpusDescriptor("c1", "C"), [])
        with pytest.raises(DuplicateCorpusId):
            ingest_corpus(graph, CorpusDescriptor("c1", "C"), [])

    def test_duplicate_position_rejected(self):
        graph = QabasGraph()
        rows = ["0\t0\tكلمة\tsama\ts1", "0\t0\tكلمة\tsama\ts2"]
        report = ingest_corpus(graph, CorpusDescriptor("c1", "C"), rows)
        assert report.accepted == 1 and report.rejected_count == 1

    def test_extra_columns_ignored(self):
        graph = QabasGraph()
        report = ingest_corpus(
            graph, CorpusDescriptor("c1", "C"), ["0\t0\tكلمة\tsama\ts1\tPOS=NOUN\textra"]
        )
        assert report.accepted == 1


class TestLinkCorpus:
    def _graph_with_mappings(self):
        graph = QabasGraph()
        for qid in range(1, 9):
            add_qabas(graph, qid)
            add_confirmed(graph, qid, LemmaRef("sama", f"s{qid}"), qid)
        # 10 tokens: s1..s8 mapped, s9/s10 not
        ingest_corpus(
            graph,
            CorpusDescriptor("c1", "C"),
            corpus_rows(10, lambda i: ("sama", f"s{i + 1}")),
        )
        return graph

    def test_eighty_percent_fixture(self):
        graph = self._graph_with_mappings()
        report = link_corpus(graph, "c1")
        assert report.tokens_resolved == 8
        assert report.tokens_unresolved == 2
        assert report.lemmas_resolved == 8
        assert report.lemmas_unresolved == 2
        assert coverage_report(graph, "c1").token_percent == 80

    def test_empty_whitelist(self):
        graph = self._graph_with_mappings()
        report = link_corpus(graph, "c1", frozenset())
        assert report.tokens_resolved == 0
        assert report.tokens_unresolved == 10

    def test_idempotent(self):
        graph = self._graph_with_mappings()
        link_corpus(graph, "c1")
        before = list(graph.tokens["c1"])
        second = link_corpus(graph, "c1")
        assert graph.tokens["c1"] == before
        assert second.tokens_resolved == 8

    def test_resolved_plus_unresolved_is_total(self):
        graph = self._graph_with_mappings()
        report = link_corpus(graph, "c1")
        assert report.token_total == len(graph.tokens["c1"])

    def test_whitelist_shrink_monotone(self):
        graph = self._graph_with_mappings()
        # make one mapping R2 so whitelists differ
        corr = graph.correspondences[1]
        graph.replace_correspondence(
            MappingCorrespondence(
                id=1, l1=corr.l1, l2=corr.l2, relation=Relation.R2,
                status=Status.CONFIRMED, provenance=corr.provenance,
                reviewer="a1", timestamp=corr.timestamp,
            )
        )
        full = link_corpus(graph, "c1").tokens_resolved
        only_r1 = link_corpus(graph, "c1", frozenset({Relation.R1})).tokens_resolved
        assert only_r1 <= full
        assert only_r1 == full - 1

    def test_unknown_corpus(self):
        graph = QabasGraph()
        with pytest.raises(UnknownCorpus):
            link_corpus(graph, "nope")

    def test_every_resolution_is_whitelisted_and_confirmed(self):
        graph = self._graph_with_mappings()
        link_corpus(graph, "c1")
        live = {
            (c.l2, int(c.l1.local_id))
            for c in graph.correspondences.values()
            if c.status is Status.CONFIRMED
        }
        for tok in graph.tokens["c1"]:
            if tok.resolved_qabas_id is not None:
                assert (tok.source_ref, tok.resolved_qabas_id) in live

    def test_ambiguity_resolution(self):
        graph = QabasGraph()
        for qid in (1, 2, 3):
            add_qabas(graph, qid)
        ref = LemmaRef("sama", "s1")
        add_confirmed(graph, 1, ref, 1, Relation.R2)   # precision 90
        add_confirmed(graph, 2, ref, 2, Relation.R1)   # precision 100 <- wins
        add_confirmed(graph, 3, ref, 3, Relation.R1)   # tie on precision, higher id
        ingest_corpus(graph, CorpusDescriptor("c1", "C"), ["0\t0\tكلمة\tsama\ts1"])
        report = link_corpus(graph, "c1")
        tok = graph.tokens["c1"][0]
        assert tok.resolved_qabas_id == 2  # highest precision, lowest id tie-break
        assert len(report.ambiguities) == 1
        amb = report.ambiguities[0]
        assert amb.chosen == 2 and set(amb.alternatives) == {1, 2, 3}

    def test_direct_qabas_refs_resolve(self):
        graph = QabasGraph()
        add_qabas(graph, 7)
        ingest_corpus(
            graph, CorpusDescriptor("c1", "C"), ["0\t0\tكلمة\tqabas\t7", "0\t1\tكلمة\tqabas\t8"]
        )
        report = link_corpus(graph, "c1")
        assert report.tokens_resolved == 1
        assert report.tokens_unresolved == 1

    def test_unresolved_frequencies(self):
        graph = self._graph_with_mappings()
        # add two more tokens for s9 so it outranks s10
        graph.tokens["c1"].extend(
            [
                CorpusToken("c1", 5, 0, "كلمة", LemmaRef("sama", "s9")),
                CorpusToken("c1", 5, 1, "كلمة", LemmaRef("sama", "s9")),
            ]
        )
        link_corpus(graph, "c1")
        freqs = unresolved_lemma_frequencies(graph, "c1")
        assert freqs[0] == ("sama:s9", 3)
        assert freqs[1] == ("sama:s10", 1)


class TestCoverage:
    def test_paper_percentages(self):
        assert percent_display(ATB_TOKENS_MAPPED, ATB_TOKENS) == ATB_TOKEN_PERCENT
        assert percent_display(LEMMAS_MAPPED, LEMMAS_TOTAL) == LEMMA_TOTAL_PERCENT
        assert percent_display(34253, 34253) == 100

    def test_half_up_rounding(self):
        assert percent_display(825, 1000) == 83  # 82.5 rounds up
        assert percent_display(824, 1000) == 82

    def test_empty_corpus(self):
        graph = QabasGraph()
        ingest_corpus(graph, CorpusDescriptor("c0", "Empty"), [])
        cov = coverage_report(graph, "c0")
        assert cov.empty is True
        assert cov.token_percent == 0 and cov.lemma_percent == 0

    def test_exact_ratio_retained(self):
        graph = QabasGraph()
        add_qabas(graph, 1)
        add_confirmed(graph, 1, LemmaRef("sama", "s0"), 1)
        ingest_corpus(
            graph,
            CorpusDescriptor("c1", "C"),
            corpus_rows(3, lambda i: ("sama", f"s{0 if i == 0 else i}")),
        )
        link_corpus(graph, "c1")
        cov = coverage_report(graph, "c1")
        from fractions import Fraction

        assert cov.token_ratio == Fraction(1, 3)
        assert cov.token_percent == 33
