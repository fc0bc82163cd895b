"""Heuristics, blocked candidate generation, and the review workflow."""

import random

import pytest

from qabas import (
    ExternalLemma,
    LexiconDescriptor,
    NounForms,
    PosTag,
    QabasGraph,
    Relation,
    VerbForms,
    WordSet,
    automap,
    filter_by_precision,
    h1_verb_match,
    h2_noun_match,
    ingest_lexicon,
    manual_map,
    relation_counts,
    review,
)
from qabas.errors import (
    DuplicatePair,
    InvalidDecision,
    NotANounPair,
    NotAVerbPair,
    SelfMapping,
    UnknownCorrespondence,
    UnknownLemma,
    UnknownLexicon,
    UnknownRelation,
)
from qabas.lemmas import LemmaRef, form_profile
from qabas.mapping import (
    DEFAULT_PRECISIONS,
    MappingCorrespondence,
    Provenance,
    Status,
    brute_force_pairs,
    match_pair,
    pair_key,
)
from qabas.orthography import sets_compatible

from .fixtures import kataba_lemmas, yawmi_graph
from .genutil import random_lexicon


def rule_eval_oracle(l1, l2, required, optional) -> bool:
    """Direct transcription of the heuristic rule for fixture verification."""
    p1, p2 = form_profile(l1), form_profile(l2)
    a, b = getattr(p1, required), getattr(p2, required)
    if not (a and b and sets_compatible(a, b)):
        return False
    for name in optional:
        x, y = getattr(p1, name), getattr(p2, name)
        if x and y and not sets_compatible(x, y):
            return False
    return True


class TestH1:
    def test_paper_example(self):
        l1, l2 = kataba_lemmas()
        assert h1_verb_match(l1, l2) is True
        assert h1_verb_match(l1, l2) == rule_eval_oracle(
            l1, l2, "pv", ("roots", "iv", "cv")
        )

    def test_empty_required_set(self):
        l1, _ = kataba_lemmas()
        bare = ExternalLemma(
            "lex2", "k2", PosTag.PV, verb_forms=VerbForms(iv=WordSet(["يكتب"]))
        )
        assert h1_verb_match(l1, bare) is False

    def test_root_mismatch(self):
        l1, l2 = kataba_lemmas()
        conflicting = ExternalLemma(
            lexicon_id=l2.lexicon_id,
            local_id=l2.local_id,
            pos=l2.pos,
            verb_forms=l2.verb_forms,
            roots=WordSet(["قرأ"]),
        )
        assert h1_verb_match(l1, conflicting) is False
        assert not rule_eval_oracle(l1, conflicting, "pv", ("roots", "iv", "cv"))

    def test_not_a_verb_pair(self):
        noun = ExternalLemma(
            "lex", "n1", PosTag.NOUN, noun_forms=NounForms(singulars=WordSet(["كتاب"]))
        )
        with pytest.raises(NotAVerbPair):
            h1_verb_match(noun, noun)

    def test_unknown_pos_with_pv_participates(self):
        l1, l2 = kataba_lemmas()
        untagged = ExternalLemma(
            "lex3", "u1", None, verb_forms=VerbForms(pv=WordSet(["كَتبَ"]))
        )
        assert h1_verb_match(l1, untagged) is True


class TestH2:
    def test_worked_example_pairs(self):
        graph = yawmi_graph()
        modern = graph.external[LemmaRef("modern", "m1")]
        ghani = graph.external[LemmaRef("ghani", "g1")]
        sama = graph.external[LemmaRef("sama", "s1")]
        assert h2_noun_match(modern, ghani) is True
        assert h2_noun_match(ghani, sama) is True
        assert h2_noun_match(modern, sama) is False

    def test_modern_sama_skeletons_differ(self):
        # oracle for the negative case: no compatible singular pair exists
        graph = yawmi_graph()
        modern = graph.external[LemmaRef("modern", "m1")]
        sama = graph.external[LemmaRef("sama", "s1")]
        assert not sets_compatible(
            modern.noun_forms.singulars, sama.noun_forms.singulars
        )

    def test_not_a_noun_pair(self):
        l1, l2 = kataba_lemmas()
        with pytest.raises(NotANounPair):
            h2_noun_match(l1, l2)

    def test_symmetry(self):
        graph = yawmi_graph()
        lemmas = list(graph.external.values())
        for a in lemmas:
            for b in lemmas:
                assert h2_noun_match(a, b) == h2_noun_match(b, a)


class TestAutomap:
    def test_yawmi_exactly_two_pairs(self):
        graph = yawmi_graph()
        found = set()
        for source, target in (
            ("modern", "ghani"),
            ("ghani", "sama"),
            ("modern", "sama"),
        ):
            batch = automap(graph, source, target)
            for corr in batch.candidates:
                found.add(frozenset({corr.l1.lexicon, corr.l2.lexicon}))
        assert found == {
            frozenset({"modern", "ghani"}),
            frozenset({"ghani", "sama"}),
        }

    def test_candidates_are_auto_r1(self):
        graph = yawmi_graph()
        batch = automap(graph, "modern", "ghani")
        assert len(batch.candidates) == 1
        corr = batch.candidates[0]
        assert corr.status is Status.AUTO
        assert corr.relation is Relation.R1
        assert corr.provenance is Provenance.HEURISTIC_H2
        assert corr.id in graph.correspondences

    def test_disjoint_lexicons(self):
        graph = QabasGraph()
        ingest_lexicon(
            graph,
            LexiconDescriptor("a", "A"),
            ["a1\t\tNOUN\t\t\t\t\t\t\t\tكتاب\t\t\t\t\t\t\t"],
        )
        ingest_lexicon(
            graph,
            LexiconDescriptor("b", "B"),
            ["b1\t\tNOUN\t\t\t\t\t\t\t\tقلم\t\t\t\t\t\t\t"],
        )
        batch = automap(graph, "a", "b")
        assert batch.candidates == []
        assert batch.blocks == 0

    def test_unknown_lexicon(self):
        graph = yawmi_graph()
        with pytest.raises(UnknownLexicon):
            automap(graph, "modern", "missing")

    def test_skips_existing_pairs(self):
        graph = yawmi_graph()
        first = automap(graph, "modern", "ghani")
        assert len(first.candidates) == 1
        again = automap(graph, "modern", "ghani")
        assert again.candidates == []

    def test_rejected_pairs_not_reemitted(self):
        graph = yawmi_graph()
        corr = automap(graph, "modern", "ghani").candidates[0]
        review(graph, corr.id, reject=True, reviewer="a1")
        again = automap(graph, "modern", "ghani")
        assert again.candidates == []

    def test_equals_brute_force_on_random_fixture(self):
        rng = random.Random(1234)
        graph = QabasGraph()
        graph.register_lexicon(LexiconDescriptor("left", "Left"))
        graph.register_lexicon(LexiconDescriptor("right", "Right"))
        for lemma in random_lexicon(rng, "left", 60):
            graph.add_external(lemma)
        for lemma in random_lexicon(rng, "right", 60):
            graph.add_external(lemma)
        expected = brute_force_pairs(graph, "left", "right")
        batch = automap(graph, "left", "right")
        got = {pair_key(c.l1, c.l2) for c in batch.candidates}
        assert got == expected

    def test_deterministic_order(self):
        graph = yawmi_graph()
        batch = automap(graph, "ghani", "sama")
        refs = [(str(c.l1), str(c.l2)) for c in batch.candidates]
        assert refs == sorted(refs)


class TestReview:
    def test_confirm_assigns_relation(self):
        graph = yawmi_graph()
        corr = automap(graph, "modern", "ghani").candidates[0]
        updated = review(graph, corr.id, relation=Relation.R2, reviewer="a1")
        assert updated.status is Status.CONFIRMED
        assert updated.relation is Relation.R2
        assert updated.precision == 90
        assert updated.reviewer == "a1"
        assert updated.audit[-1].status is Status.AUTO

    def test_reject_then_no_reemission(self):
        graph = yawmi_graph()
        corr = automap(graph, "ghani", "sama").candidates[0]
        updated = review(graph, corr.id, reject=True, reviewer="a2")
        assert updated.status is Status.REJECTED
        assert automap(graph, "ghani", "sama").candidates == []
        assert updated.id in graph.correspondences  # retained for audit

    def test_unknown_correspondence(self):
        graph = yawmi_graph()
        with pytest.raises(UnknownCorrespondence):
            review(graph, 999, relation=Relation.R1, reviewer="a1")

    def test_re_review_confirmed_keeps_audit(self):
        graph = yawmi_graph()
        corr = automap(graph, "modern", "ghani").candidates[0]
        review(graph, corr.id, relation=Relation.R1, reviewer="a1")
        updated = review(graph, corr.id, relation=Relation.R4, reviewer="a2")
        assert updated.relation is Relation.R4
        assert [a.status for a in updated.audit] == [Status.AUTO, Status.CONFIRMED]

    def test_rejected_is_final(self):
        graph = yawmi_graph()
        corr = automap(graph, "modern", "ghani").candidates[0]
        review(graph, corr.id, reject=True, reviewer="a1")
        with pytest.raises(InvalidDecision):
            review(graph, corr.id, relation=Relation.R1, reviewer="a1")

    def test_confirm_requires_relation(self):
        graph = yawmi_graph()
        corr = automap(graph, "modern", "ghani").candidates[0]
        with pytest.raises(InvalidDecision):
            review(graph, corr.id, reviewer="a1")


class TestManualMap:
    def test_manual_confirmed(self):
        graph = yawmi_graph()
        corr = manual_map(
            graph,
            LemmaRef("modern", "m1"),
            LemmaRef("sama", "s1"),
            Relation.R1,
            reviewer="a3",
        )
        assert corr.status is Status.CONFIRMED
        assert corr.provenance is Provenance.MANUAL

    def test_duplicate_pair(self):
        graph = yawmi_graph()
        manual_map(graph, LemmaRef("modern", "m1"), LemmaRef("sama", "s1"), Relation.R1, "a3")
        with pytest.raises(DuplicatePair):
            manual_map(
                graph, LemmaRef("sama", "s1"), LemmaRef("modern", "m1"), Relation.R2, "a3"
            )

    def test_self_mapping(self):
        graph = yawmi_graph()
        with pytest.raises(SelfMapping):
            manual_map(
                graph, LemmaRef("modern", "m1"), LemmaRef("modern", "m1"), Relation.R1, "a3"
            )

    def test_unknown_lemma(self):
        graph = yawmi_graph()
        with pytest.raises(UnknownLemma):
            manual_map(
                graph, LemmaRef("modern", "m1"), LemmaRef("sama", "nope"), Relation.R1, "a3"
            )

    def test_manual_after_rejection_allowed(self):
        graph = yawmi_graph()
        corr = automap(graph, "modern", "ghani").candidates[0]
        review(graph, corr.id, reject=True, reviewer="a1")
        replacement = manual_map(graph, corr.l1, corr.l2, Relation.R5, "a2")
        assert replacement.status is Status.CONFIRMED
        live = [
            c
            for c in graph.corrs_for_pair(pair_key(corr.l1, corr.l2))
            if c.status is not Status.REJECTED
        ]
        assert len(live) == 1


class TestFilterAndCounts:
    def _one_of_each(self, graph):
        corrs = []
        for i, relation in enumerate(Relation):
            corrs.append(
                MappingCorrespondence(
                    id=i + 1,
                    l1=LemmaRef("a", f"x{i}"),
                    l2=LemmaRef("b", f"y{i}"),
                    relation=relation,
                    status=Status.CONFIRMED,
                    provenance=Provenance.MANUAL,
                    reviewer="a1",
                    timestamp=i + 1,
                )
            )
        return corrs

    def test_threshold_100(self):
        corrs = self._one_of_each(QabasGraph())
        subset = {c.relation for c in filter_by_precision(corrs, 100)}
        assert subset == {Relation.R1}

    def test_threshold_0_is_identity(self):
        corrs = self._one_of_each(QabasGraph())
        assert filter_by_precision(corrs, 0) == corrs

    def test_threshold_60_keeps_r1_to_r5(self):
        corrs = [c for c in self._one_of_each(QabasGraph()) if c.relation.value.startswith("R")]
        kept = {c.relation for c in filter_by_precision(corrs, 60)}
        assert kept == {Relation.R1, Relation.R2, Relation.R3, Relation.R4, Relation.R5}

    def test_monotone_in_threshold(self):
        corrs = self._one_of_each(QabasGraph())
        previous = set(c.id for c in filter_by_precision(corrs, 0))
        for threshold in range(0, 101, 5):
            current = set(c.id for c in filter_by_precision(corrs, threshold))
            assert current <= previous
            previous = current

    def test_out_of_range_threshold(self):
        with pytest.raises(ValueError):
            filter_by_precision([], 101)

    def test_draft_table_weights(self):
        expected = {
            Relation.R1: 100,
            Relation.R2: 90,
            Relation.R3: 80,
            Relation.R4: 70,
            Relation.R5: 60,
            Relation.R6: 40,
            Relation.X1: 50,
            Relation.X2: 30,
            Relation.X3: 30,
            Relation.X4: 20,
            Relation.X5: 10,
        }
        assert dict(DEFAULT_PRECISIONS) == expected

    def test_relation_counts_fixture(self):
        graph = QabasGraph()
        for corr in self._one_of_each(graph):
            graph.add_correspondence(corr)
        # 3 R1 + 1 R6 confirmed, everything else rejected
        for corr in list(graph.correspondences.values()):
            if corr.relation not in (Relation.R1, Relation.R6):
                review(graph, corr.id, reject=True, reviewer="a1")
        for i, local in enumerate(("p", "q")):
            graph.add_correspondence(
                MappingCorrespondence(
                    id=100 + i,
                    l1=LemmaRef("a", local),
                    l2=LemmaRef("b", local),
                    relation=Relation.R1,
                    status=Status.CONFIRMED,
                    provenance=Provenance.MANUAL,
                    reviewer="a1",
                    timestamp=100 + i,
                )
            )
        counts = relation_counts(graph)
        assert counts[Relation.R1] == 3
        assert counts[Relation.R6] == 1
        assert sum(counts.values()) == 4

    def test_relation_counts_empty(self):
        counts = relation_counts(QabasGraph())
        assert set(counts) == set(Relation)
        assert sum(counts.values()) == 0

    def test_scope_filter(self):
        graph = yawmi_graph()
        c1 = automap(graph, "modern", "ghani").candidates[0]
        c2 = automap(graph, "ghani", "sama").candidates[0]
        review(graph, c1.id, relation=Relation.R1, reviewer="a1")
        review(graph, c2.id, relation=Relation.R2, reviewer="a1")
        scoped = relation_counts(graph, scope=("ghani", "modern"))
        assert scoped[Relation.R1] == 1 and scoped[Relation.R2] == 0


class TestRemovalMonotonicity:
    def test_removing_a_non_sole_witness_never_flips_false_to_true(self):
        # contrapositive of sets_compatible union monotonicity: while every
        # form set keeps at least one member, dropping words cannot create
        # a match that was not there
        rng = random.Random(314)
        checked = 0
        for _ in range(300):
            l1 = random_lexicon(rng, "a", 1)[0]
            l2 = random_lexicon(rng, "b", 1)[0]
            if match_pair(l1, l2) is not None:
                continue
            profile = form_profile(l1)
            for slot in ("pv", "iv", "cv", "singulars", "duals", "plurals", "roots"):
                words = list(getattr(profile, slot))
                if len(words) < 2:
                    continue
                shrunk_set = WordSet(words[1:])
                shrunk = ExternalLemma(
                    lexicon_id=l1.lexicon_id,
                    local_id=l1.local_id,
                    pos=l1.pos,
                    noun_forms=NounForms(
                        singulars=shrunk_set if slot == "singulars" else l1.noun_forms.singulars,
                        duals=shrunk_set if slot == "duals" else l1.noun_forms.duals,
                        plurals=shrunk_set if slot == "plurals" else l1.noun_forms.plurals,
                    ),
                    verb_forms=VerbForms(
                        pv=shrunk_set if slot == "pv" else l1.verb_forms.pv,
                        iv=shrunk_set if slot == "iv" else l1.verb_forms.iv,
                        cv=shrunk_set if slot == "cv" else l1.verb_forms.cv,
                    ),
                    roots=shrunk_set if slot == "roots" else l1.roots,
                )
                assert match_pair(shrunk, l2) is None
                checked += 1
        assert checked > 10  # the generator must actually exercise the property


class TestPairUniqueness:
    def test_at_most_one_live_per_pair_after_review_sequence(self):
        rng = random.Random(99)
        graph = yawmi_graph()
        for source, target in (("modern", "ghani"), ("ghani", "sama"), ("modern", "sama")):
            automap(graph, source, target)
        for _ in range(200):
            ids = list(graph.correspondences)
            corr_id = rng.choice(ids)
            corr = graph.correspondences[corr_id]
            action = rng.random()
            try:
                if corr.status is Status.REJECTED or action < 0.2:
                    manual_map(
                        graph,
                        LemmaRef("modern", "m1"),
                        LemmaRef("sama", "s1"),
                        rng.choice(list(Relation)),
                        "a1",
                    )
                elif action < 0.6:
                    review(graph, corr_id, relation=rng.choice(list(Relation)), reviewer="a1")
                else:
                    review(graph, corr_id, reject=True, reviewer="a1")
            except (DuplicatePair, InvalidDecision):
                pass
            by_pair = {}
            for c in graph.correspondences.values():
                if c.status is not Status.REJECTED:
                    by_pair.setdefault(c.pair, []).append(c)
            assert all(len(v) == 1 for v in by_pair.values())
