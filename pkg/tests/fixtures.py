"""Shared fixtures: the worked-example lexicons and the published count tables.

The three-lexicon fixture transcribes the يَوْمِيّ example verbatim: the
same singular/dual/plural sets and roots, per lexicon, that the worked
example lists.  The verb fixture carries the كَتَبَ perfective pair with
its imperfective/imperative/root sets.
"""

from __future__ import annotations

from qabas import (
    ExternalLemma,
    LexiconDescriptor,
    NounForms,
    PosTag,
    QabasGraph,
    VerbForms,
    WordSet,
    ingest_lexicon,
)
from qabas.formats import LEXICON_COLUMNS

HEADER = "\t".join(LEXICON_COLUMNS)

# --- the يومي worked example -------------------------------------------------

YAWMI_MODERN = "يَوْميّ"
YAWMI_GHANI_1 = "يَوْمِيٌّ"
YAWMI_GHANI_2 = "يَوْمِيّةٌ"
YAWMI_SAMA = "يَوْمِيَّة"
YAWMI_SAMA_CITATION = "يَوْمِيّ"
YAWMI_ROOT = "ي و م"

SAMA_DUALS = ["يَوْمِيَّتَي", "يَوْمِيَّتان", "يَوْمِيَّتا", "يَوْمِيَّتَيْن"]
SAMA_PLURALS = ["يَوْمِيّا", "يَوْمِيَّي", "يَوْمِيّان", "يَوْمِيَّيْن"]


def _row(local_id, spellings="", pos="", roots="", singulars="", duals="",
         plurals="", pv="", iv="", cv="", gender="", number="", aspect="",
         person="", augmentation="", transitivity="", dialect="", msa=""):
    cells = dict(zip(LEXICON_COLUMNS, [""] * len(LEXICON_COLUMNS)))
    cells.update(
        local_id=local_id, spellings=spellings, pos=pos, roots=roots,
        singulars=singulars, duals=duals, plurals=plurals, pv=pv, iv=iv, cv=cv,
        gender=gender, number=number, aspect=aspect, person=person,
        augmentation=augmentation, transitivity=transitivity,
        dialect=dialect, msa_counterpart=msa,
    )
    return "\t".join(cells[c] for c in LEXICON_COLUMNS)


MODERN_TSV = "\n".join([
    HEADER,
    _row("m1", spellings=YAWMI_MODERN, pos="NOUN",
         singulars=YAWMI_MODERN, roots=YAWMI_ROOT),
]) + "\n"

GHANI_TSV = "\n".join([
    HEADER,
    _row("g1", spellings=YAWMI_GHANI_1, pos="NOUN",
         singulars=f"{YAWMI_GHANI_1};{YAWMI_GHANI_2}", roots=YAWMI_ROOT),
]) + "\n"

SAMA_TSV = "\n".join([
    HEADER,
    _row("s1", spellings=YAWMI_SAMA_CITATION, pos="NOUN",
         singulars=YAWMI_SAMA,
         duals=";".join(SAMA_DUALS),
         plurals=";".join(SAMA_PLURALS)),
]) + "\n"


def yawmi_graph() -> QabasGraph:
    """Fresh graph with the Modern/Ghani/SAMA يومي entries ingested."""
    graph = QabasGraph()
    for lexicon_id, name, tsv in (
        ("modern", "Modern", MODERN_TSV),
        ("ghani", "Ghani", GHANI_TSV),
        ("sama", "SAMA", SAMA_TSV),
    ):
        report = ingest_lexicon(
            graph,
            LexiconDescriptor(lexicon_id=lexicon_id, name=name),
            tsv.splitlines(),
        )
        assert report.accepted == 1 and not report.rejected
    return graph


# --- the كتب verb pair ---------------------------------------------------------

KATABA_FULL = "كَتَبَ"
KATABA_PARTIAL = "كَتبَ"
KATABA_ROOT = "ك ت ب"
QARAA_ROOT = "ق ر أ"

VERBS_A_TSV = "\n".join([
    HEADER,
    _row("k1", spellings=KATABA_FULL, pos="PV", pv=KATABA_FULL,
         iv="يكتب;أكتب", roots=KATABA_ROOT),
]) + "\n"

VERBS_B_TSV = "\n".join([
    HEADER,
    _row("k1", spellings=KATABA_PARTIAL, pos="PV", pv=KATABA_PARTIAL,
         iv="يَكْتُبُ", cv="أكتب"),
]) + "\n"


def kataba_lemmas() -> tuple[ExternalLemma, ExternalLemma]:
    """The h1 example pair, built directly."""
    l1 = ExternalLemma(
        lexicon_id="lex1", local_id="k1", pos=PosTag.PV,
        verb_forms=VerbForms(pv=WordSet([KATABA_FULL]), iv=WordSet(["يكتب", "أكتب"])),
        roots=WordSet(["كتب"]),
    )
    l2 = ExternalLemma(
        lexicon_id="lex2", local_id="k1", pos=PosTag.PV,
        verb_forms=VerbForms(
            pv=WordSet([KATABA_PARTIAL]), iv=WordSet(["يَكْتُبُ"]), cv=WordSet(["أكتب"])
        ),
    )
    return l1, l2


# --- dialect example -------------------------------------------------------------

QAZAZ = "قَزاز"           # dialect lemma, CODA spelling
ZUJAJ = "زُجَاجٌ"          # its MSA counterpart, fully diacritized
MULTIWORD_LEMMA = "ثاني أكسيد الكربون"

# --- published count tables --------------------------------------------------------

RELATION_COUNTS_TABLE = {
    "R1": 248882,
    "R2": 3010,
    "R3": 74,
    "R4": 1784,
    "R5": 372,
    "R6": 1918,
}
RELATION_COUNTS_TOTAL = 256040

POS_COVERAGE_TABLE = {
    # tag -> (modern, sama, qabas)
    "NOUN": (21456, 19705, 29053),
    "NOUN_PROP": (0, 5540, 4319),
    "ADJ": (0, 5500, 11067),
    "ADJ_COMP": (0, 204, 295),
    "ADJ_NUM": (0, 12, 12),
    "NOUN_NUM": (0, 33, 44),
    "NOUN_QUANT": (0, 23, 19),
    "DIGIT": (0, 0, 10),
    "NOUN_VOICE": (0, 0, 16),
    "ABBREV": (0, 60, 106),
    "PV": (10475, 8133, 12679),
    "IV": (0, 990, 9),
    "CV": (0, 16, 6),
    "PV_PASS": (0, 32, 63),
    "IV_PASS": (0, 78, 0),
    "FUNCTIONAL": (369, 313, 473),
}
POS_NOMINAL_TOTALS = (21456, 31077, 44941)
POS_VERB_TOTALS = (10475, 9249, 12757)
POS_GRAND_TOTALS = (32300, 40639, 58171)

ATB_TOKENS = 339710
ATB_TOKENS_MAPPED = 282155
ATB_TOKEN_PERCENT = 83
SALMA_TOKENS = 34253
SALMA_LEMMAS = 3875
LEMMAS_TOTAL = 144527
LEMMAS_MAPPED = 121894
LEMMA_TOTAL_PERCENT = 84


def build_counts_graph(table) -> QabasGraph:
    """Synthetic lexicons realizing a per-POS count table (modern, sama, qabas).

    One shared minimal word keeps 130K-lemma tables cheap to build; the
    FUNCTIONAL aggregate row is realized on a single functional tag.
    """
    from qabas import QabasLemma, analyze
    from qabas.postags import Aspect

    graph = QabasGraph()
    graph.register_lexicon(LexiconDescriptor("modern", "Modern"))
    graph.register_lexicon(LexiconDescriptor("sama", "SAMA"))
    word = analyze("كَ")
    forms = NounForms(singulars=WordSet([word]))
    next_qabas = 1
    for tag_name, (n_modern, n_sama, n_qabas) in table.items():
        tag = PosTag.PART if tag_name == "FUNCTIONAL" else PosTag(tag_name)
        for lexicon, count in (("modern", n_modern), ("sama", n_sama)):
            for i in range(count):
                graph.add_external(
                    ExternalLemma(
                        lexicon_id=lexicon,
                        local_id=f"{tag.value}-{i}",
                        pos=tag,
                        noun_forms=forms,
                    )
                )
        aspect = Aspect(tag.value) if tag.value in Aspect.__members__ else Aspect.NA
        for _ in range(n_qabas):
            graph.add_canonical(
                QabasLemma(id=next_qabas, spellings=(word,), pos=tag, aspect=aspect)
            )
            next_qabas += 1
    return graph
