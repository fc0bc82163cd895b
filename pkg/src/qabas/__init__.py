"""qabas: link lemmas across Arabic lexicons and corpora into one data graph."""

from .corpus import (
    CorpusDescriptor,
    CorpusToken,
    coverage_report,
    ingest_corpus,
    link_corpus,
    unresolved_lemma_frequencies,
)
from .errors import QabasError
from .graph import QabasGraph, data_lock
from .lemmas import (
    QABAS_LEXICON_ID,
    ExternalLemma,
    LemmaRef,
    LexiconDescriptor,
    NounForms,
    QabasLemma,
    VerbForms,
    form_profile,
    qabas_ref,
)
from .mapping import (
    CORE_RELATIONS,
    DEFAULT_PRECISIONS,
    CandidateBatch,
    MappingCorrespondence,
    Provenance,
    Relation,
    Status,
    automap,
    filter_by_precision,
    h1_verb_match,
    h2_noun_match,
    manual_map,
    relation_counts,
    review,
)
from .metrics import cohen_kappa, pairwise_iaa, pos_coverage
from .orthography import (
    AnalyzedWord,
    DiacriticCluster,
    Vowel,
    WordSet,
    analyze,
    diacritic_compatible,
    sets_compatible,
    skeleton_key,
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
from .store import (
    adopt_as_qabas,
    ingest_lexicon,
    insert_manual_lemma,
    search_lemmas,
)

__version__ = "0.1.0"
