"""Lemma records: canonical (qabas) entries, external-lexicon entries, descriptors.

Canonical lemmas carry the eight morphological features and are validated
against the editorial guidelines (full diacritization, proper-noun rule,
aspect/category coupling, dialect counterpart).  External lemmas are
read-only source material: typed form sets plus a free feature map for
whatever else the source provides.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, NamedTuple

from .orthography import EMPTY_WORDSET, AnalyzedWord, WordSet, guideline_diacritized
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

QABAS_LEXICON_ID = "qabas"

# dialect_tag values that do NOT require an MSA counterpart
NON_DIALECT_TAGS = frozenset({"MSA", "Classical"})


class LemmaRef(NamedTuple):
    """Address of a lemma: (lexicon_id, local_id), canonical lemmas under "qabas"."""

    lexicon: str
    local_id: str

    def __str__(self) -> str:
        return f"{self.lexicon}:{self.local_id}"

    @classmethod
    def parse(cls, text: str) -> "LemmaRef":
        lexicon, _, local = text.partition(":")
        if not lexicon or not local:
            raise ValueError(f"bad lemma reference {text!r}")
        return cls(lexicon, local)


def qabas_ref(lemma_id: int) -> LemmaRef:
    return LemmaRef(QABAS_LEXICON_ID, str(lemma_id))


def ref_sort_key(ref: LemmaRef) -> tuple:
    """Deterministic ordering with numeric local ids sorted numerically."""
    local = ref.local_id
    if local.isdigit():
        return (ref.lexicon, 0, int(local), local)
    return (ref.lexicon, 1, 0, local)


@dataclass(frozen=True)
class LexiconDescriptor:
    lexicon_id: str
    name: str
    category: str = ""
    lemma_count: int = 0


@dataclass(frozen=True)
class NounForms:
    singulars: WordSet = EMPTY_WORDSET
    duals: WordSet = EMPTY_WORDSET
    plurals: WordSet = EMPTY_WORDSET

    def __bool__(self) -> bool:
        return bool(self.singulars or self.duals or self.plurals)


@dataclass(frozen=True)
class VerbForms:
    pv: WordSet = EMPTY_WORDSET
    iv: WordSet = EMPTY_WORDSET
    cv: WordSet = EMPTY_WORDSET

    def __bool__(self) -> bool:
        return bool(self.pv or self.iv or self.cv)


@dataclass(frozen=True)
class ExternalLemma:
    """One entry of an external lexicon, addressed by (lexicon_id, local_id).

    ``pos`` is None when the source has no POS information.  ``spellings``
    holds the source's citation form(s) when it has any; matching for
    search considers spellings and all form sets.
    """

    lexicon_id: str
    local_id: str
    pos: PosTag | None = None
    spellings: tuple[AnalyzedWord, ...] = ()
    noun_forms: NounForms = NounForms()
    verb_forms: VerbForms = VerbForms()
    roots: WordSet = EMPTY_WORDSET
    free_features: Mapping[str, str] = field(default_factory=dict)

    @property
    def ref(self) -> LemmaRef:
        return LemmaRef(self.lexicon_id, self.local_id)

    def validate(self) -> list[tuple[str, str]]:
        violations = []
        if not (self.noun_forms or self.verb_forms or self.roots):
            violations.append(
                ("forms", "at least one form set or a root must be non-empty")
            )
        for name, words in self._word_fields():
            for w in words:
                if any(ch.isspace() for ch in w.raw):
                    violations.append((name, f"multi-word form {w.raw!r}"))
        return violations

    def _word_fields(self):
        yield "spellings", self.spellings
        yield "singulars", self.noun_forms.singulars
        yield "duals", self.noun_forms.duals
        yield "plurals", self.noun_forms.plurals
        yield "pv", self.verb_forms.pv
        yield "iv", self.verb_forms.iv
        yield "cv", self.verb_forms.cv


@dataclass(frozen=True)
class QabasLemma:
    """A canonical lemma with the eight morphological features."""

    id: int
    spellings: tuple[AnalyzedWord, ...]
    pos: PosTag
    gender: Gender = Gender.NA
    number: Number = Number.NA
    aspect: Aspect = Aspect.NA
    person: Person = Person.NA
    roots: WordSet = EMPTY_WORDSET
    augmentation: Augmentation = Augmentation.NA
    transitivity: Transitivity = Transitivity.NA
    dialect_tag: str | None = None
    msa_counterpart: int | None = None

    @property
    def ref(self) -> LemmaRef:
        return qabas_ref(self.id)

    @property
    def is_dialectal(self) -> bool:
        return self.dialect_tag is not None and self.dialect_tag not in NON_DIALECT_TAGS

    def validate(
        self, *, strict: bool = True, proper_assertion: bool = False
    ) -> list[tuple[str, str]]:
        """Check the guideline invariants; returns (field, message) violations.

        ``strict`` enforces full diacritization of every spelling including
        the last letter.  ``proper_assertion`` records that the ingest
        record asserted all senses are proper nouns, which is the only
        license for pos NOUN_PROP.
        """
        violations = []
        if not self.spellings:
            violations.append(("spellings", "at least one spelling is required"))
        # dialect lemmas follow CODA spelling conventions, not the
        # full-pointing guideline (cf. the قَزاز example)
        if strict and not self.is_dialectal:
            for w in self.spellings:
                if not guideline_diacritized(w):
                    violations.append(
                        (
                            "spellings",
                            f"{w.serialize()!r} is not fully diacritized "
                            "(every letter, including the last, needs a vowel; "
                            "bare long-vowel carriers are exempt)",
                        )
                    )
        if self.pos is PosTag.NOUN_PROP and not proper_assertion:
            violations.append(
                (
                    "pos",
                    "NOUN_PROP requires the record to assert that all senses "
                    "are proper nouns",
                )
            )
        is_verb = self.pos.category is PosCategory.VERB
        if is_verb and self.aspect is Aspect.NA:
            violations.append(("aspect", "verb lemmas must carry an aspect"))
        if not is_verb and self.aspect is not Aspect.NA:
            violations.append(("aspect", "only verb lemmas may carry an aspect"))
        if self.is_dialectal and self.msa_counterpart is None:
            violations.append(
                ("msa_counterpart", "dialect lemmas must name an MSA counterpart")
            )
        return violations

    def with_id(self, lemma_id: int) -> "QabasLemma":
        return replace(self, id=lemma_id)


@dataclass(frozen=True)
class FormProfile:
    """The comparable face of a lemma: form sets keyed by slot plus roots.

    External lemmas expose their sets directly.  Canonical lemmas expose
    their spellings through the slot named by their aspect (verbs) or
    number (nominals); functional lemmas expose nothing comparable.
    """

    category: PosCategory | None
    singulars: WordSet = EMPTY_WORDSET
    duals: WordSet = EMPTY_WORDSET
    plurals: WordSet = EMPTY_WORDSET
    pv: WordSet = EMPTY_WORDSET
    iv: WordSet = EMPTY_WORDSET
    cv: WordSet = EMPTY_WORDSET
    roots: WordSet = EMPTY_WORDSET


_ASPECT_SLOT = {
    Aspect.PV: "pv",
    Aspect.PV_PASS: "pv",
    Aspect.IV: "iv",
    Aspect.IV_PASS: "iv",
    Aspect.CV: "cv",
}

_NUMBER_SLOT = {
    Number.SING: "singulars",
    Number.DUAL: "duals",
    Number.PLURAL: "plurals",
    Number.NA: "singulars",
}


def form_profile(lemma: ExternalLemma | QabasLemma) -> FormProfile:
    if isinstance(lemma, ExternalLemma):
        return FormProfile(
            category=lemma.pos.category if lemma.pos is not None else None,
            singulars=lemma.noun_forms.singulars,
            duals=lemma.noun_forms.duals,
            plurals=lemma.noun_forms.plurals,
            pv=lemma.verb_forms.pv,
            iv=lemma.verb_forms.iv,
            cv=lemma.verb_forms.cv,
            roots=lemma.roots,
        )
    category = lemma.pos.category
    slots: dict[str, WordSet] = {}
    spelled = WordSet(lemma.spellings)
    if category is PosCategory.VERB:
        slots[_ASPECT_SLOT.get(lemma.aspect, "pv")] = spelled
    elif category is PosCategory.NOMINAL:
        slots[_NUMBER_SLOT[lemma.number]] = spelled
    return FormProfile(category=category, roots=lemma.roots, **slots)
