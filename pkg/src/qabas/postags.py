"""The 41-tag POS set, its three categories, and the lemma feature enums."""

from __future__ import annotations

from enum import Enum


class PosCategory(str, Enum):
    NOMINAL = "NOMINAL"
    VERB = "VERB"
    FUNCTIONAL = "FUNCTIONAL"


class PosTag(str, Enum):
    # nominal
    NOUN = "NOUN"
    NOUN_PROP = "NOUN_PROP"
    ADJ = "ADJ"
    ADJ_COMP = "ADJ_COMP"
    ADJ_NUM = "ADJ_NUM"
    NOUN_NUM = "NOUN_NUM"
    NOUN_QUANT = "NOUN_QUANT"
    DIGIT = "DIGIT"
    NOUN_VOICE = "NOUN_VOICE"
    ABBREV = "ABBREV"
    # verb
    PV = "PV"
    IV = "IV"
    CV = "CV"
    PV_PASS = "PV_PASS"
    IV_PASS = "IV_PASS"
    # functional words
    PRON = "PRON"
    DEM_PRON = "DEM_PRON"
    EMOJI = "EMOJI"
    REL_PRON = "REL_PRON"
    REL_ADV = "REL_ADV"
    ADV = "ADV"
    INTERROG_PART = "INTERROG_PART"
    INTERROG_ADV = "INTERROG_ADV"
    PREP = "PREP"
    CONJ = "CONJ"
    INTERROG_PRON = "INTERROG_PRON"
    PART = "PART"
    RESTRIC_PART = "RESTRIC_PART"
    PUNC = "PUNC"
    INTERJ = "INTERJ"
    FOCUS_PART = "FOCUS_PART"
    DET = "DET"
    VERB = "VERB"
    VOC_PART = "VOC_PART"
    PROG_PART = "PROG_PART"
    SUB_CONJ = "SUB_CONJ"
    VERB_PART = "VERB_PART"
    FUT_PART = "FUT_PART"
    EXCLAM_PRON = "EXCLAM_PRON"
    PSEUDO_VERB = "PSEUDO_VERB"
    NEG_PART = "NEG_PART"

    @property
    def category(self) -> PosCategory:
        return _CATEGORY_BY_TAG[self]


NOMINAL_TAGS = frozenset(
    {
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
    }
)

VERB_TAGS = frozenset(
    {PosTag.PV, PosTag.IV, PosTag.CV, PosTag.PV_PASS, PosTag.IV_PASS}
)

# the VERB tag here names a functional-word usage and is grouped accordingly
FUNCTIONAL_TAGS = frozenset(PosTag) - NOMINAL_TAGS - VERB_TAGS

_CATEGORY_BY_TAG = {
    **{t: PosCategory.NOMINAL for t in NOMINAL_TAGS},
    **{t: PosCategory.VERB for t in VERB_TAGS},
    **{t: PosCategory.FUNCTIONAL for t in FUNCTIONAL_TAGS},
}

assert len(PosTag) == 41
assert len(FUNCTIONAL_TAGS) == 26


class Gender(str, Enum):
    MASC = "MASC"
    FEM = "FEM"
    NA = "NA"


class Number(str, Enum):
    SING = "SING"
    DUAL = "DUAL"
    PLURAL = "PLURAL"
    NA = "NA"


class Aspect(str, Enum):
    PV = "PV"
    IV = "IV"
    CV = "CV"
    PV_PASS = "PV_PASS"
    IV_PASS = "IV_PASS"
    NA = "NA"


class Person(str, Enum):
    FIRST = "1"
    SECOND = "2"
    THIRD = "3"
    NA = "NA"


class Augmentation(str, Enum):
    AUGMENTED = "AUGMENTED"
    UNAUGMENTED = "UNAUGMENTED"
    NA = "NA"


class Transitivity(str, Enum):
    TRANSITIVE = "TRANSITIVE"
    INTRANSITIVE = "INTRANSITIVE"
    NA = "NA"
