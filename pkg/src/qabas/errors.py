"""Exception hierarchy shared by all qabas modules."""


class QabasError(Exception):
    """Base class for every error raised by this package."""


# --- word analysis ---------------------------------------------------------

class AnalysisError(QabasError):
    """A raw string could not be decomposed into letters and diacritics."""


class EmptyInput(AnalysisError):
    pass


class LeadingDiacritic(AnalysisError):
    """A harakat appeared with no preceding letter to attach to."""


class DoubleVowel(AnalysisError):
    """Two vowel marks landed on the same letter."""


class ShaddaSukunConflict(AnalysisError):
    """Shadda and sukun may not co-occur on one letter."""


class NonArabicCharacter(AnalysisError):
    """Input contained a character outside Arabic letters and harakat."""


# --- lexicon store ---------------------------------------------------------

class ValidationFailure(QabasError):
    """A lemma violated one or more store invariants.

    ``violations`` is a list of (field, message) pairs so callers can
    report every problem at once.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{f}: {m}" for f, m in self.violations))


class MalformedRow(QabasError):
    """One ingest row could not be parsed; carries row number and reason."""

    def __init__(self, row_no, reason):
        self.row_no = row_no
        self.reason = reason
        super().__init__(f"row {row_no}: {reason}")


class DuplicateLexiconId(QabasError):
    pass


class UnknownLexicon(QabasError):
    pass


class UnknownLemma(QabasError):
    pass


class InvalidQuery(QabasError):
    """Search queries must be Arabic text."""


# --- mapping engine --------------------------------------------------------

class NotAVerbPair(QabasError):
    """h1 asked about lemmas without verbal evidence."""


class NotANounPair(QabasError):
    """h2 asked about lemmas without nominal evidence."""


class UnknownCorrespondence(QabasError):
    pass


class UnknownRelation(QabasError):
    pass


class DuplicatePair(QabasError):
    """The pair already carries a non-rejected correspondence."""


class SelfMapping(QabasError):
    """A lemma cannot be mapped to itself."""


class InvalidDecision(QabasError):
    """The requested review transition is not allowed from the current status."""


# --- corpus linker ---------------------------------------------------------

class DuplicateCorpusId(QabasError):
    pass


class UnknownCorpus(QabasError):
    pass


# --- metrics ---------------------------------------------------------------

class ItemSetMismatch(QabasError):
    """Annotators must label the exact same item set."""


class EmptyItemSet(QabasError):
    pass


class NotEnoughAnnotators(QabasError):
    """Pairwise agreement needs at least two annotators."""


# --- storage / cli ---------------------------------------------------------

class DataDirLocked(QabasError):
    """Another process owns the data directory."""
