"""Interchange formats: tab-separated lexicon/mapping/corpus files and JSON lines.

Conventions shared by all TSV files:
  - UTF-8, one record per row, header row with the column names;
  - an empty cell or "-" means "unspecified";
  - "|" separates alternative spellings (frequency order, most frequent
    first), ";" separates members of a form set;
  - a root is written as space-separated radicals ("ك ت ب"), several
    roots separated by ";".

Exports are canonical: words are re-serialized from their decomposition
and set members are sorted, so export -> import -> export is byte-stable.
"""

from __future__ import annotations

import json
from typing import Iterable, Sequence

from .errors import MalformedRow
from .lemmas import (
    ExternalLemma,
    LemmaRef,
    NounForms,
    QabasLemma,
    VerbForms,
)
from .mapping import (
    DEFAULT_PRECISIONS,
    MappingCorrespondence,
    Provenance,
    Relation,
    Status,
)
from .orthography import AnalyzedWord, WordSet, analyze
from .postags import (
    Aspect,
    Augmentation,
    Gender,
    Number,
    Person,
    PosTag,
    Transitivity,
)

LEXICON_COLUMNS = (
    "local_id",
    "spellings",
    "pos",
    "gender",
    "number",
    "aspect",
    "person",
    "roots",
    "augmentation",
    "transitivity",
    "singulars",
    "duals",
    "plurals",
    "pv",
    "iv",
    "cv",
    "dialect",
    "msa_counterpart",
)

MAPPING_COLUMNS = (
    "l1_ref",
    "l2_ref",
    "relation_code",
    "precision",
    "status",
    "provenance",
    "reviewer",
    "timestamp",
)

CORPUS_COLUMNS = ("sentence_idx", "token_idx", "surface", "lemma_lexicon", "lemma_local_id")
CORPUS_LINKED_COLUMNS = CORPUS_COLUMNS + ("qabas_id",)


def norm_cell(cell: str) -> str:
    cell = cell.strip()
    return "" if cell == "-" else cell


def split_line(line: str) -> list[str]:
    return line.rstrip("\n").split("\t")


def is_lexicon_header(cells: Sequence[str]) -> bool:
    return bool(cells) and cells[0].strip() == LEXICON_COLUMNS[0]


# --- word-cell codecs -------------------------------------------------------


def parse_spelling_cell(cell: str, row_no: int, field: str) -> tuple[AnalyzedWord, ...]:
    cell = norm_cell(cell)
    if not cell:
        return ()
    words = []
    for part in cell.split("|"):
        part = part.strip()
        if not part:
            raise MalformedRow(row_no, f"{field}: empty alternative spelling")
        if any(ch.isspace() for ch in part):
            raise MalformedRow(row_no, f"MultiWordLemma: {part!r} in {field}")
        try:
            words.append(analyze(part))
        except Exception as exc:
            raise MalformedRow(row_no, f"{field}: {exc}") from None
    return tuple(words)


def parse_set_cell(cell: str, row_no: int, field: str) -> WordSet:
    cell = norm_cell(cell)
    if not cell:
        return WordSet()
    words = []
    for part in cell.split(";"):
        part = part.strip()
        if not part:
            continue
        if any(ch.isspace() for ch in part):
            raise MalformedRow(row_no, f"MultiWordLemma: {part!r} in {field}")
        try:
            words.append(analyze(part))
        except Exception as exc:
            raise MalformedRow(row_no, f"{field}: {exc}") from None
    return WordSet(words)


def parse_root_cell(cell: str, row_no: int) -> WordSet:
    """Roots are space-separated radicals; whitespace is the radical joint."""
    cell = norm_cell(cell)
    if not cell:
        return WordSet()
    words = []
    for part in cell.split(";"):
        compact = "".join(part.split())
        if not compact:
            continue
        try:
            words.append(analyze(compact))
        except Exception as exc:
            raise MalformedRow(row_no, f"roots: {exc}") from None
    return WordSet(words)


def spellings_to_cell(spellings: Iterable[AnalyzedWord]) -> str:
    return "|".join(w.serialize() for w in spellings)


def set_to_cell(words: WordSet) -> str:
    return ";".join(w.serialize() for w in words.canonical())


def root_to_cell(roots: WordSet) -> str:
    return ";".join(" ".join(w.segments()) for w in roots.canonical())


def _parse_enum(enum_cls, cell: str, row_no: int, field: str):
    cell = norm_cell(cell)
    if not cell:
        return enum_cls.NA
    try:
        return enum_cls(cell)
    except ValueError:
        raise MalformedRow(row_no, f"{field}: unknown value {cell!r}") from None


def _enum_cell(value) -> str:
    return "" if value.value == "NA" else value.value


# --- lexicon rows ------------------------------------------------------------


def parse_external_row(cells: Sequence[str], lexicon_id: str, row_no: int) -> ExternalLemma:
    if len(cells) != len(LEXICON_COLUMNS):
        raise MalformedRow(
            row_no, f"expected {len(LEXICON_COLUMNS)} columns, got {len(cells)}"
        )
    local_id = norm_cell(cells[0])
    if not local_id:
        raise MalformedRow(row_no, "missing local_id")
    pos_cell = norm_cell(cells[2])
    pos: PosTag | None = None
    if pos_cell and pos_cell != "UNKNOWN":
        try:
            pos = PosTag(pos_cell)
        except ValueError:
            raise MalformedRow(row_no, f"pos: unknown tag {pos_cell!r}") from None
    free: dict[str, str] = {}
    for key, idx in (
        ("gender", 3),
        ("number", 4),
        ("aspect", 5),
        ("person", 6),
        ("augmentation", 8),
        ("transitivity", 9),
    ):
        value = norm_cell(cells[idx])
        if value:
            free[key] = value
    lemma = ExternalLemma(
        lexicon_id=lexicon_id,
        local_id=local_id,
        pos=pos,
        spellings=parse_spelling_cell(cells[1], row_no, "spellings"),
        noun_forms=NounForms(
            singulars=parse_set_cell(cells[10], row_no, "singulars"),
            duals=parse_set_cell(cells[11], row_no, "duals"),
            plurals=parse_set_cell(cells[12], row_no, "plurals"),
        ),
        verb_forms=VerbForms(
            pv=parse_set_cell(cells[13], row_no, "pv"),
            iv=parse_set_cell(cells[14], row_no, "iv"),
            cv=parse_set_cell(cells[15], row_no, "cv"),
        ),
        roots=parse_root_cell(cells[7], row_no),
        free_features=free,
    )
    violations = lemma.validate()
    if violations:
        raise MalformedRow(row_no, "; ".join(f"{f}: {m}" for f, m in violations))
    return lemma


def parse_qabas_row(cells: Sequence[str], row_no: int) -> tuple[QabasLemma, bool]:
    """Parse one canonical-lexicon row; returns the lemma and its proper-noun assertion.

    A row tagged NOUN_PROP is itself the record's assertion that all
    senses are proper nouns.
    """
    if len(cells) != len(LEXICON_COLUMNS):
        raise MalformedRow(
            row_no, f"expected {len(LEXICON_COLUMNS)} columns, got {len(cells)}"
        )
    local_id = norm_cell(cells[0])
    if not local_id.isdigit():
        raise MalformedRow(row_no, f"canonical local_id must be an integer, got {local_id!r}")
    pos_cell = norm_cell(cells[2])
    if not pos_cell:
        raise MalformedRow(row_no, "canonical lemmas require a POS tag")
    try:
        pos = PosTag(pos_cell)
    except ValueError:
        raise MalformedRow(row_no, f"pos: unknown tag {pos_cell!r}") from None
    spellings = parse_spelling_cell(cells[1], row_no, "spellings")
    if not spellings:
        raise MalformedRow(row_no, "canonical lemmas require at least one spelling")
    msa_cell = norm_cell(cells[17])
    msa: int | None = None
    if msa_cell:
        if not msa_cell.isdigit():
            raise MalformedRow(row_no, f"msa_counterpart must be an integer, got {msa_cell!r}")
        msa = int(msa_cell)
    lemma = QabasLemma(
        id=int(local_id),
        spellings=spellings,
        pos=pos,
        gender=_parse_enum(Gender, cells[3], row_no, "gender"),
        number=_parse_enum(Number, cells[4], row_no, "number"),
        aspect=_parse_enum(Aspect, cells[5], row_no, "aspect"),
        person=_parse_enum(Person, cells[6], row_no, "person"),
        roots=parse_root_cell(cells[7], row_no),
        augmentation=_parse_enum(Augmentation, cells[8], row_no, "augmentation"),
        transitivity=_parse_enum(Transitivity, cells[9], row_no, "transitivity"),
        dialect_tag=norm_cell(cells[16]) or None,
        msa_counterpart=msa,
    )
    return lemma, pos is PosTag.NOUN_PROP


def external_to_cells(lemma: ExternalLemma) -> list[str]:
    free = lemma.free_features
    return [
        lemma.local_id,
        spellings_to_cell(lemma.spellings),
        lemma.pos.value if lemma.pos is not None else "",
        free.get("gender", ""),
        free.get("number", ""),
        free.get("aspect", ""),
        free.get("person", ""),
        root_to_cell(lemma.roots),
        free.get("augmentation", ""),
        free.get("transitivity", ""),
        set_to_cell(lemma.noun_forms.singulars),
        set_to_cell(lemma.noun_forms.duals),
        set_to_cell(lemma.noun_forms.plurals),
        set_to_cell(lemma.verb_forms.pv),
        set_to_cell(lemma.verb_forms.iv),
        set_to_cell(lemma.verb_forms.cv),
        "",
        "",
    ]


def qabas_to_cells(lemma: QabasLemma) -> list[str]:
    return [
        str(lemma.id),
        spellings_to_cell(lemma.spellings),
        lemma.pos.value,
        _enum_cell(lemma.gender),
        _enum_cell(lemma.number),
        _enum_cell(lemma.aspect),
        _enum_cell(lemma.person),
        root_to_cell(lemma.roots),
        _enum_cell(lemma.augmentation),
        _enum_cell(lemma.transitivity),
        "",
        "",
        "",
        "",
        "",
        "",
        lemma.dialect_tag or "",
        str(lemma.msa_counterpart) if lemma.msa_counterpart is not None else "",
    ]


def lemma_to_json(lemma: ExternalLemma | QabasLemma) -> dict:
    """JSON-lines mirror of the TSV row, same field names, typed values."""
    cells = (
        external_to_cells(lemma)
        if isinstance(lemma, ExternalLemma)
        else qabas_to_cells(lemma)
    )
    obj: dict = {}
    for name, cell in zip(LEXICON_COLUMNS, cells):
        if name == "spellings":
            obj[name] = cell.split("|") if cell else []
        elif name in ("singulars", "duals", "plurals", "pv", "iv", "cv", "roots"):
            obj[name] = cell.split(";") if cell else []
        else:
            obj[name] = cell if cell else None
    return obj


# --- mapping rows -------------------------------------------------------------


def mapping_to_cells(corr: MappingCorrespondence) -> list[str]:
    return [
        str(corr.l1),
        str(corr.l2),
        corr.relation.value,
        str(corr.precision),
        corr.status.value,
        corr.provenance.value,
        corr.reviewer or "",
        str(corr.timestamp),
    ]


def parse_mapping_row(cells: Sequence[str], row_no: int) -> dict:
    """Parse one mapping row into field values (no id; ids are store-assigned)."""
    if len(cells) != len(MAPPING_COLUMNS):
        raise MalformedRow(
            row_no, f"expected {len(MAPPING_COLUMNS)} columns, got {len(cells)}"
        )
    try:
        l1 = LemmaRef.parse(norm_cell(cells[0]))
        l2 = LemmaRef.parse(norm_cell(cells[1]))
    except ValueError as exc:
        raise MalformedRow(row_no, str(exc)) from None
    try:
        relation = Relation(norm_cell(cells[2]))
    except ValueError:
        raise MalformedRow(row_no, f"unknown relation {cells[2]!r}") from None
    try:
        status = Status(norm_cell(cells[4]))
        provenance = Provenance(norm_cell(cells[5]))
    except ValueError as exc:
        raise MalformedRow(row_no, str(exc)) from None
    ts_cell = norm_cell(cells[7])
    if not ts_cell.lstrip("-").isdigit():
        raise MalformedRow(row_no, f"timestamp must be an integer, got {ts_cell!r}")
    return {
        "l1": l1,
        "l2": l2,
        "relation": relation,
        "status": status,
        "provenance": provenance,
        "reviewer": norm_cell(cells[6]) or None,
        "timestamp": int(ts_cell),
    }


def mapping_to_json(corr: MappingCorrespondence) -> dict:
    return {
        "l1_ref": str(corr.l1),
        "l2_ref": str(corr.l2),
        "relation_code": corr.relation.value,
        "precision": corr.precision,
        "status": corr.status.value,
        "provenance": corr.provenance.value,
        "reviewer": corr.reviewer,
        "timestamp": corr.timestamp,
    }


# --- corpus rows ----------------------------------------------------------------


def token_to_cells(token, linked: bool = False) -> list[str]:
    cells = [
        str(token.sentence),
        str(token.token),
        token.surface,
        token.source_ref.lexicon,
        token.source_ref.local_id,
    ]
    if linked:
        cells.append("" if token.resolved_qabas_id is None else str(token.resolved_qabas_id))
    return cells


# --- rendering -------------------------------------------------------------------


def render_tsv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    lines = ["\t".join(header)]
    for row in rows:
        for cell in row:
            if "\t" in cell or "\n" in cell:
                raise ValueError(f"cell {cell!r} contains a separator character")
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def render_jsonl(objects: Iterable[dict]) -> str:
    return "".join(json.dumps(obj, ensure_ascii=False) + "\n" for obj in objects)
