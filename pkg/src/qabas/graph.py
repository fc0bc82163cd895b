"""The lexicographic data graph: one store owning lemmas, mappings, and corpora.

State lives in plain dictionaries with insertion order preserved, which
keeps every derived artifact (exports, review queues, candidate batches)
deterministic.  Readers receive immutable values; all mutation funnels
through a single re-entrant lock (the single-writer contract).

Persistence is a directory of JSON-lines segment files plus a metadata
file.  Timestamps are logical: a monotonically increasing event counter,
so identical command sequences produce byte-identical stores and exports.
"""

from __future__ import annotations

import json
import os
import threading
from contextlib import contextmanager
from pathlib import Path

from .corpus import CorpusDescriptor, CorpusToken
from .errors import DataDirLocked, DuplicateLexiconId
from .lemmas import (
    QABAS_LEXICON_ID,
    ExternalLemma,
    LemmaRef,
    LexiconDescriptor,
    NounForms,
    QabasLemma,
    VerbForms,
)
from .mapping import (
    AuditEntry,
    MappingCorrespondence,
    Provenance,
    Relation,
    Status,
)
from .orthography import WordSet, analyze
from .postags import Aspect, Augmentation, Gender, Number, Person, PosTag, Transitivity

_SEGMENTS = ("lexicons", "lemmas", "mappings", "corpora", "tokens")


class QabasGraph:
    """In-memory store for the whole data graph."""

    def __init__(self) -> None:
        self.lexicons: dict[str, LexiconDescriptor] = {}
        self.external: dict[LemmaRef, ExternalLemma] = {}
        self.canonical: dict[int, QabasLemma] = {}
        self.correspondences: dict[int, MappingCorrespondence] = {}
        self.corpora: dict[str, CorpusDescriptor] = {}
        self.tokens: dict[str, list[CorpusToken]] = {}
        self._pairs: dict[tuple[LemmaRef, LemmaRef], list[int]] = {}
        self._external_by_lexicon: dict[str, list[LemmaRef]] = {}
        self._next_corr_id = 1
        self._next_qabas_id = 1
        self._clock = 0
        self._lock = threading.RLock()

    # --- single-writer contract ---------------------------------------------

    @contextmanager
    def writer(self):
        with self._lock:
            yield self

    def tick(self) -> int:
        with self._lock:
            self._clock += 1
            return self._clock

    def observe_timestamp(self, timestamp: int) -> None:
        """Advance the logical clock past an imported timestamp."""
        with self._lock:
            self._clock = max(self._clock, timestamp)

    def allocate_corr_id(self) -> int:
        with self._lock:
            cid = self._next_corr_id
            self._next_corr_id += 1
            return cid

    def allocate_qabas_id(self) -> int:
        with self._lock:
            lid = self._next_qabas_id
            self._next_qabas_id += 1
            return lid

    # --- lexicons and lemmas ---------------------------------------------------

    def register_lexicon(self, descriptor: LexiconDescriptor, replace: bool = False) -> None:
        with self._lock:
            if descriptor.lexicon_id in self.lexicons and not replace:
                raise DuplicateLexiconId(
                    f"lexicon {descriptor.lexicon_id!r} is already registered"
                )
            self.lexicons[descriptor.lexicon_id] = descriptor

    def drop_lexicon_lemmas(self, lexicon_id: str) -> None:
        with self._lock:
            if lexicon_id == QABAS_LEXICON_ID:
                self.canonical.clear()
                self._next_qabas_id = 1
                return
            for ref in self._external_by_lexicon.get(lexicon_id, []):
                self.external.pop(ref, None)
            self._external_by_lexicon[lexicon_id] = []

    def add_external(self, lemma: ExternalLemma) -> None:
        with self._lock:
            self.external[lemma.ref] = lemma
            self._external_by_lexicon.setdefault(lemma.lexicon_id, []).append(lemma.ref)

    def add_canonical(self, lemma: QabasLemma) -> None:
        with self._lock:
            self.canonical[lemma.id] = lemma
            self._next_qabas_id = max(self._next_qabas_id, lemma.id + 1)
            if QABAS_LEXICON_ID not in self.lexicons:
                self.lexicons[QABAS_LEXICON_ID] = LexiconDescriptor(
                    lexicon_id=QABAS_LEXICON_ID, name="Qabas", category="canonical"
                )

    def external_of(self, lexicon_id: str) -> list[ExternalLemma]:
        refs = self._external_by_lexicon.get(lexicon_id, [])
        return [self.external[r] for r in refs if r in self.external]

    def get_lemma(self, ref: LemmaRef):
        if ref.lexicon == QABAS_LEXICON_ID:
            if ref.local_id.isdigit():
                return self.canonical.get(int(ref.local_id))
            return None
        return self.external.get(ref)

    def lemma_exists(self, ref: LemmaRef) -> bool:
        return self.get_lemma(ref) is not None

    # --- correspondences ----------------------------------------------------------

    def add_correspondence(self, corr: MappingCorrespondence) -> None:
        with self._lock:
            self.correspondences[corr.id] = corr
            self._pairs.setdefault(corr.pair, []).append(corr.id)
            self._next_corr_id = max(self._next_corr_id, corr.id + 1)
            self.observe_timestamp(corr.timestamp)

    def replace_correspondence(self, corr: MappingCorrespondence) -> None:
        with self._lock:
            self.correspondences[corr.id] = corr
            self.observe_timestamp(corr.timestamp)

    def corrs_for_pair(self, pair: tuple[LemmaRef, LemmaRef]) -> list[MappingCorrespondence]:
        return [self.correspondences[cid] for cid in self._pairs.get(pair, [])]

    def non_rejected_for_pair(self, pair) -> MappingCorrespondence | None:
        for corr in self.corrs_for_pair(pair):
            if corr.status is not Status.REJECTED:
                return corr
        return None

    # --- corpora --------------------------------------------------------------------

    def add_corpus(self, descriptor: CorpusDescriptor, tokens: list[CorpusToken]) -> None:
        with self._lock:
            self.corpora[descriptor.corpus_id] = descriptor
            self.tokens[descriptor.corpus_id] = list(tokens)

    def set_tokens(self, corpus_id: str, tokens: list[CorpusToken]) -> None:
        with self._lock:
            self.tokens[corpus_id] = list(tokens)

    # --- persistence ------------------------------------------------------------------

    def save(self, data_dir: str | Path) -> None:
        data_dir = Path(data_dir)
        data_dir.mkdir(parents=True, exist_ok=True)
        _write_atomic(
            data_dir / "meta.json",
            json.dumps(
                {
                    "format": 1,
                    "next_corr_id": self._next_corr_id,
                    "next_qabas_id": self._next_qabas_id,
                    "clock": self._clock,
                },
                indent=2,
            )
            + "\n",
        )
        _write_jsonl(data_dir / "lexicons.jsonl", (vars(d) for d in self.lexicons.values()))
        _write_jsonl(
            data_dir / "lemmas.jsonl",
            (_lemma_record(l) for l in list(self.external.values()) + list(self.canonical.values())),
        )
        _write_jsonl(
            data_dir / "mappings.jsonl",
            (_corr_record(c) for c in self.correspondences.values()),
        )
        _write_jsonl(data_dir / "corpora.jsonl", (vars(d) for d in self.corpora.values()))
        _write_jsonl(
            data_dir / "tokens.jsonl",
            (_token_record(t) for toks in self.tokens.values() for t in toks),
        )

    @classmethod
    def load(cls, data_dir: str | Path) -> "QabasGraph":
        data_dir = Path(data_dir)
        graph = cls()
        meta_path = data_dir / "meta.json"
        if not meta_path.exists():
            return graph
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        for obj in _read_jsonl(data_dir / "lexicons.jsonl"):
            graph.lexicons[obj["lexicon_id"]] = LexiconDescriptor(**obj)
        for obj in _read_jsonl(data_dir / "lemmas.jsonl"):
            if obj["kind"] == "external":
                graph.add_external(_lemma_from_record(obj))
            else:
                graph.add_canonical(_lemma_from_record(obj))
        for obj in _read_jsonl(data_dir / "mappings.jsonl"):
            graph.add_correspondence(_corr_from_record(obj))
        for obj in _read_jsonl(data_dir / "corpora.jsonl"):
            graph.corpora[obj["corpus_id"]] = CorpusDescriptor(**obj)
        tokens: dict[str, list[CorpusToken]] = {c: [] for c in graph.corpora}
        for obj in _read_jsonl(data_dir / "tokens.jsonl"):
            tok = _token_from_record(obj)
            tokens.setdefault(tok.corpus_id, []).append(tok)
        graph.tokens = tokens
        graph._next_corr_id = meta["next_corr_id"]
        graph._next_qabas_id = meta["next_qabas_id"]
        graph._clock = meta["clock"]
        return graph


# --- record codecs ------------------------------------------------------------


def _words(ws: WordSet) -> list[str]:
    return [w.serialize() for w in ws.canonical()]


def _wordset(items: list[str]) -> WordSet:
    return WordSet(analyze(s) for s in items)


def _lemma_record(lemma) -> dict:
    if isinstance(lemma, ExternalLemma):
        return {
            "kind": "external",
            "lexicon_id": lemma.lexicon_id,
            "local_id": lemma.local_id,
            "pos": lemma.pos.value if lemma.pos else None,
            "spellings": [w.serialize() for w in lemma.spellings],
            "singulars": _words(lemma.noun_forms.singulars),
            "duals": _words(lemma.noun_forms.duals),
            "plurals": _words(lemma.noun_forms.plurals),
            "pv": _words(lemma.verb_forms.pv),
            "iv": _words(lemma.verb_forms.iv),
            "cv": _words(lemma.verb_forms.cv),
            "roots": _words(lemma.roots),
            "free": dict(lemma.free_features),
        }
    return {
        "kind": "canonical",
        "id": lemma.id,
        "spellings": [w.serialize() for w in lemma.spellings],
        "pos": lemma.pos.value,
        "gender": lemma.gender.value,
        "number": lemma.number.value,
        "aspect": lemma.aspect.value,
        "person": lemma.person.value,
        "roots": _words(lemma.roots),
        "augmentation": lemma.augmentation.value,
        "transitivity": lemma.transitivity.value,
        "dialect": lemma.dialect_tag,
        "msa": lemma.msa_counterpart,
    }


def _lemma_from_record(obj: dict):
    if obj["kind"] == "external":
        return ExternalLemma(
            lexicon_id=obj["lexicon_id"],
            local_id=obj["local_id"],
            pos=PosTag(obj["pos"]) if obj["pos"] else None,
            spellings=tuple(analyze(s) for s in obj["spellings"]),
            noun_forms=NounForms(
                singulars=_wordset(obj["singulars"]),
                duals=_wordset(obj["duals"]),
                plurals=_wordset(obj["plurals"]),
            ),
            verb_forms=VerbForms(
                pv=_wordset(obj["pv"]),
                iv=_wordset(obj["iv"]),
                cv=_wordset(obj["cv"]),
            ),
            roots=_wordset(obj["roots"]),
            free_features=obj["free"],
        )
    return QabasLemma(
        id=obj["id"],
        spellings=tuple(analyze(s) for s in obj["spellings"]),
        pos=PosTag(obj["pos"]),
        gender=Gender(obj["gender"]),
        number=Number(obj["number"]),
        aspect=Aspect(obj["aspect"]),
        person=Person(obj["person"]),
        roots=_wordset(obj["roots"]),
        augmentation=Augmentation(obj["augmentation"]),
        transitivity=Transitivity(obj["transitivity"]),
        dialect_tag=obj["dialect"],
        msa_counterpart=obj["msa"],
    )


def _corr_record(corr: MappingCorrespondence) -> dict:
    return {
        "id": corr.id,
        "l1": str(corr.l1),
        "l2": str(corr.l2),
        "relation": corr.relation.value,
        "status": corr.status.value,
        "provenance": corr.provenance.value,
        "reviewer": corr.reviewer,
        "ts": corr.timestamp,
        "audit": [
            [a.status.value, a.relation.value, a.reviewer, a.timestamp]
            for a in corr.audit
        ],
    }


def _corr_from_record(obj: dict) -> MappingCorrespondence:
    return MappingCorrespondence(
        id=obj["id"],
        l1=LemmaRef.parse(obj["l1"]),
        l2=LemmaRef.parse(obj["l2"]),
        relation=Relation(obj["relation"]),
        status=Status(obj["status"]),
        provenance=Provenance(obj["provenance"]),
        reviewer=obj["reviewer"],
        timestamp=obj["ts"],
        audit=tuple(
            AuditEntry(Status(s), Relation(r), rev, ts) for s, r, rev, ts in obj["audit"]
        ),
    )


def _token_record(tok: CorpusToken) -> dict:
    return {
        "corpus": tok.corpus_id,
        "s": tok.sentence,
        "t": tok.token,
        "surface": tok.surface,
        "lex": tok.source_ref.lexicon,
        "local": tok.source_ref.local_id,
        "qabas": tok.resolved_qabas_id,
    }


def _token_from_record(obj: dict) -> CorpusToken:
    return CorpusToken(
        corpus_id=obj["corpus"],
        sentence=obj["s"],
        token=obj["t"],
        surface=obj["surface"],
        source_ref=LemmaRef(obj["lex"], obj["local"]),
        resolved_qabas_id=obj["qabas"],
    )


# --- file helpers ------------------------------------------------------------------


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8")
    os.replace(tmp, path)


def _write_jsonl(path: Path, objects) -> None:
    _write_atomic(
        path, "".join(json.dumps(obj, ensure_ascii=False) + "\n" for obj in objects)
    )


def _read_jsonl(path: Path):
    if not path.exists():
        return
    with path.open(encoding="utf-8") as handle:
        for line in handle:
            line = line.strip()
            if line:
                yield json.loads(line)


# --- data directory lock --------------------------------------------------------------


@contextmanager
def data_lock(data_dir: str | Path):
    """Exclusive ownership of a data directory for the duration of a command."""
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    lock_path = data_dir / ".lock"
    try:
        fd = os.open(lock_path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
    except FileExistsError:
        raise DataDirLocked(
            f"{data_dir} is locked by another process (remove {lock_path} if stale)"
        ) from None
    try:
        os.write(fd, str(os.getpid()).encode())
        os.close(fd)
        yield
    finally:
        try:
            lock_path.unlink()
        except FileNotFoundError:
            pass
