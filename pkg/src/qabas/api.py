"""HTTP interface for the review tool and scripted clients.

JSON in and out, UTF-8, Arabic text transmitted as-is.  Every response
carries ``schema_version``; the payload shapes are published as JSON
schema files under ``qabas/schemas/`` and served at ``/api/schemas/{name}``.

Auth is a single shared bearer token (optional): reviewer identity is a
request field, not an account.  Mutations are atomic (validate first,
then write) and are persisted before the response returns when the app
is bound to a data directory.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from importlib import resources
from typing import Callable

from fastapi import Depends, FastAPI, HTTPException, Request
from pydantic import BaseModel

from . import metrics, store
from .corpus import coverage_report
from .errors import (
    InvalidQuery,
    QabasError,
    UnknownCorrespondence,
    UnknownRelation,
    ValidationFailure,
)
from .graph import QabasGraph
from .lemmas import QABAS_LEXICON_ID, QabasLemma
from .mapping import (
    AUTO_PROVISIONAL_LABEL,
    DEFAULT_PRECISIONS,
    RELATION_LABELS,
    Relation,
    Status,
    relation_counts,
    relation_from_code,
    review,
)
from .metrics import AnnotationRecord, REJECT_LABEL, cohen_kappa, records_to_labelings
from .orthography import WordSet, analyze
from .postags import (
    Aspect,
    Augmentation,
    Gender,
    Number,
    Person,
    PosTag,
    Transitivity,
)
from .reports import percent_display

SCHEMA_VERSION = "1"

SCHEMA_NAMES = (
    "lemma_page",
    "lemma_created",
    "review_queue_page",
    "decision_result",
    "stats_relations",
    "stats_coverage",
    "stats_iaa",
    "error",
)


class DecisionBody(BaseModel):
    relation: str | None = None
    reject: bool = False
    reviewer: str
    force: bool = False


class LemmaBody(BaseModel):
    spellings: list[str]
    pos: str
    gender: str | None = None
    number: str | None = None
    aspect: str | None = None
    person: str | None = None
    roots: list[str] | None = None
    augmentation: str | None = None
    transitivity: str | None = None
    dialect: str | None = None
    msa_counterpart: int | None = None
    all_senses_proper: bool = False


def _field_errors(violations) -> list[dict]:
    return [{"field": f, "message": m} for f, m in violations]


def create_app(
    graph: QabasGraph,
    *,
    auth_token: str | None = None,
    persist: Callable[[], None] | None = None,
) -> FastAPI:
    app = FastAPI(title="qabas", docs_url=None, redoc_url=None)

    def check_auth(request: Request) -> None:
        if auth_token is None:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {auth_token}":
            raise HTTPException(status_code=401, detail="missing or bad bearer token")

    def durable() -> None:
        if persist is not None:
            persist()

    @app.get("/api/lemmas", dependencies=[Depends(check_auth)])
    def get_lemmas(
        q: str = "",
        pos: str | None = None,
        lexicon: str | None = None,
        mapped: bool | None = None,
        page: int = 1,
        page_size: int = 50,
    ):
        pos_tag = None
        if pos:
            try:
                pos_tag = PosTag(pos)
            except ValueError:
                raise HTTPException(status_code=400, detail=f"unknown pos {pos!r}")
        try:
            result = store.search_lemmas(
                graph,
                q,
                pos=pos_tag,
                lexicon=lexicon,
                mapped=mapped,
                page=page,
                page_size=page_size,
            )
        except InvalidQuery as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {
            "schema_version": SCHEMA_VERSION,
            "page": result.page,
            "page_size": result.page_size,
            "total": result.total,
            "items": [asdict(item) for item in result.items],
        }

    @app.post("/api/lemmas", dependencies=[Depends(check_auth)], status_code=201)
    def post_lemma(body: LemmaBody):
        violations = []

        def parse_enum(enum_cls, value, fallback):
            if value in (None, ""):
                return fallback
            try:
                return enum_cls(value)
            except ValueError:
                violations.append((enum_cls.__name__.lower(), f"unknown value {value!r}"))
                return fallback

        spellings = []
        for raw in body.spellings:
            try:
                spellings.append(analyze(raw))
            except QabasError as exc:
                violations.append(("spellings", str(exc)))
        try:
            pos = PosTag(body.pos)
        except ValueError:
            violations.append(("pos", f"unknown tag {body.pos!r}"))
            pos = None
        roots = []
        for raw in body.roots or []:
            try:
                roots.append(analyze("".join(raw.split())))
            except QabasError as exc:
                violations.append(("roots", str(exc)))
        if violations:
            raise HTTPException(status_code=422, detail=_field_errors(violations))

        lemma = QabasLemma(
            id=0,
            spellings=tuple(spellings),
            pos=pos,
            gender=parse_enum(Gender, body.gender, Gender.NA),
            number=parse_enum(Number, body.number, Number.NA),
            aspect=parse_enum(Aspect, body.aspect, Aspect.NA),
            person=parse_enum(Person, body.person, Person.NA),
            roots=WordSet(roots),
            augmentation=parse_enum(Augmentation, body.augmentation, Augmentation.NA),
            transitivity=parse_enum(Transitivity, body.transitivity, Transitivity.NA),
            dialect_tag=body.dialect,
            msa_counterpart=body.msa_counterpart,
        )
        if violations:
            raise HTTPException(status_code=422, detail=_field_errors(violations))
        try:
            result = store.insert_manual_lemma(
                graph, lemma, proper_assertion=body.all_senses_proper
            )
        except ValidationFailure as exc:
            raise HTTPException(status_code=422, detail=_field_errors(exc.violations))
        durable()
        return {
            "schema_version": SCHEMA_VERSION,
            "id": result.id,
            "ref": f"{QABAS_LEXICON_ID}:{result.id}",
            "warnings": result.warnings,
        }

    def queue_item(corr) -> dict:
        def side(ref):
            lemma = graph.get_lemma(ref)
            if lemma is None:
                return {"ref": str(ref), "missing": True}
            summary = asdict(store.lemma_summary(graph, lemma))
            summary["missing"] = False
            return summary

        return {
            "id": corr.id,
            "l1": side(corr.l1),
            "l2": side(corr.l2),
            "provenance": corr.provenance.value,
            "status": corr.status.value,
            "relation": corr.relation.value,
            "precision": corr.precision,
            "suggested_relation": corr.relation.value,
            "suggested_label": AUTO_PROVISIONAL_LABEL
            if corr.status is Status.AUTO
            else RELATION_LABELS[corr.relation],
            "reviewer": corr.reviewer,
            "timestamp": corr.timestamp,
        }

    @app.get("/api/mappings", dependencies=[Depends(check_auth)])
    def get_mappings(status: str = "auto", page: int = 1, page_size: int = 50):
        try:
            wanted = Status(status.upper())
        except ValueError:
            raise HTTPException(status_code=400, detail=f"unknown status {status!r}")
        corrs = [c for c in graph.correspondences.values() if c.status is wanted]
        corrs.sort(key=lambda c: c.id)
        start = (page - 1) * page_size
        return {
            "schema_version": SCHEMA_VERSION,
            "page": page,
            "page_size": page_size,
            "total": len(corrs),
            "items": [queue_item(c) for c in corrs[start : start + page_size]],
        }

    @app.post("/api/mappings/{corr_id}/decision", dependencies=[Depends(check_auth)])
    def post_decision(corr_id: int, body: DecisionBody):
        corr = graph.correspondences.get(corr_id)
        if corr is None:
            raise HTTPException(status_code=404, detail=f"no correspondence {corr_id}")
        if corr.status is not Status.AUTO and not body.force:
            raise HTTPException(
                status_code=409,
                detail=f"correspondence {corr_id} is already {corr.status.value}; "
                "pass force=true to re-decide",
            )
        relation = None
        if not body.reject:
            if body.relation is None:
                raise HTTPException(
                    status_code=422,
                    detail=_field_errors([("relation", "required unless rejecting")]),
                )
            try:
                relation = relation_from_code(body.relation)
            except UnknownRelation as exc:
                raise HTTPException(
                    status_code=422, detail=_field_errors([("relation", str(exc))])
                )
        try:
            updated = review(
                graph, corr_id, relation=relation, reject=body.reject, reviewer=body.reviewer
            )
        except UnknownCorrespondence:
            raise HTTPException(status_code=404, detail=f"no correspondence {corr_id}")
        except ValidationFailure as exc:
            raise HTTPException(status_code=422, detail=_field_errors(exc.violations))
        except QabasError as exc:
            raise HTTPException(status_code=409, detail=str(exc))
        durable()
        return {"schema_version": SCHEMA_VERSION, "correspondence": queue_item(updated)}

    @app.get("/api/stats/relations", dependencies=[Depends(check_auth)])
    def stats_relations():
        counts = relation_counts(graph)
        return {
            "schema_version": SCHEMA_VERSION,
            "counts": {rel.value: n for rel, n in counts.items()},
            "labels": {rel.value: RELATION_LABELS[rel] for rel in Relation},
            "precisions": {rel.value: DEFAULT_PRECISIONS[rel] for rel in Relation},
            "total": sum(counts.values()),
        }

    @app.get("/api/stats/coverage", dependencies=[Depends(check_auth)])
    def stats_coverage():
        sources = sorted(lex for lex in graph.lexicons if lex != QABAS_LEXICON_ID)
        table = metrics.pos_coverage(graph, sources)

        def row(r):
            return {"key": r.key, "counts": list(r.counts)}

        corpora = []
        for corpus_id in sorted(graph.corpora):
            cov = coverage_report(graph, corpus_id)
            corpora.append(
                {
                    "corpus_id": corpus_id,
                    "tokens_total": cov.tokens_total,
                    "tokens_mapped": cov.tokens_mapped,
                    "token_percent": cov.token_percent,
                    "lemmas_total": cov.lemmas_total,
                    "lemmas_mapped": cov.lemmas_mapped,
                    "lemma_percent": cov.lemma_percent,
                }
            )
        return {
            "schema_version": SCHEMA_VERSION,
            "sources": table.sources,
            "nominal": [row(r) for r in table.nominal_rows],
            "nominal_total": row(table.nominal_total),
            "verb": [row(r) for r in table.verb_rows],
            "verb_total": row(table.verb_total),
            "functional_total": row(table.functional_total),
            "grand_total": row(table.grand_total),
            "corpora": corpora,
        }

    @app.get("/api/stats/iaa", dependencies=[Depends(check_auth)])
    def stats_iaa():
        records = []
        for corr in graph.correspondences.values():
            decisions = list(corr.audit) + [corr]
            for d in decisions:
                status = d.status
                if status is Status.AUTO or d.reviewer is None:
                    continue
                label = REJECT_LABEL if status is Status.REJECTED else d.relation.value
                records.append(
                    AnnotationRecord(
                        item=f"{corr.l1}|{corr.l2}", annotator=d.reviewer, label=label
                    )
                )
        labelings = records_to_labelings(records)
        pairs = []
        names = sorted(labelings)
        for i, a in enumerate(names):
            for b in names[i + 1 :]:
                common = set(labelings[a]) & set(labelings[b])
                if not common:
                    continue
                result = cohen_kappa(
                    {i: labelings[a][i] for i in common},
                    {i: labelings[b][i] for i in common},
                )
                agreements = sum(
                    1 for i in common if labelings[a][i] == labelings[b][i]
                )
                pairs.append(
                    {
                        "annotators": [a, b],
                        "items": len(common),
                        "kappa": round(result.value, 2),
                        "agreement_percent": percent_display(agreements, len(common)),
                        "degenerate": result.degenerate,
                    }
                )
        return {"schema_version": SCHEMA_VERSION, "pairs": pairs}

    @app.get("/api/schemas/{name}")
    def get_schema(name: str):
        if name not in SCHEMA_NAMES:
            raise HTTPException(status_code=404, detail=f"no schema {name!r}")
        return load_schema(name)

    return app


def load_schema(name: str) -> dict:
    text = resources.files("qabas").joinpath(f"schemas/{name}.json").read_text("utf-8")
    return json.loads(text)
