"""Command-line entry point: ingestion, automapping, linking, stats, export, serve.

Every command prints a one-line machine-parsable summary (key=value pairs)
to stdout and exits nonzero on any error: 1 for usage errors, 2 for data
errors, with row-level detail on stderr.  All commands are deterministic;
identical command sequences on identical inputs produce byte-identical
exports.
"""

from __future__ import annotations

import sys
from contextlib import contextmanager
from pathlib import Path

import click

from . import corpus as corpus_ops
from . import store as store_ops
from .errors import MalformedRow, QabasError
from .formats import (
    CORPUS_LINKED_COLUMNS,
    LEXICON_COLUMNS,
    MAPPING_COLUMNS,
    external_to_cells,
    lemma_to_json,
    mapping_to_cells,
    mapping_to_json,
    parse_mapping_row,
    qabas_to_cells,
    render_jsonl,
    render_tsv,
    split_line,
    token_to_cells,
)
from .graph import QabasGraph, data_lock
from .lemmas import QABAS_LEXICON_ID, LexiconDescriptor, ref_sort_key
from .mapping import (
    RELATION_LABELS,
    AuditEntry,
    MappingCorrespondence,
    Relation,
    automap as run_automap,
    pair_key,
    relation_counts,
    relation_from_code,
)
from .metrics import pos_coverage


@contextmanager
def open_graph(data_dir: str, write: bool = True):
    with data_lock(data_dir):
        graph = QabasGraph.load(data_dir)
        yield graph
        if write:
            graph.save(data_dir)


def summary(**pairs) -> None:
    click.echo(" ".join(f"{k}={v}" for k, v in pairs.items()))


@click.group()
@click.option(
    "--data-dir",
    envvar="QABAS_DATA_DIR",
    default="qabas-data",
    show_default=True,
    help="Directory holding the store's segment files.",
)
@click.pass_context
def cli(ctx: click.Context, data_dir: str) -> None:
    """Link Arabic lexicons and corpora into one lexicographic data graph."""
    ctx.obj = data_dir


@cli.command()
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus", "corpus_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--id", "source_id", default=None, help="Lexicon/corpus id (default: file stem).")
@click.option("--name", default=None, help="Display name (default: the id).")
@click.option("--category", default="", help="Source category for the descriptor.")
@click.option("--variety", default="MSA", help="Corpus variety (MSA, Classical, dialect).")
@click.option("--canonical", is_flag=True, help="Ingest rows as canonical lemmas.")
@click.option("--strict/--no-strict", default=None, help="Full-diacritization validation.")
@click.option("--replace", is_flag=True, help="Replace an already ingested lexicon.")
@click.pass_obj
def ingest(data_dir, lexicon_path, corpus_path, source_id, name, category, variety,
           canonical, strict, replace):
    """Ingest a lexicon TSV or a corpus TSV."""
    if bool(lexicon_path) == bool(corpus_path):
        raise click.UsageError("pass exactly one of --lexicon or --corpus")
    path = Path(lexicon_path or corpus_path)
    source_id = source_id or (QABAS_LEXICON_ID if canonical else path.stem)
    with open_graph(data_dir) as graph:
        lines = path.read_text(encoding="utf-8").splitlines()
        if lexicon_path:
            descriptor = LexiconDescriptor(
                lexicon_id=source_id, name=name or source_id, category=category
            )
            report = store_ops.ingest_lexicon(
                graph, descriptor, lines,
                canonical=canonical, strict=strict, replace_existing=replace,
            )
            summary(lexicon=source_id, accepted=report.accepted, rejected=report.rejected_count)
        else:
            descriptor = corpus_ops.CorpusDescriptor(
                corpus_id=source_id, name=name or source_id, variety=variety
            )
            report = corpus_ops.ingest_corpus(graph, descriptor, lines)
            summary(corpus=source_id, accepted=report.accepted, rejected=report.rejected_count)
    if report.rejected:
        for row_no, reason in report.rejected:
            click.echo(f"row {row_no}: {reason}", err=True)
        sys.exit(2)


@cli.command()
@click.option("--source", required=True)
@click.option("--target", required=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Also write the candidate batch as a mappings TSV.")
@click.pass_obj
def automap(data_dir, source, target, out):
    """Discover candidate correspondences between two lexicons."""
    with open_graph(data_dir) as graph:
        batch = run_automap(graph, source, target)
        if out:
            text = render_tsv(
                MAPPING_COLUMNS, [mapping_to_cells(c) for c in batch.candidates]
            )
            Path(out).write_text(text, encoding="utf-8")
    summary(
        candidates=len(batch.candidates),
        pairs_compared=batch.pairs_compared,
        blocks=batch.blocks,
        source=source,
        target=target,
    )


@cli.command("review-import")
@click.argument("tsv", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
def review_import(data_dir, tsv):
    """Import a mappings TSV (decisions round-trip through this format).

    Rows identical to a stored correspondence are skipped.  A row for a
    pair that already has a live (non-rejected) correspondence updates it
    in place, keeping the audit trail, so the one-live-per-pair invariant
    survives imports.  Anything else is added; references are stored as
    given, since published mapping links may name lexicons that are not
    loaded locally.
    """
    lines = Path(tsv).read_text(encoding="utf-8").splitlines()
    added = updated = unchanged = 0
    rejected: list[tuple[int, str]] = []
    with open_graph(data_dir) as graph:
        for row_no, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            cells = split_line(line)
            if row_no == 1 and cells[0] == MAPPING_COLUMNS[0]:
                continue
            try:
                fields = parse_mapping_row(cells, row_no)
            except MalformedRow as exc:
                rejected.append((exc.row_no, exc.reason))
                continue
            pk = pair_key(fields["l1"], fields["l2"])
            signature = (
                fields["status"],
                fields["relation"],
                fields["provenance"],
                fields["reviewer"],
                fields["timestamp"],
            )
            exact = next(
                (
                    c
                    for c in graph.corrs_for_pair(pk)
                    if (c.status, c.relation, c.provenance, c.reviewer, c.timestamp)
                    == signature
                ),
                None,
            )
            if exact is not None:
                unchanged += 1
                continue
            live = graph.non_rejected_for_pair(pk)
            if live is not None:
                merged = MappingCorrespondence(
                    id=live.id,
                    l1=fields["l1"],
                    l2=fields["l2"],
                    relation=fields["relation"],
                    status=fields["status"],
                    provenance=fields["provenance"],
                    reviewer=fields["reviewer"],
                    timestamp=fields["timestamp"],
                    audit=live.audit
                    + (AuditEntry(live.status, live.relation, live.reviewer, live.timestamp),),
                )
                graph.replace_correspondence(merged)
                updated += 1
            else:
                graph.add_correspondence(
                    MappingCorrespondence(
                        id=graph.allocate_corr_id(),
                        l1=fields["l1"],
                        l2=fields["l2"],
                        relation=fields["relation"],
                        status=fields["status"],
                        provenance=fields["provenance"],
                        reviewer=fields["reviewer"],
                        timestamp=fields["timestamp"],
                    )
                )
                added += 1
    summary(added=added, updated=updated, changed=added + updated, unchanged=unchanged)
    if rejected:
        for row_no, reason in rejected:
            click.echo(f"row {row_no}: {reason}", err=True)
        sys.exit(2)


@cli.command("link-corpus")
@click.argument("corpus_id")
@click.option("--relations", default=None,
              help="Comma-separated relation whitelist (default R1..R6).")
@click.pass_obj
def link_corpus_cmd(data_dir, corpus_id, relations):
    """Resolve a corpus's source lemma ids to canonical lemma ids."""
    whitelist = None
    if relations is not None:
        whitelist = frozenset(
            relation_from_code(code.strip())
            for code in relations.split(",")
            if code.strip()
        )
    with open_graph(data_dir) as graph:
        report = corpus_ops.link_corpus(graph, corpus_id, whitelist)
    summary(
        corpus=corpus_id,
        tokens_resolved=report.tokens_resolved,
        tokens_unresolved=report.tokens_unresolved,
        lemmas_resolved=report.lemmas_resolved,
        lemmas_unresolved=report.lemmas_unresolved,
        ambiguous=len(report.ambiguities),
    )
    for amb in report.ambiguities:
        click.echo(
            f"ambiguous {amb.source_ref}: chose qabas:{amb.chosen} "
            f"from {list(amb.alternatives)} ({amb.token_count} tokens)",
            err=True,
        )


@cli.command()
@click.argument("report", type=click.Choice(["coverage", "relations", "iaa"]))
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the full report as TSV.")
@click.option("--from-tsv", "iaa_tsv", type=click.Path(exists=True, dir_okay=False),
              default=None, help="For iaa: read a mappings TSV instead of the store.")
@click.pass_obj
def stats(data_dir, report, out, iaa_tsv):
    """Print relation counts, coverage tables, or inter-annotator agreement."""
    if report == "iaa" and iaa_tsv is not None:
        from .metrics import labelings_from_mapping_rows, pairwise_iaa

        rows = []
        for row_no, line in enumerate(
            Path(iaa_tsv).read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip():
                continue
            cells = split_line(line)
            if row_no == 1 and cells[0] == MAPPING_COLUMNS[0]:
                continue
            rows.append(parse_mapping_row(cells, row_no))
        labelings = labelings_from_mapping_rows(rows)
        result = pairwise_iaa(labelings)
        summary(pairs=len(result))
        for (a, b), kappa in sorted(result.items()):
            click.echo(f"{a}-{b}: kappa={kappa}")
        return
    with open_graph(data_dir, write=False) as graph:
        if report == "relations":
            counts = relation_counts(graph)
            total = sum(counts.values())
            pairs = {rel.value: n for rel, n in counts.items()}
            summary(**pairs, total=total)
            if out:
                rows = [
                    [rel.value, RELATION_LABELS[rel], str(counts[rel])]
                    for rel in Relation
                ]
                rows.append(["TOTAL", "", str(total)])
                Path(out).write_text(
                    render_tsv(("relation", "label", "count"), rows), encoding="utf-8"
                )
        elif report == "coverage":
            sources = sorted(l for l in graph.lexicons if l != QABAS_LEXICON_ID)
            table = pos_coverage(graph, sources)
            grand = dict(zip(table.sources, table.grand_total.counts))
            summary(
                sources=len(sources),
                corpora=len(graph.corpora),
                **{f"total_{k}": v for k, v in grand.items()},
            )
            if out:
                rows = []
                for r in (
                    table.nominal_rows
                    + [table.nominal_total]
                    + table.verb_rows
                    + [table.verb_total, table.functional_total, table.grand_total]
                ):
                    rows.append([r.key] + [str(c) for c in r.counts])
                for corpus_id in sorted(graph.corpora):
                    cov = corpus_ops.coverage_report(graph, corpus_id)
                    rows.append(
                        [
                            f"corpus:{corpus_id}",
                            f"tokens {cov.tokens_mapped}/{cov.tokens_total} ({cov.token_percent}%)",
                            f"lemmas {cov.lemmas_mapped}/{cov.lemmas_total} ({cov.lemma_percent}%)",
                        ]
                    )
                Path(out).write_text(
                    render_tsv(("group",) + tuple(table.sources), rows), encoding="utf-8"
                )
        else:
            from .api import create_app  # reuse the endpoint's assembly logic

            app = create_app(graph)
            from fastapi.testclient import TestClient

            payload = TestClient(app).get("/api/stats/iaa").json()
            pairs = payload["pairs"]
            summary(pairs=len(pairs))
            for p in pairs:
                click.echo(
                    f"{p['annotators'][0]}-{p['annotators'][1]}: kappa={p['kappa']} "
                    f"items={p['items']}"
                )
            if out:
                rows = [
                    [p["annotators"][0], p["annotators"][1], str(p["kappa"]), str(p["items"])]
                    for p in pairs
                ]
                Path(out).write_text(
                    render_tsv(("annotator_a", "annotator_b", "kappa", "items"), rows),
                    encoding="utf-8",
                )


@cli.command()
@click.argument("what", type=click.Choice(["lemmas", "mappings", "corpus"]))
@click.option("--format", "fmt", type=click.Choice(["tsv", "jsonl"]), default="tsv",
              show_default=True)
@click.option("--out", type=click.Path(file_okay=True), default=None,
              help="Output file (mappings/corpus) or directory (lemmas).")
@click.option("--id", "corpus_id", default=None, help="Corpus id for `export corpus`.")
@click.pass_obj
def export(data_dir, what, fmt, out, corpus_id):
    """Write lemmas, mappings, or a linked corpus to TSV/JSON-lines."""
    with open_graph(data_dir, write=False) as graph:
        if what == "lemmas":
            out_dir = Path(out) if out else Path(data_dir) / "exports"
            out_dir.mkdir(parents=True, exist_ok=True)
            files = 0
            count = 0
            for lexicon_id in sorted(graph.lexicons):
                if lexicon_id == QABAS_LEXICON_ID:
                    lemmas = sorted(graph.canonical.values(), key=lambda l: l.id)
                    cells = [qabas_to_cells(l) for l in lemmas]
                else:
                    lemmas = sorted(
                        graph.external_of(lexicon_id), key=lambda l: ref_sort_key(l.ref)
                    )
                    cells = [external_to_cells(l) for l in lemmas]
                path = out_dir / f"lemmas-{lexicon_id}.{fmt}"
                if fmt == "tsv":
                    path.write_text(render_tsv(LEXICON_COLUMNS, cells), encoding="utf-8")
                else:
                    path.write_text(
                        render_jsonl(lemma_to_json(l) for l in lemmas), encoding="utf-8"
                    )
                files += 1
                count += len(lemmas)
            summary(exported=count, files=files, path=out_dir)
        elif what == "mappings":
            corrs = sorted(
                graph.correspondences.values(),
                key=lambda c: (ref_sort_key(c.l1), ref_sort_key(c.l2), c.timestamp),
            )
            path = Path(out) if out else Path(data_dir) / "exports" / f"mappings.{fmt}"
            path.parent.mkdir(parents=True, exist_ok=True)
            if fmt == "tsv":
                path.write_text(
                    render_tsv(MAPPING_COLUMNS, [mapping_to_cells(c) for c in corrs]),
                    encoding="utf-8",
                )
            else:
                path.write_text(
                    render_jsonl(mapping_to_json(c) for c in corrs), encoding="utf-8"
                )
            summary(exported=len(corrs), path=path)
        else:
            if not corpus_id:
                raise click.UsageError("export corpus requires --id")
            if corpus_id not in graph.corpora:
                raise QabasError(f"corpus {corpus_id!r} is not ingested")
            tokens = graph.tokens[corpus_id]
            path = Path(out) if out else Path(data_dir) / "exports" / f"corpus-{corpus_id}.{fmt}"
            path.parent.mkdir(parents=True, exist_ok=True)
            if fmt == "tsv":
                path.write_text(
                    render_tsv(
                        CORPUS_LINKED_COLUMNS,
                        [token_to_cells(t, linked=True) for t in tokens],
                    ),
                    encoding="utf-8",
                )
            else:
                path.write_text(
                    render_jsonl(
                        dict(zip(CORPUS_LINKED_COLUMNS, token_to_cells(t, linked=True)))
                        for t in tokens
                    ),
                    encoding="utf-8",
                )
            summary(exported=len(tokens), path=path)


@cli.command()
@click.option("--bind", envvar="QABAS_BIND", default="127.0.0.1:8000", show_default=True)
@click.option("--token", envvar="QABAS_TOKEN", default=None,
              help="Shared bearer token; unauthenticated when omitted.")
@click.pass_obj
def serve(data_dir, bind, token):
    """Run the HTTP review service over the data directory."""
    import uvicorn

    from .api import create_app

    host, _, port = bind.partition(":")
    with data_lock(data_dir):
        graph = QabasGraph.load(data_dir)
        app = create_app(
            graph, auth_token=token, persist=lambda: graph.save(data_dir)
        )
        click.echo(f"serving on http://{host}:{port or 8000} data_dir={data_dir}")
        uvicorn.run(app, host=host, port=int(port or 8000), log_level="warning")


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    except QabasError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
