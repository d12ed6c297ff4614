"""Command-line entry point orchestrating the full pipeline."""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import cluster as cluster_mod
from . import metrics, probe, report, retrieval
from .corpus import (
    CorpusError,
    FilterConfig,
    JournalLabelMap,
    fetch_pubmed,
    filter_journals,
    generate_synthetic_corpus,
    load_arxiv_taxonomy,
    load_taxonomy,
    parse_arxiv_metadata,
    parse_pubmed_xml,
    read_corpus,
    write_corpus,
)
from .corpus.fetch import FetchError
from .corpus.taxonomy import SubcategoryTaxonomy
from .embedstore import StoreError, assemble_input, knn_query, read_store, write_store
from .encoder import TrainConfig, extract, load_params, save_params, train
from .manifest import write_manifest


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(
        json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def _load_labels_tsv(path) -> dict[str, str]:
    """Label file: one `id<TAB>class` pair per line."""
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ValueError(f"{path}:{lineno}: expected 'id<TAB>class'")
            if parts[0] in out:
                raise ValueError(f"{path}:{lineno}: duplicate id {parts[0]!r}")
            out[parts[0]] = parts[1]
    return out


def _labels_from_corpus(records, key: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for rec in records:
        if key == "journal":
            out[rec.id] = rec.journal
        elif key == "field":
            if len(rec.field_labels) == 1:
                out[rec.id] = next(iter(rec.field_labels))
            # multi-field records have no single class; leave them out
        else:
            raise ValueError(f"unknown label key {key!r}")
    return out


def _resolve_labels(args, store_ids):
    """(ids, int labels, class names) aligned to store order."""
    if args.labels:
        mapping = _load_labels_tsv(args.labels)
        label_inputs = [args.labels]
    elif args.corpus:
        mapping = _labels_from_corpus(read_corpus(args.corpus), args.label_key)
        label_inputs = [args.corpus]
    else:
        raise ValueError("provide --labels FILE or --corpus FILE")
    ids = [rid for rid in store_ids if rid in mapping]
    if not ids:
        raise ValueError("no store ids have labels")
    classes = sorted({mapping[rid] for rid in ids})
    class_index = {c: i for i, c in enumerate(classes)}
    y = [class_index[mapping[rid]] for rid in ids]
    return ids, y, classes, label_inputs


def _taxonomy_for(args, records) -> SubcategoryTaxonomy:
    if args.taxonomy == "auto":
        return SubcategoryTaxonomy.from_records(records)
    if args.taxonomy == "arxiv":
        return load_arxiv_taxonomy()
    return load_taxonomy(args.taxonomy)


# --- subcommand handlers ---


def cmd_synth(args) -> int:
    records = generate_synthetic_corpus(
        args.fields, args.journals, args.docs, args.vocab, args.seed
    )
    out = Path(args.output)
    write_corpus(records, out)
    write_manifest(
        out,
        "synth",
        {
            "fields": args.fields,
            "journals": args.journals,
            "docs": args.docs,
            "vocab": args.vocab,
            "deterministic": args.deterministic,
        },
        [],
        [out],
        seed=args.seed,
    )
    print(f"wrote {len(records)} records -> {out}")
    return 0


def cmd_ingest_pubmed(args) -> int:
    records = []
    seen = set()
    report_payload: dict = {"files": {}, "duplicate_ids_dropped": 0}
    for path in args.input:
        result = parse_pubmed_xml(Path(path).read_bytes())
        report_payload["files"][str(path)] = {
            "records": len(result.records),
            "skipped_no_abstract": result.skipped_no_abstract,
            "skipped_non_english": result.skipped_non_english,
            "rejects": [
                {"position": r.position, "pmid": r.pmid, "reason": r.reason}
                for r in result.rejects
            ],
        }
        for rec in result.records:
            if rec.id in seen:
                report_payload["duplicate_ids_dropped"] += 1
                continue
            seen.add(rec.id)
            records.append(rec)
    out = Path(args.output)
    write_corpus(records, out)
    rejects_path = Path(str(out) + ".rejects.json")
    _write_json(rejects_path, report_payload)
    write_manifest(out, "ingest-pubmed", {"deterministic": args.deterministic},
                   args.input, [out, rejects_path], seed=None)
    print(f"wrote {len(records)} records -> {out}")
    return 0


def cmd_ingest_arxiv(args) -> int:
    records = []
    seen = set()
    report_payload: dict = {"files": {}, "duplicate_ids_dropped": 0}
    for path in args.input:
        with open(path, "r", encoding="utf-8") as fh:
            result = parse_arxiv_metadata(fh)
        report_payload["files"][str(path)] = {
            "records": len(result.records),
            "rejects": [{"line": r.line, "reason": r.reason} for r in result.rejects],
        }
        for rec in result.records:
            if rec.id in seen:
                report_payload["duplicate_ids_dropped"] += 1
                continue
            seen.add(rec.id)
            records.append(rec)
    out = Path(args.output)
    write_corpus(records, out)
    rejects_path = Path(str(out) + ".rejects.json")
    _write_json(rejects_path, report_payload)
    write_manifest(out, "ingest-arxiv", {"deterministic": args.deterministic},
                   args.input, [out, rejects_path], seed=None)
    print(f"wrote {len(records)} records -> {out}")
    return 0


def cmd_fetch_pubmed(args) -> int:
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    start_idx = len(list(out_dir.glob("page-*.xml")))
    written = []
    pages = fetch_pubmed(
        args.issn,
        args.year,
        batch_size=args.batch_size,
        cursor_path=args.cursor,
        replay_dir=args.replay,
    )
    for i, page in enumerate(pages, start=start_idx):
        path = out_dir / f"page-{i:04d}.xml"
        path.write_bytes(page)
        written.append(path)
    inputs = sorted(Path(args.replay).glob("page-*.xml")) if args.replay else []
    write_manifest(
        out_dir / "fetch",
        "fetch-pubmed",
        {
            "issn": args.issn,
            "year": args.year,
            "batch_size": args.batch_size,
            "replay": bool(args.replay),
            "deterministic": args.deterministic,
        },
        inputs,
        written,
        seed=None,
    )
    print(f"fetched {len(written)} pages -> {out_dir}")
    return 0


def cmd_filter(args) -> int:
    records = read_corpus(args.input)
    cfg = FilterConfig(args.max_per_journal, args.min_per_journal, args.year)
    outcome = filter_journals(records, cfg)
    out = Path(args.output)
    write_corpus(outcome.records, out)
    labelmap_path = Path(args.labelmap or str(out) + ".labels.json")
    outcome.labels.save(labelmap_path)
    write_manifest(
        out,
        "filter",
        {
            "max_per_journal": cfg.max_per_journal,
            "min_per_journal": cfg.min_per_journal,
            "required_recent_year": cfg.required_recent_year,
            "deterministic": args.deterministic,
        },
        [args.input],
        [out, labelmap_path],
        seed=None,
    )
    print(f"kept {len(outcome.records)} records across {len(outcome.labels)} journals -> {out}")
    return 0


def cmd_train_toy(args) -> int:
    records = read_corpus(args.input)
    inputs = [args.input]
    if args.labelmap:
        labels = JournalLabelMap.load(args.labelmap)
        inputs.append(args.labelmap)
    else:
        labels = JournalLabelMap.from_journals(r.journal for r in records)
    cfg = TrainConfig(
        feature_dim=args.feature_dim,
        hidden_dim=args.hidden_dim,
        lr=args.lr,
        batch=args.batch,
        epochs=args.epochs,
        seed=args.seed,
    )
    params, trace = train(records, labels, cfg)
    out = Path(args.output)
    save_params(params, out)
    loss_path = Path(str(out) + ".loss.json")
    _write_json(loss_path, {"epoch_mean_loss": trace})
    write_manifest(
        out,
        "train-toy",
        {
            "feature_dim": cfg.feature_dim,
            "hidden_dim": cfg.hidden_dim,
            "lr": cfg.lr,
            "batch": cfg.batch,
            "epochs": cfg.epochs,
            "n_classes": len(labels),
            "deterministic": args.deterministic,
        },
        inputs,
        [out, loss_path],
        seed=args.seed,
    )
    print(f"trained encoder over {len(labels)} journal classes -> {out}")
    return 0


def cmd_extract(args) -> int:
    params = load_params(args.params)
    records = read_corpus(args.input)
    matrix = extract(params, records)
    out = Path(args.output)
    write_store(matrix, out)
    write_manifest(
        out,
        "extract",
        {"hidden_dim": params.hidden_dim, "deterministic": args.deterministic},
        [args.input, args.params],
        [out],
        seed=params.seed,
    )
    print(f"extracted {len(matrix)}x{matrix.dim} embeddings -> {out}")
    return 0


def cmd_export_input(args) -> int:
    records = read_corpus(args.input)
    out = Path(args.output)
    with open(out, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps({"id": rec.id, "text": assemble_input(rec)},
                                ensure_ascii=False) + "\n")
    write_manifest(out, "export-input", {"deterministic": args.deterministic},
                   [args.input], [out], seed=None)
    print(f"wrote {len(records)} encoder inputs -> {out}")
    return 0


def cmd_probe(args) -> int:
    store = read_store(args.embeddings)
    ids, y, classes, label_inputs = _resolve_labels(args, store.ids)
    x = store.values[[store.index_of(i) for i in ids]]
    cfg = probe.ProbeConfig(
        lr=args.lr,
        batch=args.batch,
        epochs=args.epochs,
        folds=args.folds,
        regularization=args.regularization,
        runs=args.runs,
        seed=args.seed,
    )
    result = probe.train_probe(x, y, cfg)
    out = Path(args.output)
    config = {
        "lr": cfg.lr,
        "batch": cfg.batch,
        "epochs": cfg.epochs,
        "folds": cfg.folds,
        "regularization": cfg.regularization,
        "runs": cfg.runs,
        "n_rows": len(ids),
        "n_classes": len(classes),
        "deterministic": args.deterministic,
    }
    _write_json(
        out,
        {
            "kind": "probe",
            "method": args.method,
            "dataset": args.dataset,
            "classes": classes,
            "config": config,
            "result": result.to_json_dict(),
        },
    )
    csv_path = Path(str(out) + ".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "dataset", "f1_mean", "f1_std", "acc_mean", "acc_std"])
        writer.writerow(
            [args.method, args.dataset, result.mean_f1, result.std_f1,
             result.mean_acc, result.std_acc]
        )
    write_manifest(out, "probe", config, [args.embeddings] + label_inputs,
                   [out, csv_path], seed=args.seed)
    print(
        f"probe[{args.method}/{args.dataset}]: acc {result.mean_acc:.4f} "
        f"± {result.std_acc:.4f}, macro-F1 {result.mean_f1:.4f} ± {result.std_f1:.4f}"
    )
    return 0


def cmd_cluster(args) -> int:
    store = read_store(args.embeddings)
    ids, y, classes, label_inputs = _resolve_labels(args, store.ids)
    x = store.values[[store.index_of(i) for i in ids]]
    ks = [int(k) for k in args.ks.split(",") if k.strip()]
    rows = cluster_mod.purity_sweep(x, y, ks, seed=args.seed, n_restarts=args.restarts)
    out = Path(args.output)
    _write_json(
        out,
        {
            "kind": "cluster",
            "method": args.method,
            "dataset": args.dataset,
            "n_classes": len(classes),
            "table": [[k, p] for k, p in rows],
        },
    )
    csv_path = Path(str(out) + ".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "purity"])
        writer.writerows(rows)
    write_manifest(
        out,
        "cluster",
        {"ks": ks, "restarts": args.restarts, "deterministic": args.deterministic},
        [args.embeddings] + label_inputs,
        [out, csv_path],
        seed=args.seed,
    )
    for k, p in rows:
        print(f"purity[k={k}]: {p:.4f}")
    return 0


def cmd_retrieve(args) -> int:
    store = read_store(args.embeddings)
    records = read_corpus(args.corpus)
    taxonomy = _taxonomy_for(args, records)
    rows = retrieval.evaluate_all_fields(
        records, store, taxonomy, max_pairs=args.max_pairs, seed=args.seed
    )
    out = Path(args.output)
    _write_json(
        out,
        {
            "kind": "retrieval",
            "method": args.method,
            "rows": [
                {
                    "field": r.field,
                    "present": r.present,
                    "ap": r.ap,
                    "auc": r.auc,
                    "n_pairs": r.n_pairs,
                    "n_pos": r.n_pos,
                    "n_neg": r.n_neg,
                    "reason": r.reason,
                }
                for r in rows
            ],
        },
    )
    csv_path = Path(str(out) + ".csv")
    with open(csv_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["field", "present", "ap", "auc", "n_pairs", "n_pos", "n_neg"])
        for r in rows:
            writer.writerow(
                [r.field, int(r.present), "" if r.ap is None else r.ap,
                 "" if r.auc is None else r.auc, r.n_pairs, r.n_pos, r.n_neg]
            )
    inputs = [args.embeddings, args.corpus]
    if args.taxonomy not in ("auto", "arxiv"):
        inputs.append(args.taxonomy)
    write_manifest(out, "retrieve",
                   {"max_pairs": args.max_pairs, "taxonomy": args.taxonomy,
                    "deterministic": args.deterministic},
                   inputs, [out, csv_path], seed=args.seed)
    for r in rows:
        if r.present:
            print(f"retrieval[{r.field}]: AP {r.ap:.4f}, AUC {r.auc:.4f} ({r.n_pairs} pairs)")
        else:
            print(f"retrieval[{r.field}]: absent ({r.reason})")
    return 0


def cmd_knn(args) -> int:
    store = read_store(args.embeddings)
    ranked = knn_query(store, args.id, args.k, metric=args.metric)
    out = Path(args.output)
    with open(out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "id", "score"])
        for rank, (rid, score) in enumerate(ranked, start=1):
            writer.writerow([rank, rid, score])
    write_manifest(out, "knn",
                   {"id": args.id, "k": args.k, "metric": args.metric,
                    "deterministic": args.deterministic},
                   [args.embeddings], [out], seed=None)
    for rank, (rid, score) in enumerate(ranked, start=1):
        print(f"{rank}\t{rid}\t{score:.6f}")
    return 0


def cmd_compare(args) -> int:
    payload_a = json.loads(Path(args.a).read_text(encoding="utf-8"))
    payload_b = json.loads(Path(args.b).read_text(encoding="utf-8"))
    out = Path(args.output)
    comparison: dict = {
        "kind": "compare",
        "a": payload_a.get("method", args.a),
        "b": payload_b.get("method", args.b),
        "welch": args.welch,
    }
    for key, metric_name in (("macro_f1", "f1"), ("accuracy", "accuracy")):
        sample_a = [f[key] for f in payload_a["result"]["per_fold"]]
        sample_b = [f[key] for f in payload_b["result"]["per_fold"]]
        t, p = metrics.unpaired_t_test(sample_a, sample_b, welch=args.welch)
        comparison[metric_name] = {"t": t, "p": p}
        print(f"{metric_name}: t={t:.4f} p={p:.6f}")
    _write_json(out, comparison)
    write_manifest(out, "compare", {"welch": args.welch}, [args.a, args.b], [out], seed=None)
    return 0


def cmd_report(args) -> int:
    grouped = report.load_results(args.results)
    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if grouped["probe"]:
        written += report.write_probe_report(grouped["probe"], out_dir)
    if grouped["cluster"]:
        written += report.write_cluster_report(grouped["cluster"], out_dir)
    if grouped["retrieval"]:
        written += report.write_retrieval_report(grouped["retrieval"], out_dir)
    write_manifest(out_dir / "report", "report", {"deterministic": args.deterministic},
                   args.results, written, seed=None)
    for path in written:
        print(f"wrote {path}")
    return 0


# --- parser wiring ---


def _add_common(sp, seed=True):
    sp.add_argument("--seed", type=int, default=0 if seed else None,
                    help="seed for all randomness in this subcommand")
    sp.add_argument("--config", default=None, help="JSON file with option defaults")
    sp.add_argument("--deterministic", action=argparse.BooleanOptionalAction,
                    default=True, help="force sequential reductions")


def _add_label_opts(sp):
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--labels", help="TSV label file: id<TAB>class")
    group.add_argument("--corpus", help="canonical corpus to derive labels from")
    sp.add_argument("--label-key", choices=["field", "journal"], default="field",
                    help="record attribute used as the class with --corpus")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sciembed",
        description="Benchmark scientific-abstract embeddings: ingest, encode, evaluate.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("synth", help="generate a synthetic corpus")
    sp.add_argument("--fields", type=int, default=6)
    sp.add_argument("--journals", type=int, default=10, help="journals per field")
    sp.add_argument("--docs", type=int, default=50, help="documents per journal")
    sp.add_argument("--vocab", type=int, default=5000)
    sp.add_argument("--output", required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("ingest-pubmed", help="parse e-utils XML into the canonical corpus")
    sp.add_argument("--input", nargs="+", required=True)
    sp.add_argument("--output", required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_ingest_pubmed)

    sp = sub.add_parser("ingest-arxiv", help="parse metadata JSONL into the canonical corpus")
    sp.add_argument("--input", nargs="+", required=True)
    sp.add_argument("--output", required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_ingest_arxiv)

    sp = sub.add_parser("fetch-pubmed", help="download e-utils pages for an ISSN/year")
    sp.add_argument("--issn", required=True)
    sp.add_argument("--year", type=int, required=True)
    sp.add_argument("--batch-size", type=int, default=200)
    sp.add_argument("--output", required=True, help="directory for page-NNNN.xml files")
    sp.add_argument("--replay", default=None, help="directory of recorded pages (offline mode)")
    sp.add_argument("--cursor", default=None, help="cursor file for resumable fetching")
    _add_common(sp)
    sp.set_defaults(func=cmd_fetch_pubmed)

    sp = sub.add_parser("filter", help="apply journal min/cap/recency rules")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--labelmap", default=None, help="where to write the journal label map")
    sp.add_argument("--max-per-journal", type=int, default=300)
    sp.add_argument("--min-per-journal", type=int, default=100)
    sp.add_argument("--year", type=int, default=2021, help="required recent publication year")
    _add_common(sp)
    sp.set_defaults(func=cmd_filter)

    sp = sub.add_parser("train-toy", help="train the journal-supervised encoder")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True, help="checkpoint path")
    sp.add_argument("--labelmap", default=None)
    sp.add_argument("--feature-dim", type=int, default=4096)
    sp.add_argument("--hidden-dim", type=int, default=64)
    sp.add_argument("--lr", type=float, default=2.0)
    sp.add_argument("--batch", type=int, default=100)
    sp.add_argument("--epochs", type=int, default=5)
    _add_common(sp)
    sp.set_defaults(func=cmd_train_toy)

    sp = sub.add_parser("extract", help="embed a corpus with a trained encoder")
    sp.add_argument("--input", required=True)
    sp.add_argument("--params", required=True)
    sp.add_argument("--output", required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("export-input", help="emit assembled encoder input strings")
    sp.add_argument("--input", required=True)
    sp.add_argument("--output", required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_export_input)

    sp = sub.add_parser("probe", help="linear evaluation of an embedding store")
    sp.add_argument("--embeddings", required=True)
    sp.add_argument("--output", required=True)
    _add_label_opts(sp)
    sp.add_argument("--method", default="default", help="method name for reports")
    sp.add_argument("--dataset", default="default", help="dataset name for reports")
    sp.add_argument("--lr", type=float, default=5e-4)
    sp.add_argument("--batch", type=int, default=100)
    sp.add_argument("--epochs", type=int, default=5)
    sp.add_argument("--folds", type=int, default=4)
    sp.add_argument("--regularization", type=float, default=0.0)
    sp.add_argument("--runs", type=int, default=3)
    _add_common(sp)
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("cluster", help="k-means purity sweep")
    sp.add_argument("--embeddings", required=True)
    sp.add_argument("--output", required=True)
    _add_label_opts(sp)
    sp.add_argument("--method", default="default")
    sp.add_argument("--dataset", default="default")
    sp.add_argument("--ks", default="10,20,50,100")
    sp.add_argument("--restarts", type=int, default=1)
    _add_common(sp)
    sp.set_defaults(func=cmd_cluster)

    sp = sub.add_parser("retrieve", help="per-field pair retrieval scores")
    sp.add_argument("--embeddings", required=True)
    sp.add_argument("--corpus", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--method", default="default")
    sp.add_argument("--taxonomy", default="auto",
                    help="'auto' (derive from corpus), 'arxiv' (shipped), or a file path")
    sp.add_argument("--max-pairs", type=int, default=retrieval.DEFAULT_MAX_PAIRS)
    _add_common(sp)
    sp.set_defaults(func=cmd_retrieve)

    sp = sub.add_parser("knn", help="nearest neighbors of one document")
    sp.add_argument("--embeddings", required=True)
    sp.add_argument("--id", required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--metric", choices=["cosine", "pearson"], default="cosine")
    sp.add_argument("--output", required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_knn)

    sp = sub.add_parser("compare", help="unpaired t-test between two probe results")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--output", required=True)
    sp.add_argument("--welch", action="store_true", help="Welch instead of pooled variance")
    _add_common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("report", help="assemble tables and figures from result files")
    sp.add_argument("--results", nargs="+", required=True)
    sp.add_argument("--output", required=True, help="report directory")
    _add_common(sp)
    sp.set_defaults(func=cmd_report)

    return parser


def _apply_config_file(args, argv: list[str]) -> None:
    if not getattr(args, "config", None):
        return
    overrides = json.loads(Path(args.config).read_text(encoding="utf-8"))
    if not isinstance(overrides, dict):
        raise ValueError(f"{args.config}: config must be a JSON object")
    explicit = {tok.split("=", 1)[0] for tok in argv if tok.startswith("--")}
    for key, value in overrides.items():
        flag = "--" + key.replace("_", "-")
        attr = key.replace("-", "_")
        if not hasattr(args, attr):
            raise ValueError(f"{args.config}: unknown option {key!r}")
        if flag not in explicit:
            setattr(args, attr, value)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config_file(args, argv)
        return args.func(args)
    except (ValueError, KeyError, OSError, CorpusError, StoreError, FetchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
