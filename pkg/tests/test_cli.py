import json

import pytest

from sciembed.cli import main
from sciembed.probe import ProbeResult

from test_corpus_parsers import arxiv_line, article, document


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """synth -> train-toy -> extract, small sizes, shared by CLI tests."""
    root = tmp_path_factory.mktemp("pipeline")
    corpus = root / "corpus.jsonl"
    params = root / "encoder.mtp"
    store = root / "emb.mev"
    assert run("synth", "--fields", 3, "--journals", 3, "--docs", 8,
               "--vocab", 400, "--seed", 7, "--output", corpus) == 0
    assert run("train-toy", "--input", corpus, "--output", params,
               "--feature-dim", 256, "--hidden-dim", 16, "--epochs", 2, "--seed", 7) == 0
    assert run("extract", "--input", corpus, "--params", params, "--output", store) == 0
    return root, corpus, params, store


def test_smoke_synth_train_extract_probe(pipeline, tmp_path):
    root, corpus, params, store = pipeline
    out = tmp_path / "probe.json"
    assert run("probe", "--embeddings", store, "--corpus", corpus,
               "--label-key", "field", "--runs", 1, "--seed", 0,
               "--method", "toy", "--dataset", "synthfields",
               "--output", out) == 0
    payload = json.loads(out.read_text())
    assert payload["kind"] == "probe"
    result = ProbeResult.from_json_dict(payload["result"])
    assert len(result.per_fold) == 4
    assert (out.parent / (out.name + ".csv")).exists()
    assert (out.parent / (out.name + ".manifest.json")).exists()


def test_probe_with_label_file(pipeline, tmp_path):
    _, corpus, _, store = pipeline
    records = [json.loads(l) for l in corpus.read_text().splitlines()]
    labels_path = tmp_path / "labels.tsv"
    labels_path.write_text(
        "".join(f"{r['id']}\t{r['field_labels'][0]}\n" for r in records), encoding="utf-8"
    )
    out = tmp_path / "probe.json"
    assert run("probe", "--embeddings", store, "--labels", labels_path,
               "--runs", 1, "--output", out) == 0
    assert json.loads(out.read_text())["config"]["n_classes"] == 3


def test_cluster_subcommand(pipeline, tmp_path):
    _, corpus, _, store = pipeline
    out = tmp_path / "cluster.json"
    assert run("cluster", "--embeddings", store, "--corpus", corpus,
               "--ks", "3,6", "--seed", 1, "--output", out) == 0
    payload = json.loads(out.read_text())
    assert [k for k, _ in payload["table"]] == [3, 6]
    assert all(0 < p <= 1 for _, p in payload["table"])


def test_retrieve_subcommand(pipeline, tmp_path):
    _, corpus, _, store = pipeline
    out = tmp_path / "retrieval.json"
    assert run("retrieve", "--embeddings", store, "--corpus", corpus,
               "--seed", 0, "--output", out) == 0
    payload = json.loads(out.read_text())
    assert [r["field"] for r in payload["rows"]] == ["f0", "f1", "f2"]
    assert all(0.0 <= r["ap"] <= 1.0 for r in payload["rows"] if r["present"])


def test_knn_subcommand(pipeline, tmp_path, capsys):
    _, corpus, _, store = pipeline
    out = tmp_path / "knn.csv"
    first_id = json.loads(corpus.read_text().splitlines()[0])["id"]
    assert run("knn", "--embeddings", store, "--id", first_id, "--k", 3,
               "--metric", "pearson", "--output", out) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "rank,id,score"
    assert len(lines) == 4
    assert first_id not in [l.split(",")[1] for l in lines[1:]]


def test_compare_subcommand(pipeline, tmp_path):
    _, corpus, _, store = pipeline
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for seed, path in ((0, a), (1, b)):
        assert run("probe", "--embeddings", store, "--corpus", corpus,
                   "--runs", 1, "--seed", seed, "--output", path) == 0
    out = tmp_path / "cmp.json"
    assert run("compare", "--a", a, "--b", b, "--output", out) == 0
    payload = json.loads(out.read_text())
    assert 0.0 <= payload["f1"]["p"] <= 1.0
    assert 0.0 <= payload["accuracy"]["p"] <= 1.0


def test_report_markdown_row_per_method(pipeline, tmp_path):
    _, corpus, _, store = pipeline
    results = []
    for method, seed in (("alpha", 0), ("beta", 1), ("gamma", 2)):
        path = tmp_path / f"{method}.json"
        assert run("probe", "--embeddings", store, "--corpus", corpus,
                   "--runs", 1, "--seed", seed, "--method", method,
                   "--dataset", "synth", "--output", path) == 0
        results.append(path)
    out_dir = tmp_path / "report"
    assert run("report", "--results", *results, "--output", out_dir) == 0
    md = (out_dir / "probe_table.md").read_text().splitlines()
    assert md[0].startswith("| method |")
    assert [row.split("|")[1].strip() for row in md[2:]] == ["alpha", "beta", "gamma"]
    assert (out_dir / "probe_table.csv").exists()
    assert (out_dir / "probe_scores.png").stat().st_size > 0


def test_report_cluster_and_retrieval_figures(pipeline, tmp_path):
    _, corpus, _, store = pipeline
    cl = tmp_path / "cl.json"
    rt = tmp_path / "rt.json"
    assert run("cluster", "--embeddings", store, "--corpus", corpus,
               "--ks", "3,6", "--method", "toy", "--output", cl) == 0
    assert run("retrieve", "--embeddings", store, "--corpus", corpus,
               "--method", "toy", "--output", rt) == 0
    out_dir = tmp_path / "report"
    assert run("report", "--results", cl, rt, "--output", out_dir) == 0
    for name in ("purity_table.csv", "purity_table.md", "purity_vs_k.png",
                 "retrieval_ap.csv", "retrieval_auc.md", "retrieval_ap.png"):
        assert (out_dir / name).exists()


def test_ingest_pubmed(tmp_path):
    xml = tmp_path / "page.xml"
    xml.write_bytes(document(
        article(),
        article(pmid="<PMID>10000002</PMID>", abstract=""),
    ))
    out = tmp_path / "corpus.jsonl"
    assert run("ingest-pubmed", "--input", xml, "--output", out) == 0
    assert len(out.read_text().splitlines()) == 1
    rejects = json.loads((tmp_path / "corpus.jsonl.rejects.json").read_text())
    assert rejects["files"][str(xml)]["skipped_no_abstract"] == 1


def test_ingest_arxiv_and_filter(tmp_path):
    meta = tmp_path / "meta.jsonl"
    lines = []
    for j in range(3):
        for i in range(6):
            lines.append(arxiv_line(
                id=f"21{j}{i:02d}.0000{j}{i}",
                categories="cs.LG" if j else "math.ST",
                **{"journal-ref": f"Journal {j}"},
                update_date=f"202{1 if i % 2 else 0}-01-0{i + 1}",
            ))
    meta.write_text("".join(l + "\n" for l in lines), encoding="utf-8")
    corpus = tmp_path / "corpus.jsonl"
    assert run("ingest-arxiv", "--input", meta, "--output", corpus) == 0
    assert len(corpus.read_text().splitlines()) == 18
    filtered = tmp_path / "filtered.jsonl"
    assert run("filter", "--input", corpus, "--output", filtered,
               "--min-per-journal", 4, "--max-per-journal", 5, "--year", 2021) == 0
    labels = json.loads((tmp_path / "filtered.jsonl.labels.json").read_text())
    assert sorted(labels) == ["Journal 0", "Journal 1", "Journal 2"]
    assert len(filtered.read_text().splitlines()) == 15


def test_fetch_pubmed_replay(tmp_path):
    recorded = tmp_path / "recorded"
    recorded.mkdir()
    for i in range(2):
        (recorded / f"page-{i:04d}.xml").write_bytes(document(article(
            pmid=f"<PMID>1000000{i}</PMID>")))
    out_dir = tmp_path / "pages"
    assert run("fetch-pubmed", "--issn", "1234-5678", "--year", 2021,
               "--replay", recorded, "--output", out_dir) == 0
    got = sorted(p.name for p in out_dir.glob("page-*.xml"))
    assert got == ["page-0000.xml", "page-0001.xml"]
    assert (out_dir / "fetch.manifest.json").exists()


def test_fetch_pubmed_batch_bound(tmp_path, capsys):
    assert run("fetch-pubmed", "--issn", "1234-5678", "--year", 2021,
               "--batch-size", 201, "--output", tmp_path / "x") == 1
    assert "batch_size" in capsys.readouterr().err


def test_export_input(pipeline, tmp_path):
    _, corpus, _, _ = pipeline
    out = tmp_path / "inputs.jsonl"
    assert run("export-input", "--input", corpus, "--output", out) == 0
    first = json.loads(out.read_text().splitlines()[0])
    assert " [SEP] " in first["text"]


def test_unknown_subcommand_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        run("frobnicate")
    assert exc.value.code != 0
    assert "usage" in capsys.readouterr().err


def test_missing_file_is_structured_error(tmp_path, capsys):
    assert run("extract", "--input", tmp_path / "nope.jsonl",
               "--params", tmp_path / "nope.mtp", "--output", tmp_path / "o.mev") == 1
    assert "error:" in capsys.readouterr().err


def test_config_file_defaults(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"fields": 2, "journals": 2, "docs": 4, "vocab": 150}))
    out = tmp_path / "c.jsonl"
    assert run("synth", "--config", cfg, "--docs", 5, "--seed", 0, "--output", out) == 0
    # --docs explicit on the command line wins; fields/journals/vocab from config
    assert len(out.read_text().splitlines()) == 2 * 2 * 5


def test_manifest_written_alongside_outputs(tmp_path):
    out = tmp_path / "c.jsonl"
    assert run("synth", "--fields", 2, "--journals", 2, "--docs", 4,
               "--vocab", 150, "--seed", 1, "--output", out) == 0
    manifest = json.loads((tmp_path / "c.jsonl.manifest.json").read_text())
    assert manifest["subcommand"] == "synth"
    assert manifest["seed"] == 1
    assert str(out) in manifest["outputs"]
