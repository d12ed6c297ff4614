"""Assemble result files into report tables (CSV + Markdown) and figures."""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def load_results(paths) -> dict[str, list[dict]]:
    """Group result JSON files by their `kind` field."""
    grouped: dict[str, list[dict]] = {"probe": [], "cluster": [], "retrieval": []}
    for p in paths:
        payload = json.loads(Path(p).read_text(encoding="utf-8"))
        kind = payload.get("kind")
        if kind not in grouped:
            raise ValueError(f"{p}: unknown result kind {kind!r}")
        grouped[kind].append(payload)
    return grouped


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _write_markdown(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [
        "| " + " | ".join(header) + " |",
        "| " + " | ".join("---" for _ in header) + " |",
    ]
    for row in rows:
        lines.append("| " + " | ".join(str(c) for c in row) + " |")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _fmt(value) -> str:
    return "-" if value is None else f"{100 * value:.2f}"


def write_probe_report(results: list[dict], out_dir: Path) -> list[Path]:
    """Method x dataset table of F1 and accuracy, plus a grouped bar chart."""
    datasets = sorted({r["dataset"] for r in results})
    methods = sorted({r["method"] for r in results})
    cells = {(r["method"], r["dataset"]): r["result"] for r in results}

    header = ["method"]
    for ds in datasets:
        header += [f"{ds}_f1", f"{ds}_f1_std", f"{ds}_acc", f"{ds}_acc_std"]
    csv_rows, md_rows = [], []
    for m in methods:
        csv_row, md_row = [m], [m]
        for ds in datasets:
            r = cells.get((m, ds))
            if r is None:
                csv_row += ["", "", "", ""]
                md_row += ["-", "-"]
            else:
                csv_row += [r["mean_f1"], r["std_f1"], r["mean_acc"], r["std_acc"]]
                md_row += [
                    f"{_fmt(r['mean_f1'])} ± {_fmt(r['std_f1'])}",
                    f"{_fmt(r['mean_acc'])} ± {_fmt(r['std_acc'])}",
                ]
        csv_rows.append(csv_row)
        md_rows.append(md_row)
    md_header = ["method"]
    for ds in datasets:
        md_header += [f"{ds} F1", f"{ds} Acc"]

    files = [out_dir / "probe_table.csv", out_dir / "probe_table.md", out_dir / "probe_scores.png"]
    _write_csv(files[0], header, csv_rows)
    _write_markdown(files[1], md_header, md_rows)

    fig, ax = plt.subplots(figsize=(1.8 + 1.6 * len(datasets) * len(methods) / 2, 4))
    width = 0.8 / max(len(methods), 1)
    xs = range(len(datasets))
    for mi, m in enumerate(methods):
        accs = [cells[(m, ds)]["mean_acc"] if (m, ds) in cells else 0.0 for ds in datasets]
        errs = [cells[(m, ds)]["std_acc"] if (m, ds) in cells else 0.0 for ds in datasets]
        ax.bar([x + mi * width for x in xs], accs, width=width, yerr=errs, capsize=3, label=m)
    ax.set_xticks([x + width * (len(methods) - 1) / 2 for x in xs])
    ax.set_xticklabels(datasets)
    ax.set_ylabel("probe accuracy")
    ax.set_ylim(0, 1.05)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(files[2], dpi=150)
    plt.close(fig)
    return files


def write_cluster_report(results: list[dict], out_dir: Path) -> list[Path]:
    """Method x k purity table plus a purity-vs-k line plot."""
    methods = sorted({r["method"] for r in results})
    ks = sorted({int(k) for r in results for k, _ in r["table"]})
    cells = {
        (r["method"], int(k)): p for r in results for k, p in r["table"]
    }
    header = ["method"] + [str(k) for k in ks]
    csv_rows = [[m] + [cells.get((m, k), "") for k in ks] for m in methods]
    md_rows = [[m] + [_fmt(cells.get((m, k))) for k in ks] for m in methods]

    files = [out_dir / "purity_table.csv", out_dir / "purity_table.md", out_dir / "purity_vs_k.png"]
    _write_csv(files[0], header, csv_rows)
    _write_markdown(files[1], header, md_rows)

    fig, ax = plt.subplots(figsize=(6, 4))
    for m in methods:
        ys = [cells.get((m, k)) for k in ks]
        ax.plot(ks, ys, marker="o", label=m)
    ax.set_xlabel("number of clusters")
    ax.set_ylabel("purity")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(files[2], dpi=150)
    plt.close(fig)
    return files


def write_retrieval_report(results: list[dict], out_dir: Path) -> list[Path]:
    """Method x field AP table, a companion AUC table, and an AP bar chart."""
    methods = sorted({r["method"] for r in results})
    fields: list[str] = []
    for r in results:
        for row in r["rows"]:
            if row["field"] not in fields:
                fields.append(row["field"])
    cells = {
        (r["method"], row["field"]): row for r in results for row in r["rows"]
    }

    files = []
    for metric_name, fname in (("ap", "retrieval_ap"), ("auc", "retrieval_auc")):
        header = ["method"] + fields
        csv_rows = []
        md_rows = []
        for m in methods:
            vals = [cells.get((m, f)) for f in fields]
            csv_rows.append(
                [m] + [("" if v is None or not v["present"] else v[metric_name]) for v in vals]
            )
            md_rows.append(
                [m] + [_fmt(None if v is None or not v["present"] else v[metric_name]) for v in vals]
            )
        csv_path = out_dir / f"{fname}.csv"
        md_path = out_dir / f"{fname}.md"
        _write_csv(csv_path, header, csv_rows)
        _write_markdown(md_path, header, md_rows)
        files += [csv_path, md_path]

    fig, ax = plt.subplots(figsize=(1.8 + 1.2 * len(fields), 4))
    width = 0.8 / max(len(methods), 1)
    xs = range(len(fields))
    for mi, m in enumerate(methods):
        aps = [
            (cells[(m, f)]["ap"] if (m, f) in cells and cells[(m, f)]["present"] else 0.0)
            for f in fields
        ]
        ax.bar([x + mi * width for x in xs], aps, width=width, label=m)
    ax.set_xticks([x + width * (len(methods) - 1) / 2 for x in xs])
    ax.set_xticklabels(fields)
    ax.set_ylabel("average precision")
    ax.legend(fontsize=8)
    fig.tight_layout()
    png = out_dir / "retrieval_ap.png"
    fig.savefig(png, dpi=150)
    plt.close(fig)
    files.append(png)
    return files
