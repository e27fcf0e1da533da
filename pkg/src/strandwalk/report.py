"""Delimited output and figures for verification and oracle runs.

The CLI's report path drops three kinds of files into a directory: a JSON
report (machine-readable, schema mirrors VerificationReport.to_json), a CSV
with one row per individual check, and PNG figures summarizing the run.
"""

from __future__ import annotations

import csv
import json
import os


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def suite_rows(results):
    """Flatten (presentation, report) pairs into per-check dict rows."""
    rows = []
    for trial, (cp, rep) in enumerate(results):
        for c in rep.checks:
            rows.append(
                {
                    "trial": trial,
                    "presentation": cp.describe(),
                    "check": c.name,
                    "grade": "" if c.grade is None else c.grade,
                    "passed": int(c.passed),
                    "elapsed": f"{rep.elapsed:.6f}",
                }
            )
    return rows


def write_suite_report(outdir, results):
    """Write report.json, checks.csv, and suite.png; returns the file paths."""
    os.makedirs(outdir, exist_ok=True)
    paths = {}

    paths["json"] = os.path.join(outdir, "report.json")
    with open(paths["json"], "w") as fh:
        json.dump([rep.to_json() for _, rep in results], fh, indent=2)

    rows = suite_rows(results)
    paths["csv"] = os.path.join(outdir, "checks.csv")
    with open(paths["csv"], "w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["trial", "presentation", "check", "grade", "passed", "elapsed"]
        )
        writer.writeheader()
        writer.writerows(rows)

    paths["figure"] = os.path.join(outdir, "suite.png")
    _render_suite_figure(paths["figure"], rows, results)
    return paths


def _render_suite_figure(path, rows, results):
    plt = _plt()
    names = sorted({r["check"] for r in rows})
    passed = [sum(1 for r in rows if r["check"] == n and r["passed"]) for n in names]
    failed = [sum(1 for r in rows if r["check"] == n and not r["passed"]) for n in names]
    times = [rep.elapsed for _, rep in results]

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    xs = range(len(names))
    ax1.bar(xs, passed, color="#2a7", label="pass")
    ax1.bar(xs, failed, bottom=passed, color="#c33", label="fail")
    ax1.set_xticks(list(xs))
    ax1.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax1.set_ylabel("checks")
    ax1.set_title("outcome by check")
    ax1.legend(fontsize=8)

    ax2.hist(times, bins=min(20, max(5, len(times))), color="#47a")
    ax2.set_xlabel("seconds per presentation")
    ax2.set_ylabel("count")
    ax2.set_title("verification time")

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def write_oracle_report(outdir, gaps, t0, trunc):
    """Write gaps.csv and convergence.png for a truncation sweep."""
    os.makedirs(outdir, exist_ok=True)
    paths = {}
    paths["csv"] = os.path.join(outdir, "gaps.csv")
    with open(paths["csv"], "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["crossings", "gap_exact", "gap_float"])
        for i, g in enumerate(gaps):
            writer.writerow([i, str(g), float(g)])

    paths["figure"] = os.path.join(outdir, "convergence.png")
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.5, 3.5))
    xs = list(range(len(gaps)))
    ys = [float(g) for g in gaps]
    positive = [(x, y) for x, y in zip(xs, ys) if y > 0]
    if positive:
        ax.semilogy([x for x, _ in positive], [y for _, y in positive], "o-", ms=3)
    else:
        ax.plot(xs, ys, "o-", ms=3)
    ax.set_xlabel("closure-line crossings kept")
    ax.set_ylabel("max entrywise gap")
    ax.set_title(f"truncated walk vs closed form at t = {t0}")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(paths["figure"], dpi=150)
    plt.close(fig)
    return paths
