"""CSV tables and PNG figures for ``udvs game --report-dir``."""

from __future__ import annotations

import csv
import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _save(fig, path: Path) -> None:
    fig.tight_layout()
    # no Software/date metadata, so reruns are byte-identical
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)


def efcma_report(outdir, scheme: str, rows) -> list[Path]:
    """``rows``: (adversary, runs, wins, final_accepts, violations)."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = outdir / f"efcma_{scheme}"
    _csv(stem.with_suffix(".csv"), ["adversary", "runs", "wins", "dverify_accepts", "violations"], rows)
    names = [r[0] for r in rows]
    win = [r[2] / r[1] for r in rows]
    acc = [r[3] / r[1] for r in rows]
    fig, ax = plt.subplots(figsize=(7, 3.5))
    x = range(len(rows))
    ax.bar([i - 0.2 for i in x], acc, width=0.4, label="DVerify accepts")
    ax.bar([i + 0.2 for i in x], win, width=0.4, label="wins (fresh m*)")
    ax.set_xticks(list(x), names, rotation=20)
    ax.set_ylim(0, 1.05)
    ax.set_ylabel("rate")
    ax.set_title(f"EF-CMA, {scheme}")
    ax.legend()
    _save(fig, stem.with_suffix(".png"))
    return [stem.with_suffix(".csv"), stem.with_suffix(".png")]


def psi_report(outdir, scheme: str, distinguisher: str, history) -> list[Path]:
    """``history``: per trial, the guesses ``(b*|b=0, b*|b=1)``."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = outdir / f"psi_{scheme}_{distinguisher}"
    rows, ones0, ones1 = [], 0, 0
    for n, (g0, g1) in enumerate(history, 1):
        ones0 += g0
        ones1 += g1
        rows.append((n, g0, g1, f"{abs(ones0 - ones1) / n:.6f}"))
    _csv(stem.with_suffix(".csv"), ["trial", "guess_b0", "guess_b1", "running_advantage"], rows)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ns = [r[0] for r in rows]
    ax.plot(ns, [float(r[3]) for r in rows], label="running advantage")
    ax.plot(ns, [min(1.0, 3 / math.sqrt(n)) for n in ns], "--", label="3/sqrt(n)")
    ax.set_xscale("log")
    ax.set_ylim(0, 1.05)
    ax.set_xlabel("paired trials")
    ax.set_title(f"PSI, {scheme}, {distinguisher}")
    ax.legend()
    _save(fig, stem.with_suffix(".png"))
    return [stem.with_suffix(".csv"), stem.with_suffix(".png")]


def source_hiding_report(outdir, scheme: str, outcomes) -> list[Path]:
    """``outcomes``: per trial, True when Fake and Designate agreed."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = outdir / f"source_hiding_{scheme}"
    rows, bad = [], 0
    for n, same in enumerate(outcomes, 1):
        bad += not same
        rows.append((n, int(same), bad))
    _csv(stem.with_suffix(".csv"), ["trial", "match", "cumulative_mismatches"], rows)
    fig, ax = plt.subplots(figsize=(6, 3))
    ax.step([r[0] for r in rows], [r[2] for r in rows], where="post")
    ax.set_xlabel("trial")
    ax.set_ylabel("cumulative mismatches")
    ax.set_ylim(bottom=-0.5, top=max(1, bad) + 0.5)
    ax.set_title(f"Fake vs Designate, {scheme}")
    _save(fig, stem.with_suffix(".png"))
    return [stem.with_suffix(".csv"), stem.with_suffix(".png")]
