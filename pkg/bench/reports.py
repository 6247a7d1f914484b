"""CSV and gnuplot-friendly ``.dat`` writers for run outputs."""
from __future__ import annotations

import csv
from itertools import groupby
from pathlib import Path
from typing import Sequence

from metrics.sequence import MetricsReport
from neural.training import TrainReport

from .harness import BenchmarkRow

BENCH_HEADER = ("scheduler", "n", "drop_no_exec", "exec_seconds", "drop_with_exec", "mean_waiting", "trials")
LOSS_HEADER = ("epoch", "train_loss", "val_loss")
METRICS_HEADER = ("weighted_f1", "avg_soft_accuracy", "avg_soft_precision", "avg_soft_recall")
# Wall-clock dependent; everything else is reproducible from the seed.
NONDETERMINISTIC_COLUMNS = ("exec_seconds", "drop_with_exec", "mean_waiting")


def _writer(path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    return path.open("w", encoding="utf-8", newline="")


def write_benchmark_csv(rows: Sequence[BenchmarkRow], path: Path) -> None:
    with _writer(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(BENCH_HEADER)
        for row in rows:
            writer.writerow([getattr(row, column) for column in BENCH_HEADER])


def write_benchmark_dat(rows: Sequence[BenchmarkRow], path: Path) -> None:
    """One gnuplot data block per scheduler, selectable with ``index``."""

    with _writer(path) as f:
        f.write(f"# non-deterministic columns: {', '.join(NONDETERMINISTIC_COLUMNS)}\n")
        ordered = sorted(rows, key=lambda r: r.scheduler)
        for block, (name, group) in enumerate(groupby(ordered, key=lambda r: r.scheduler)):
            if block:
                f.write("\n\n")
            f.write(f"# scheduler {name}\n")
            f.write("# n drop_no_exec exec_seconds exec_seconds_mean drop_with_exec mean_waiting\n")
            for row in sorted(group, key=lambda r: r.n):
                f.write(
                    f"{row.n} {row.drop_no_exec} {row.exec_seconds} {row.exec_seconds_mean} "
                    f"{row.drop_with_exec} {row.mean_waiting}\n"
                )


def write_loss_csv(report: TrainReport, path: Path) -> None:
    with _writer(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(LOSS_HEADER)
        for epoch, (train_loss, val_loss) in enumerate(zip(report.train_loss, report.val_loss), start=1):
            writer.writerow([epoch, train_loss, val_loss])


def write_metrics_csv(metrics: MetricsReport, path: Path) -> None:
    row = metrics.to_row()
    with _writer(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(METRICS_HEADER)
        writer.writerow([row[column] for column in METRICS_HEADER])
