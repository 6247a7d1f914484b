"""Tests for run logging and the JSON lines event recorder."""

from __future__ import annotations

import logging

import numpy as np

from log import EventRecorder, configure_logging, logger, replay, set_run_context
from log.logger import RunContextFilter


def test_recorder_and_replay(tmp_path) -> None:
    set_run_context("train", 5)
    path = tmp_path / "runs" / "events.jsonl"
    recorder = EventRecorder(path)
    recorder.log("epoch", {"epoch": 1, "train_loss": 0.5})
    recorder.log("bench_cell", {"scheduler": "fifo", "n": 10})
    recorder.log("epoch", {"epoch": 2, "train_loss": 0.4})
    entries = list(replay(path))
    assert [e["event"] for e in entries] == ["epoch", "bench_cell", "epoch"]
    assert all("ts" in e for e in entries)
    assert [e["epoch"] for e in replay(path, "epoch")] == [1, 2]
    assert {(e["run"], e["seed"]) for e in entries} == {("train", 5)}


def test_recorder_fresh_and_numpy_values(tmp_path) -> None:
    path = tmp_path / "events.jsonl"
    EventRecorder(path).log("bench_cell", {"n": 1})
    recorder = EventRecorder(path, fresh=True)
    recorder.log("bench_cell", {"n": np.int64(10), "drop": np.float64(0.25), "order": np.arange(3)})
    (entry,) = replay(path)
    assert (entry["n"], entry["drop"], entry["order"]) == (10, 0.25, [0, 1, 2])


def test_run_context_filter_stamps_records() -> None:
    record = logging.LogRecord("workbench", logging.INFO, __file__, 1, "hello", None, None)
    assert RunContextFilter("train", 7).filter(record)
    assert (record.run, record.seed) == ("train", 7)


def test_configure_logging_is_idempotent() -> None:
    configure_logging("debug")
    configure_logging("info")
    handlers = [h for h in logger.handlers if getattr(h, "_workbench", False)]
    assert len(handlers) == 1
    assert handlers[0].level == logging.INFO
    set_run_context("bench", 3)
    record = logging.LogRecord("workbench.test", logging.INFO, __file__, 1, "cell done", None, None)
    assert handlers[0].filter(record)
    assert handlers[0].format(record).endswith("[bench seed=3] cell done")
