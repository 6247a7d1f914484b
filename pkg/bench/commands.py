"""Subcommand implementations behind ``main.py``.

Each ``cmd_*`` takes the parsed arguments and the resolved settings and
returns a process exit code. Validation problems surface as ``ValueError``
and are mapped to exit code 2 by the entry point.
"""
from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path

from dataset.generator import DATASET_PRESETS, DatasetManifest, audit_labels, generate_samples
from dataset.storage import read_dataset, write_dataset
from log.record import EventRecorder
from neural.checkpoint import load_checkpoint, save_checkpoint
from neural.inference import NeuralScheduler
from neural.model import ModelConfig
from neural.training import TrainConfig, evaluate_metrics, samples_to_tensors, split_dataset, train
from scheduling.evaluator import evaluate
from scheduling.genetic import GAConfig
from scheduling.registry import BENCH_SCHEDULERS, build_scheduler, build_schedulers
from settings import WorkbenchSettings
from tasks.models import EvaluationContext, ProblemInstance

from .harness import BenchConfig, run_benchmark
from .parsers import parse_int_list
from .reports import write_benchmark_csv, write_benchmark_dat, write_loss_csv, write_metrics_csv

logger = logging.getLogger("workbench.cli")


def _ga_config(args: argparse.Namespace, settings: WorkbenchSettings) -> GAConfig:
    return GAConfig.preset(
        args.ga_preset,
        population_size=args.population,
        generations=args.generations,
        patience=args.ga_patience,
        rng_seed=settings.seed,
    )


def cmd_gen_data(args: argparse.Namespace, settings: WorkbenchSettings) -> int:
    """Generate a GA-labeled dataset plus its manifest and audit the labels."""

    count = args.count if args.count is not None else DATASET_PRESETS[args.preset]
    if count < 0:
        raise ValueError("count must be non-negative")
    ga_cfg = _ga_config(args, settings)
    ctx = EvaluationContext(lam=settings.lam)
    logger.info("generating %d samples (GA %s preset)", count, args.ga_preset)
    samples = generate_samples(count, settings.seed, ga_cfg, ctx, workers=args.workers or settings.workers)
    manifest = DatasetManifest(
        sample_count=len(samples),
        ga_config=ga_cfg,
        lam=settings.lam,
        generator_seed=settings.seed,
        preset=args.preset,
    )
    write_dataset(samples, manifest, args.out)
    audit = audit_labels(samples, ctx, audit_size=args.audit_size)
    print(f"wrote {len(samples)} samples to {args.out}")
    print(f"label audit: {audit.matched}/{audit.checked} oracle-optimal ({audit.fraction:.3f}) with N<=8")
    return 0


def cmd_train(args: argparse.Namespace, settings: WorkbenchSettings) -> int:
    """Train the neural scheduler; write checkpoint, loss curve and event log."""

    samples, _ = read_dataset(args.dataset)
    cfg = TrainConfig(
        batch_size=args.batch_size,
        learning_rate=args.learning_rate,
        max_epochs=args.epochs,
        weighted_loss_enabled=args.weighted_loss,
        weight_scheme=args.weight_scheme,
        teacher_forcing_enabled=args.teacher_forcing,
        patience=args.patience,
        rng_seed=settings.seed,
        num_threads=settings.torch_threads,
        model=ModelConfig(embed_dim=args.embed_dim, hidden_size=args.hidden_size),
    )
    out: Path = args.out
    recorder = EventRecorder(out.with_suffix(".events.jsonl"), fresh=True)
    model, report = train(samples, cfg, recorder)
    save_checkpoint(model, out, cfg)
    write_loss_csv(report, out.with_suffix(".loss.csv"))
    print(f"best epoch {report.best_epoch} val_loss={report.val_loss[report.best_epoch - 1]:.4f}")
    if report.metrics is not None:
        print(json.dumps(report.metrics.to_row()))
    return 0


def cmd_eval(args: argparse.Namespace, settings: WorkbenchSettings) -> int:
    """Compute the headline metrics on the held-out test split."""

    model, train_cfg = load_checkpoint(args.checkpoint)
    samples, _ = read_dataset(args.dataset)
    if not samples:
        raise ValueError("dataset is empty")
    split = split_dataset(len(samples), train_cfg or TrainConfig(rng_seed=settings.seed))
    data = samples_to_tensors(samples)
    if split.test.size:
        data = data.take(split.test)
    else:
        logger.warning("test split is empty, evaluating on all %d samples", len(samples))
    metrics = evaluate_metrics(model, data)
    out = args.out or args.checkpoint.with_suffix(".metrics.csv")
    write_metrics_csv(metrics, out)
    print(json.dumps(metrics.to_row()))
    return 0


def cmd_bench(args: argparse.Namespace, settings: WorkbenchSettings) -> int:
    """Run the execution-time-aware benchmark and write CSV and ``.dat`` files."""

    neural = NeuralScheduler(load_checkpoint(args.checkpoint)[0]) if args.checkpoint else None
    if args.schedulers:
        names = [name.strip() for name in args.schedulers.split(",") if name.strip()]
    else:
        names = [name for name in BENCH_SCHEDULERS if name != "pnt-net" or neural is not None]
    schedulers = build_schedulers(names, _ga_config(args, settings), neural)
    cfg = BenchConfig(
        n_values=parse_int_list(args.n_values),
        trials=args.trials,
        seed=settings.seed,
        lam=settings.lam,
        time_unit_scale=settings.time_unit_scale,
    )
    out_dir: Path = args.out_dir or settings.output_dir / "bench"
    recorder = EventRecorder(out_dir / "events.jsonl", fresh=True)
    rows = run_benchmark(schedulers, cfg, recorder)
    write_benchmark_csv(rows, out_dir / "bench.csv")
    write_benchmark_dat(rows, out_dir / "bench.dat")
    print(f"wrote {len(rows)} rows to {out_dir / 'bench.csv'}")
    return 0


def cmd_schedule(args: argparse.Namespace, settings: WorkbenchSettings) -> int:
    """Order one instance and print the order with its evaluation."""

    instance = ProblemInstance.from_type_ids(parse_int_list(args.tasks))
    neural = NeuralScheduler(load_checkpoint(args.checkpoint)[0]) if args.checkpoint else None
    scheduler = build_scheduler(args.scheduler, _ga_config(args, settings), neural)
    ctx = EvaluationContext(lam=settings.lam, time_unit_scale=settings.time_unit_scale)
    schedule = scheduler(instance, ctx)
    report = evaluate(instance, schedule, ctx)
    order = schedule.to_list()
    if args.json:
        payload = {
            "scheduler": args.scheduler,
            "order": order,
            "types": [int(instance.type_ids[i]) for i in order],
            **report.to_dict(),
        }
        print(json.dumps(payload))
        return 0
    print(f"scheduler: {args.scheduler}")
    print(f"order: {order}")
    print(f"types: {[int(instance.type_ids[i]) for i in order]}")
    for position, task in enumerate(order, start=1):
        print(
            f"  {position:>3}. task {task} type {instance.type_ids[task]} "
            f"wait={report.waiting_times[task]:g} dropped={bool(report.drop_flags[task])}"
        )
    print(f"drop_ratio={report.drop_ratio:.4f} avg_waiting={report.avg_waiting:.4f} objective={report.objective:.6f}")
    return 0
