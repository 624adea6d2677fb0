"""Command-line interface.

Subcommands: run, enqueue, worker, status, sweep, report, list.
Exit codes: 0 success, 1 configuration error, 2 runtime failure — chosen
so batch schedulers can tell a bad config from a crashed job.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys

from . import pipeline, queue, report
from .errors import ConfigError, SpecInvalidError
from .rankers import available_rankers

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2

QUEUE_ENV = "RANKBENCH_QUEUE"

VALIDATORS = ["knn", "decision_tree"]
DATASET_KINDS = ["synclf", "synreg", "csv"]


def _queue_dir(args) -> str:
    qdir = args.queue or os.environ.get(QUEUE_ENV)
    if not qdir:
        raise ConfigError(f"no queue directory: pass --queue or set {QUEUE_ENV}")
    return qdir


def _parse_sizes(text: str) -> list[int]:
    try:
        parts = [int(v) for v in text.split(":")]
    except ValueError:
        raise ConfigError(f"bad --sizes {text!r}; expected start:stop:step") from None
    if len(parts) == 1:
        return parts
    if len(parts) == 2:
        parts.append(1)
    if len(parts) != 3 or parts[2] <= 0:
        raise ConfigError(f"bad --sizes {text!r}; expected start:stop:step")
    start, stop, step = parts
    return list(range(start, stop + 1, step))


def cmd_run(args) -> int:
    config = pipeline.load_config(args.config, args.set)
    records = pipeline.run(config, workers=args.workers)
    out = config.output_dir()
    print(f"wrote {len(records)} records to {out / 'records.jsonl'}")
    return EXIT_OK


def cmd_enqueue(args) -> int:
    config = pipeline.load_config(args.config, args.set)
    job_id = queue.enqueue(_queue_dir(args), config.to_dict(),
                           max_retries=args.max_retries)
    print(job_id)
    return EXIT_OK


def _job_handler(payload: dict) -> None:
    config = pipeline.RunConfig.from_dict(payload)
    pipeline.run(config)


def cmd_worker(args) -> int:
    qdir = _queue_dir(args)
    worker_id = args.worker_id or f"{socket.gethostname()}-{os.getpid()}"
    if args.jobs > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            futures = [pool.submit(queue.run_worker, qdir, f"{worker_id}-{i}",
                                   _job_handler, args.lease_seconds,
                                   args.backoff_seconds, args.drain)
                       for i in range(args.jobs)]
            processed = sum(f.result() for f in futures)
    else:
        processed = queue.run_worker(qdir, worker_id, _job_handler,
                                     args.lease_seconds, args.backoff_seconds,
                                     args.drain)
    print(f"processed {processed} job(s)")
    return EXIT_OK


def cmd_status(args) -> int:
    state = queue.counts(_queue_dir(args))
    for name in ("queued", "running", "done", "failed"):
        print(f"{name}: {state[name]}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = pipeline.load_config(args.config, args.set)
    sizes = _parse_sizes(args.sizes)
    records = pipeline.sweep_sample_size(config, sizes, args.bootstraps)
    out = config.output_dir()
    print(f"wrote {len(records)} sweep records to {out / 'sweep.jsonl'}")
    return EXIT_OK


def cmd_report(args) -> int:
    groups = pipeline.load_run_groups(args.input)
    aggregates = pipeline.aggregate_best_run(groups)
    sweeps = _load_sweeps(args.input)
    stats_summary = report.compute_stats(aggregates) if aggregates else None
    report.export_csv(aggregates, args.out, stats_summary) if aggregates else None
    html_path = report.render_html(aggregates, os.path.join(args.out, "report.html"),
                                   stats_summary, sweeps or None)
    print(f"report written to {html_path}")
    return EXIT_OK


def _load_sweeps(root) -> list:
    from pathlib import Path
    out = []
    for path in sorted(Path(root).rglob("sweep.jsonl")):
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    out.append(pipeline.SweepRecord(**json.loads(line)))
    return out


def cmd_list(args) -> int:
    print("rankers:")
    for name in available_rankers():
        print(f"  {name}")
    print("validators:")
    for name in VALIDATORS:
        print(f"  {name}")
    print("dataset generators:")
    for name in DATASET_KINDS:
        print(f"  {name}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rankbench",
                                     description="Feature-ranking benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config_args(p):
        p.add_argument("config", help="YAML run configuration")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config value (dotted keys)")

    p = sub.add_parser("run", help="execute a run locally")
    add_config_args(p)
    p.add_argument("--workers", type=int, default=None,
                   help="parallel bootstrap processes (default: config / 1)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("enqueue", help="put a run on the job queue")
    add_config_args(p)
    p.add_argument("--queue", default=None, help=f"queue directory (or ${QUEUE_ENV})")
    p.add_argument("--max-retries", type=int, default=queue.DEFAULT_MAX_RETRIES)
    p.set_defaults(func=cmd_enqueue)

    p = sub.add_parser("worker", help="process jobs from the queue")
    p.add_argument("--queue", default=None, help=f"queue directory (or ${QUEUE_ENV})")
    p.add_argument("--drain", action="store_true",
                   help="exit once the queue is empty")
    p.add_argument("--jobs", type=int, default=1, help="concurrent claims")
    p.add_argument("--lease-seconds", type=float, default=queue.DEFAULT_LEASE_SECONDS)
    p.add_argument("--backoff-seconds", type=float, default=queue.DEFAULT_BACKOFF_SECONDS)
    p.add_argument("--worker-id", default=None)
    p.set_defaults(func=cmd_worker)

    p = sub.add_parser("status", help="per-state job counts")
    p.add_argument("--queue", default=None, help=f"queue directory (or ${QUEUE_ENV})")
    p.set_defaults(func=cmd_status)

    p = sub.add_parser("sweep", help="sample-size sweep for time/learning curves")
    add_config_args(p)
    p.add_argument("--sizes", required=True, metavar="START:STOP:STEP")
    p.add_argument("--bootstraps", type=int, default=10)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("report", help="aggregate records into CSV + HTML")
    p.add_argument("--input", required=True, help="directory tree with records.jsonl files")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("list", help="registered rankers, validators, generators")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, SpecInvalidError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
