"""Command-line entry point.

Subcommands mirror the pipeline stages: bench runs the optimizer campaign,
features extracts the landscape feature matrix, analyze writes the report
bundle, and report renders figures from a bundle. Exit codes: 0 success,
1 partial failure, 2 configuration error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .campaign import (
    AnalyzeError,
    ConfigError,
    FeaturesError,
    StoreError,
    load_config,
    run_analyze,
    run_campaign,
    run_features,
)

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_CONFIG = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optscape",
        description="Landscape analysis and optimizer benchmarking pipeline",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="run the optimizer campaign")
    bench.add_argument("--config", required=True)
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--resume", action="store_true",
                       help="explicitly allow continuing a partial store "
                            "(completed cells are always skipped)")

    feats = sub.add_parser("features", help="compute the landscape feature matrix")
    feats.add_argument("--config", required=True)
    feats.add_argument("--out", default=None,
                       help="output CSV (default <output_dir>/features.csv)")

    analyze = sub.add_parser("analyze", help="write the report bundle")
    analyze.add_argument("--store", required=True)
    analyze.add_argument("--features", required=True)
    analyze.add_argument("--out", default=None,
                         help="bundle directory (default <store>/report)")

    report = sub.add_parser("report", help="render figures from a bundle")
    report.add_argument("--bundle", required=True,
                        help="bundle directory written by analyze")
    report.add_argument("--out", default=None,
                        help="figures directory (default <bundle>/figures)")
    return parser


def _cmd_bench(args) -> int:
    config = load_config(args.config)
    if args.workers is not None:
        if args.workers < 1:
            raise ConfigError("workers must be at least 1")
        config = dataclasses.replace(config, workers=args.workers)
    summary = run_campaign(config, log=lambda msg: print(msg, file=sys.stderr))
    print(
        f"completed {summary['completed']} cells, "
        f"skipped {summary['skipped']}, failed {len(summary['failed'])}"
    )
    for cell, msg in sorted(summary["failed"].items()):
        print(f"FAILED {cell}: {msg}", file=sys.stderr)
    return EXIT_PARTIAL if summary["failed"] else EXIT_OK


def _cmd_features(args) -> int:
    config = load_config(args.config)
    out = args.out or str(Path(config.output_dir) / "features.csv")
    summary = run_features(config, out, log=lambda m: print(m, file=sys.stderr))
    print(f"wrote {summary['rows']} feature rows to {out}")
    if summary["excluded"]:
        print(f"excluded {len(summary['excluded'])} problems", file=sys.stderr)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    out = args.out or str(Path(args.store) / "report")
    bundle = run_analyze(args.store, args.features, out)
    print(f"report bundle written to {bundle}")
    return EXIT_OK


def _cmd_report(args) -> int:
    from .campaign.plots import render_report  # matplotlib import is lazy

    bundle = Path(args.bundle)
    if not bundle.exists():
        print(f"no report bundle at {bundle}; run analyze first", file=sys.stderr)
        return EXIT_PARTIAL
    figures = render_report(bundle, args.out)
    print(f"figures written to {figures}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "bench": _cmd_bench,
        "features": _cmd_features,
        "analyze": _cmd_analyze,
        "report": _cmd_report,
    }
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (StoreError, AnalyzeError, FeaturesError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARTIAL


if __name__ == "__main__":
    sys.exit(main())
