# SPDX-License-Identifier: MIT

"""Command-line entry point ``ecgseg``.

Subcommands::

    ecgseg import SRC DST              convert/validate records into interchange files
    ecgseg preprocess                  baseline removal and patient split
    ecgseg train                       train the base network(s)
    ecgseg evaluate                    score the base network(s)
    ecgseg ensemble                    build, score and analyse the ensemble
    ecgseg report [--export-probs]     HTML report, figures, optional raw outputs
    ecgseg run-all [--stage NAME]      every stage from NAME on, resuming

Flags override environment variables (``ECGSEG_*``), the ``.env`` file and
the JSON config file, in that order.  Exit code 0 means every requested
stage completed; 2 flags a configuration problem and 1 a failed stage.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from pydantic import ValidationError

from ...application.dataset_preparation import DatasetPreparationService
from ...application.pipeline import STAGES, Pipeline, PipelineError
from ...config.settings import Settings
from ...domain.common.exceptions import ConfigurationError, DataValidationError, DomainError
from ...utils.logging import configure_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2

COMMAND_STAGES: Dict[str, List[str]] = {
    "preprocess": ["preprocess", "split"],
    "train": ["train"],
    "evaluate": ["evaluate"],
    "ensemble": ["ensemble"],
    "report": ["report"],
}


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--config", dest="config_file", help="JSON config file")
    parent.add_argument("--seed", type=int, help="global seed (split, init, windows, members)")
    parent.add_argument("--lead", help="training and scoring lead, default ii")
    parent.add_argument("--threads", type=int, help="worker threads inside a stage")
    parent.add_argument(
        "--deterministic",
        action="store_true",
        default=None,
        help="reduce gradients in a fixed order",
    )
    parent.add_argument("--dataset-dir", dest="dataset_dir", help="imported dataset directory")
    parent.add_argument("--output-dir", dest="output_dir", help="run output directory")
    parent.add_argument("--log-level", dest="log_level", help="DEBUG, INFO, WARNING ...")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="ecgseg", description="ECG P/QRS/T segmentation toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("import", parents=[common], help="import records into interchange files")
    cmd.add_argument("src", help="WFDB distribution or directory of interchange files")
    cmd.add_argument("dst", help="destination directory")

    for name in ("preprocess", "train", "evaluate", "ensemble"):
        commands.add_parser(name, parents=[common], help=f"run the {name} stage")

    cmd = commands.add_parser("report", parents=[common], help="write the HTML report and figures")
    cmd.add_argument("--export-probs", action="store_true", help="also write raw 4-channel outputs")

    cmd = commands.add_parser("run-all", parents=[common], help="run the whole pipeline")
    cmd.add_argument("--stage", choices=STAGES, help="start at this stage, loading earlier artifacts")
    cmd.add_argument("--force", action="store_true", help="re-run stages whose artifacts exist")
    cmd.add_argument("--export-probs", action="store_true", help="also write raw 4-channel outputs")
    return parser


def build_settings(args: argparse.Namespace) -> Settings:
    """Settings with the flags given on the command line as overrides."""
    keys = ("config_file", "seed", "lead", "threads", "deterministic", "dataset_dir", "output_dir", "log_level")
    overrides: Dict[str, Any] = {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}
    return Settings(**overrides)


def _report_violations(exc: DataValidationError) -> None:
    print(f"error: {len(exc.violations)} validation problem(s) in {exc.source or 'input'}:", file=sys.stderr)
    for line in exc.violations:
        print(f"  {line}", file=sys.stderr)


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = build_settings(args)
    except (ValidationError, ConfigurationError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    configure_logging(cfg)

    try:
        if args.command == "import":
            count = DatasetPreparationService(cfg).import_records(args.src, args.dst)
            print(f"imported {count} records into {args.dst}")
            return EXIT_OK

        if args.command == "run-all":
            if args.stage in (None, "preprocess"):
                cfg.validate_paths()
            pipeline = Pipeline(cfg, export_probs=args.export_probs)
            pipeline.run(start=args.stage, force=args.force)
        else:
            if args.command == "preprocess":
                cfg.validate_paths()
            pipeline = Pipeline(cfg, export_probs=getattr(args, "export_probs", False))
            pipeline.run(COMMAND_STAGES[args.command])
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PipelineError as exc:
        if isinstance(exc.cause, DataValidationError):
            _report_violations(exc.cause)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except DataValidationError as exc:
        _report_violations(exc)
        return EXIT_FAILURE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
