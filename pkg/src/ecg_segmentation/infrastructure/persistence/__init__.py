# SPDX-License-Identifier: MIT

"""Persistence of records, checkpoints and run reports."""

from .checkpoints import load_checkpoint, save_checkpoint
from .records import (
    load_dataset,
    parse_record,
    read_manifest,
    read_split,
    record_path,
    write_manifest,
    write_record,
    write_split,
)
from .repositories import BaseRepository, FileRepository, ReportRepository

__all__ = [
    "load_checkpoint",
    "save_checkpoint",
    "load_dataset",
    "parse_record",
    "read_manifest",
    "read_split",
    "record_path",
    "write_manifest",
    "write_record",
    "write_split",
    "BaseRepository",
    "FileRepository",
    "ReportRepository",
]
