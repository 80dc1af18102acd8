"""Unit tests for derived seeds and the log formatters."""

import json
import logging

from ecg_segmentation.utils.logging import JsonFormatter, PlainFormatter
from ecg_segmentation.utils.seeding import derive_rng, derive_seed


def test_derived_seeds_are_stable_and_distinct() -> None:
    assert derive_seed(42, "split") == derive_seed(42, "split")
    seeds = {
        derive_seed(42, "split"),
        derive_seed(42, "run", 1),
        derive_seed(42, "member", 1, 0),
        derive_seed(42, "member", 1, 1),
        derive_seed(43, "split"),
    }
    assert len(seeds) == 5
    assert 0 <= derive_seed(0, "init") < 2**32


def test_derived_generators_repeat() -> None:
    a = derive_rng(7, "windows").integers(0, 1000, size=5)
    b = derive_rng(7, "windows").integers(0, 1000, size=5)
    assert a.tolist() == b.tolist()


def test_json_formatter_includes_extra_fields() -> None:
    record = logging.LogRecord("ecg", logging.INFO, __file__, 1, "epoch %d done", (3,), None)
    record.epoch = 3
    record.loss = float("nan")
    payload = json.loads(JsonFormatter().format(record))
    assert payload["message"] == "epoch 3 done"
    assert payload["level"] == "INFO"
    assert payload["epoch"] == 3
    assert payload["loss"] is None


def test_plain_formatter_appends_extra_fields() -> None:
    record = logging.LogRecord("ecg", logging.INFO, __file__, 1, "epoch done", None, None)
    record.loss = 0.5
    record.epoch = 3
    line = PlainFormatter().format(record)
    assert "[INFO] ecg: epoch done | epoch=3 loss=0.5" in line


def test_plain_formatter_without_extras_is_unchanged() -> None:
    record = logging.LogRecord("ecg", logging.WARNING, __file__, 1, "no onsets", None, None)
    assert PlainFormatter().format(record).endswith("[WARNING] ecg: no onsets")
