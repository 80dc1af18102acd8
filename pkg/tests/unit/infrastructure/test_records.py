"""Unit tests for interchange record files and record sources."""

import json
from pathlib import Path

import numpy as np
import pytest

from ecg_segmentation.domain.common.exceptions import (
    DataNotAvailableError,
    DataValidationError,
    RecordParseError,
)
from ecg_segmentation.domain.common.models import WaveType
from ecg_segmentation.domain.dataset.models import EcgRecord
from ecg_segmentation.infrastructure.data_sources import (
    InterchangeSource,
    open_source,
    waves_from_symbols,
)
from ecg_segmentation.infrastructure.persistence.records import (
    parse_record,
    record_to_payload,
    write_record,
)


def test_written_record_reads_back_bit_exact(synthetic_record: EcgRecord, tmp_path: Path) -> None:
    path = write_record(synthetic_record, tmp_path / "p001.json")
    assert parse_record(path).same_as(synthetic_record)


def test_annotation_order_survives_a_round_trip(
    synthetic_record: EcgRecord, tmp_path: Path
) -> None:
    """Waves are written in stored order, not re-sorted by onset."""
    shuffled = EcgRecord(
        patient_id=synthetic_record.patient_id,
        leads=synthetic_record.leads,
        annotations={"ii": list(reversed(synthetic_record.annotations["ii"]))},
    )
    path = write_record(shuffled, tmp_path / "shuffled.json")
    back = parse_record(path)
    assert back.same_as(shuffled)
    assert back.annotations["ii"][0].wave_type == shuffled.annotations["ii"][0].wave_type


def test_invalid_json_names_the_document(tmp_path: Path) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(RecordParseError) as info:
        parse_record(path)
    assert info.value.field == "<document>"


def test_wrong_field_type_names_the_field(synthetic_record: EcgRecord, tmp_path: Path) -> None:
    payload = record_to_payload(synthetic_record)
    payload["leads"]["ii"] = "not samples"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(RecordParseError) as info:
        parse_record(path)
    assert info.value.field.startswith("leads")


@pytest.mark.parametrize(
    ("field", "value"),
    [("leads", "0.5"), ("fs", "500"), ("fs", True), ("annotations", "120")],
)
def test_numbers_must_be_json_numbers(
    synthetic_record: EcgRecord, tmp_path: Path, field: str, value: object
) -> None:
    payload = record_to_payload(synthetic_record)
    if field == "leads":
        payload["leads"]["ii"][0] = value
    elif field == "annotations":
        payload["annotations"]["ii"][0][1] = value
    else:
        payload[field] = value
    path = tmp_path / "quoted.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(RecordParseError) as info:
        parse_record(path)
    assert info.value.field.startswith(field)


def test_invariant_violations_are_listed(synthetic_record: EcgRecord, tmp_path: Path) -> None:
    payload = record_to_payload(synthetic_record)
    payload["annotations"]["ii"][0] = ["p", 130, 120, 150]
    payload["leads"].pop("avl")
    path = tmp_path / "invalid.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(DataValidationError) as info:
        parse_record(path)
    assert not isinstance(info.value, RecordParseError)
    assert len(info.value.violations) == 2


def test_missing_record_file(tmp_path: Path) -> None:
    with pytest.raises(DataNotAvailableError):
        parse_record(tmp_path / "absent.json")


def test_waves_need_both_brackets() -> None:
    samples = np.array([10, 20, 30, 40, 50, 60, 70])
    symbols = ["(", "p", ")", "N", "(", "t", ")"]
    waves = waves_from_symbols(samples, symbols)
    assert [(w.wave_type, w.onset, w.peak, w.offset) for w in waves] == [
        (WaveType.P, 10, 20, 30),
        (WaveType.T, 50, 60, 70),
    ]


def test_open_source_picks_interchange_files(
    synthetic_record: EcgRecord, tmp_path: Path
) -> None:
    write_record(synthetic_record, tmp_path / "p001.json")
    source = open_source(tmp_path)
    assert isinstance(source, InterchangeSource)
    assert source.patient_ids() == ["p001"]
    assert len(source) == 1
    with pytest.raises(DataNotAvailableError):
        source.get_record("p002")


def test_open_source_rejects_empty_or_missing_directory(tmp_path: Path) -> None:
    with pytest.raises(DataNotAvailableError, match="no records"):
        open_source(tmp_path)
    with pytest.raises(DataNotAvailableError):
        open_source(tmp_path / "nowhere")
