# SPDX-License-Identifier: MIT

"""Dataset domain exports.

Patient records with their expert annotation, record validation, lead
selection and the fixed-size patient split.
"""

from .models import DatasetManifest, DatasetSplit, EcgRecord, ManifestEntry, WaveAnnotation
from .records import record_violations, select_lead, split_dataset, validate_record

__all__ = [
    "DatasetManifest",
    "DatasetSplit",
    "EcgRecord",
    "ManifestEntry",
    "WaveAnnotation",
    "record_violations",
    "select_lead",
    "split_dataset",
    "validate_record",
]
