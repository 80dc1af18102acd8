# SPDX-License-Identifier: MIT

"""Top-level package for the ECG segmentation toolkit.

The toolkit preprocesses twelve-lead ECG records, trains a small 1-D
convolutional segmenter on one lead, decodes P/QRS/T boundary points, scores
them against expert annotation and grows an error-correcting ensemble.

Numerical logic resides under :mod:`ecg_segmentation.domain`, file formats
and the dataset importer under :mod:`ecg_segmentation.infrastructure`, stage
orchestration under :mod:`ecg_segmentation.application` and the command line
under :mod:`ecg_segmentation.presentation`.
"""

from .config.settings import Settings  # noqa: F401 re-export for convenience
