# SPDX-License-Identifier: MIT

"""Domain models and numerical logic.

Each stage of the segmentation pipeline lives in its own subpackage.  Domain
modules contain pure functions and Pydantic models over numpy arrays; they do
not import from the infrastructure, application or presentation layers.
"""

__all__ = [
    "common",
    "dataset",
    "preprocess",
    "nnet",
    "train",
    "delineate",
    "evaluate",
    "ensemble",
]
