# SPDX-License-Identifier: MIT

"""Infrastructure layer providing record sources and persistence."""

__all__ = ["data_sources", "persistence"]
