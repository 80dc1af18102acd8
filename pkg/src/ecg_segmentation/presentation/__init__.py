# SPDX-License-Identifier: MIT

"""Presentation layer exposing the command line and report renderers."""

__all__ = ["cli", "reports"]
