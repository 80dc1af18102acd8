# SPDX-License-Identifier: MIT

"""Exceptions and enumerations shared by every domain."""
