"""Unit test package for baseline removal."""
