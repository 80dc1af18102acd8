"""Unit tests for report rendering."""
